#pragma once

#include <cstdint>
#include <vector>

namespace speclab {

// Submonoid of the nonnegative integers generated by a finite set. The gcd
// of the generators may exceed 1 (ray sections of two-dimensional semigroups
// need that case); everything is computed in gcd-scaled units.
class NumericalMonoid {
 public:
  explicit NumericalMonoid(std::vector<std::int64_t> generators);  // nonzero entries

  bool trivial() const { return gens_.empty(); }            // {0}
  std::int64_t gcd() const { return gcd_; }
  // Frobenius number of the scaled monoid: every scaled value > frobenius()
  // is a member. Scaled monoid {0} has no Frobenius number; trivial() guards.
  std::int64_t frobenius() const { return frobenius_; }
  bool member(std::int64_t v) const;
  const std::vector<std::int64_t>& generators() const { return gens_; }

  // Least member congruent to r modulo the smallest generator (scaled units).
  const std::vector<std::int64_t>& apery() const { return apery_; }

 private:
  std::vector<std::int64_t> gens_;  // original units, sorted
  std::int64_t gcd_ = 0;
  std::int64_t frobenius_ = -1;     // scaled units
  std::vector<std::int64_t> apery_; // scaled units, indexed by residue
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace speclab
