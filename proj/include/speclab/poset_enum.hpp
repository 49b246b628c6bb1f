#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "speclab/poset.hpp"

namespace speclab {

// Compact order matrix handed to sweep predicates: leq(a,b) as bit rows.
struct OrderMatrix {
  int n = 0;
  std::uint64_t up[8] = {0};  // up[a] = { b : a <= b }, reflexive

  bool leq(int a, int b) const { return (up[a] >> b) & 1u; }
  Poset to_poset() const;
};

// Enumerates every partial order on n labeled elements (n <= 7) in a fixed
// deterministic order. Returns the number visited.
std::uint64_t for_each_poset(int n, const std::function<void(const OrderMatrix&)>& fn);

// Known counts for n = 0..6: 1, 1, 3, 19, 219, 4231, 130023.
std::uint64_t count_posets(int n);

struct SweepResult {
  std::uint64_t visited = 0;
  std::uint64_t failures = 0;
  std::optional<std::string> first_failure;  // description from the predicate
};

// Runs `check` on every poset on n elements; check returns an empty optional
// on success or a description on failure. The OpenMP variant splits the
// enumeration at a fixed depth; output is identical to the serial variant.
SweepResult sweep_posets(int n,
                         const std::function<std::optional<std::string>(const OrderMatrix&)>& check);
SweepResult sweep_posets_serial(
    int n, const std::function<std::optional<std::string>(const OrderMatrix&)>& check);

// Enumerates all monotone surjections between all pairs of posets with
// sizes (m, k), calling fn on each.
std::uint64_t for_each_monotone_surjection(
    int m, int k, const std::function<void(const OrderMatrix&, const OrderMatrix&,
                                           const std::vector<int>&)>& fn);

}  // namespace speclab
