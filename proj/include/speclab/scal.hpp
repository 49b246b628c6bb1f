#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "speclab/poset.hpp"
#include "speclab/semigroup.hpp"
#include "speclab/semistar.hpp"

namespace speclab {

// A semigroup prime: a union of prime ideals, stored as the antichain of
// its maximal members. Prime avoidance makes the antichain faithful.
struct SemigroupPrime {
  std::vector<int> antichain;  // indices into the underlying prime list
  std::string name;            // "{(2),(3)}" or "{P_x,P_y}"
};

// The space of semigroup primes with the topology generated by the sets
// D(x) = { Q : x not in Q }. Specialization order is union inclusion.
struct ScalSpace {
  enum class Base { modular, monomial };
  Base base = Base::modular;

  // modular: residue ring Z/n with its prime divisors
  std::int64_t modulus = 0;
  std::vector<std::int64_t> prime_divisors;

  // monomial: monomial primes of an affine semigroup
  std::optional<AffineSemigroup> semigroup;

  std::vector<std::string> prime_names;  // underlying spectrum, in index order
  std::vector<SemigroupPrime> points;
  Poset order;                            // specialization order on the points

  // Whether the subbasic opens separate every pair of points. Always true
  // for Z/n. At the monomial layer two distinct semigroup primes can have
  // the same monomial union (only a non-monomial ring element would tell
  // them apart), in which case the pairs are listed here and reports say so.
  bool subbasis_separates = true;
  std::vector<std::pair<int, int>> inseparable_pairs;

  int point_count() const { return static_cast<int>(points.size()); }
  std::string point_name(int i) const { return points[static_cast<std::size_t>(i)].name; }
  int point_index_by_name(const std::string& name) const;
};

// Z/n model: points are the nonempty subsets of the prime divisors of n;
// construction validates every point against the semigroup-prime axioms by
// exhaustive checks in Z/n. Throws for n < 2.
ScalSpace scal_zn(std::int64_t n);

// Monomial model over k[S]: points are the nonempty antichains of the
// monomial prime poset; the subbasic opens are restricted to monomial x.
ScalSpace scal_monomial(const AffineSemigroup& S);

// Point indices of D(x) = { Q : x not in the union Q }.
std::vector<int> d_scal(const ScalSpace& space, std::int64_t x);  // modular
std::vector<int> d_scal(const ScalSpace& space, Exp x);           // monomial

// Whether x lies in the union defining the point.
bool point_contains(const ScalSpace& space, int point, std::int64_t x);
bool point_contains(const ScalSpace& space, int point, Exp x);

// The opens of the generated topology (unions of finite intersections of
// the subbasic opens), as bit masks over point indices.
std::vector<PointSet> scal_opens(const ScalSpace& space);

struct EmbedReport {
  SpectralMap map;  // Spec -> Scal, prime to singleton antichain
  bool injective = false;
  bool continuous = false;
  bool subspace_topology_matches = false;  // pulled-back opens = spectrum opens
  bool ok = false;
};
// The set-theoretic inclusion of the spectrum into the semigroup-prime
// space, verified to be a topological embedding.
EmbedReport embed_spec(const ScalSpace& space);

// Quotient-ring membership oracle attached to a monomial point.
OverringOracle point_oracle(const ScalSpace& space, int point);

std::string scal_json(const ScalSpace& space);

}  // namespace speclab
