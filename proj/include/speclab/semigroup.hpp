#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "speclab/exp.hpp"
#include "speclab/flagged.hpp"
#include "speclab/numerical.hpp"
#include "speclab/poset.hpp"

namespace speclab {

enum class FaceKind { origin, ray, full };

// Face of the rational cone spanned by the generators that meets the
// semigroup: {0}, a populated extreme ray, or the whole cone.
struct Face {
  FaceKind kind = FaceKind::origin;
  Exp dir;           // primitive ray direction when kind == ray
  std::string name;  // "0", "x-ray", "y-ray", "ray(a,b)", "cone"
};

// Monomial prime P_F: the monomials of S lying off the face F. The full
// cone gives the zero ideal "(0)", the origin gives the maximal monomial
// ideal "m", rays give the height-one primes.
struct MonomialPrime {
  int face = 0;
  std::string name;  // "(0)", "m", "P_x", "P_y", "P(a,b)"
};

// Sublattice of Z^2 in Hermite form; group generated by the semigroup.
struct Lattice {
  int rank = 0;
  Exp dir;                 // rank 1: primitive direction
  std::int64_t step = 0;   // rank 1: group = step * dir * Z
  std::int64_t p = 0, q = 0, r = 0;  // rank 2: basis (p,0), (q,r)

  static Lattice from(const std::vector<Exp>& vectors);
  bool contains(Exp v) const;
  // rank 1 only: v = k * (step*dir); throws if v not in the group
  std::int64_t line_coordinate(Exp v) const;
};

struct MonomialIdeal {
  std::vector<Exp> gens;  // minimal, lex-sorted; {0} denotes the whole ring
  bool is_whole_ring() const { return gens.size() == 1 && gens[0].is_zero(); }
  bool is_zero() const { return gens.empty(); }
};

struct FracIdeal {
  std::vector<Exp> gens;  // minimal Laurent generators, lex-sorted
  bool is_zero() const { return gens.empty(); }
};

// Finitely generated submonoid of N^d, d <= 2, presenting the monomial
// model of its semigroup ring. Values are immutable after construction;
// the lazily grown membership window is the one mutable cache and must be
// warmed up (ensure_window) before concurrent sweeps.
class AffineSemigroup {
 public:
  AffineSemigroup(int dim, std::vector<Exp> generators, std::optional<Exp> conductor = {},
                  std::optional<std::int64_t> search_bound = {});

  static AffineSemigroup from_json(const std::string& text);
  std::string to_json() const;

  int dim() const { return dim_; }
  const std::vector<Exp>& generators() const { return gens_; }
  std::int64_t search_bound() const { return search_bound_; }
  const std::optional<Exp>& conductor() const { return conductor_; }
  std::int64_t conductor_check_radius() const { return conductor_check_radius_; }
  // true when the conductor certificate is exact (d = 1 or a collinear
  // system); otherwise it was spot-checked on the window and trusted beyond.
  bool conductor_exact() const { return conductor_exact_; }

  bool degenerate_line() const { return line_.has_value(); }  // dim 2, collinear generators

  bool member(Exp z) const;  // z in S, decided by bounded coefficient search
  bool in_group(Exp z) const { return group_.contains(z); }
  bool in_cone(Exp z) const;
  bool in_saturation(Exp z) const { return in_group(z) && in_cone(z); }

  const Lattice& group() const { return group_; }
  // d = 1 (or collinear d = 2): semigroup in group-lattice units, gcd 1.
  const NumericalMonoid& line_monoid() const;
  Exp line_step() const;  // group lattice step along the line
  std::int64_t frobenius() const;  // d = 1 only

  const std::vector<Face>& faces() const { return faces_; }
  int face_of(Exp m) const;  // smallest face containing m (m in S assumed)
  bool face_contains(int face, Exp m) const;
  int origin_face() const;
  int full_face() const;
  std::vector<int> ray_faces() const;

  const std::vector<MonomialPrime>& primes() const { return primes_; }
  int prime_index(const std::string& name) const;
  int prime_of_face(int face) const;
  bool prime_leq(int a, int b) const;  // P_a subseteq P_b
  Poset prime_poset() const;
  // m in P (monomial membership in the prime ideal); the zero ideal
  // contains no monomial.
  bool prime_contains(int prime, Exp m) const;

  // Ray direction pair for the nondegenerate 2-dim case: r1 lower, r2 upper.
  Exp ray_dir(int which) const;
  const NumericalMonoid& ray_monoid(int which) const;
  Exp ray_step(int which) const;  // group lattice step along the ray

  // Membership window: exact table over [0,hi] built by an additive sieve.
  void ensure_window(Exp hi) const;
  bool member_fast(Exp z) const;
  Exp window_hi() const;

 private:
  void build_faces();
  void verify_conductor();

  int dim_ = 1;
  std::vector<Exp> gens_;
  std::int64_t search_bound_ = 0;
  std::optional<Exp> conductor_;
  std::int64_t conductor_check_radius_ = 0;
  bool conductor_exact_ = false;

  Lattice group_;
  std::optional<NumericalMonoid> line_;  // d=1 or collinear d=2
  Exp line_step_;
  Exp rays_[2];
  std::optional<NumericalMonoid> ray_monoids_[2];
  Exp ray_steps_[2];
  std::vector<Face> faces_;
  std::vector<MonomialPrime> primes_;

  struct Window {
    std::int64_t w0 = -1, w1 = -1;
    std::vector<std::uint8_t> bits;
    bool covers(Exp hi) const { return hi[0] <= w0 && hi[1] <= w1; }
    bool get(Exp v) const {
      return bits[static_cast<std::size_t>(v[0] * (w1 + 1) + v[1])] != 0;
    }
  };
  // Windows only grow; readers take the published pointer lock-free, the
  // builder serializes behind a mutex. Copies of the semigroup share the
  // cache.
  struct WindowCache;
  std::shared_ptr<WindowCache> cache_;
  const Window* current_window() const;
};

// ---- ideals ---------------------------------------------------------------

// Validates generators (membership in S resp. the group) and reduces them to
// the minimal, lex-sorted normal form.
MonomialIdeal make_ideal(const AffineSemigroup& S, std::vector<Exp> gens);
FracIdeal make_frac_ideal(const AffineSemigroup& S, std::vector<Exp> gens);
MonomialIdeal whole_ring_ideal();
FracIdeal frac_of(const MonomialIdeal& I);

bool ideal_contains(const AffineSemigroup& S, const MonomialIdeal& I, Exp v);
bool frac_contains(const AffineSemigroup& S, const FracIdeal& I, Exp v);

// Reduces a candidate generating set: drops v when some other element u of
// the set has v in u + S.
std::vector<Exp> minimalize(const AffineSemigroup& S, std::vector<Exp> candidates);

// ---- colon ideals ----------------------------------------------------------

struct ColonResult {
  std::vector<Exp> gens;  // minimal generators, lex-sorted
  bool certified = true;  // complete beyond the search region
  std::string note;       // method or box caveat
  Exp region_lo;
  std::int64_t radius = 0;

  MonomialIdeal as_ideal() const { return MonomialIdeal{gens}; }
  FracIdeal as_frac() const { return FracIdeal{gens}; }
};

// Minimal generators of { v : v + shift in S for all shifts }, restricted
// to v in S when integral. d=1 and collinear systems are exact; the
// 2-dimensional case derives a certified search radius from the conductor
// (interior translate argument plus per-ray strip bounds) and otherwise
// flags the result as box-verified.
ColonResult colon_intersection(const AffineSemigroup& S, std::vector<Exp> shifts, bool integral,
                               std::int64_t box_override = 0);

ColonResult colon_by_element(const AffineSemigroup& S, Exp z, std::int64_t box_override = 0);
ColonResult colon_by_element(const AffineSemigroup& S, const MonomialIdeal& I, Exp z,
                             std::int64_t box_override = 0);
ColonResult colon_by_element(const AffineSemigroup& S, const FracIdeal& I, Exp z,
                             std::int64_t box_override = 0);
ColonResult colon_fractional(const AffineSemigroup& S, const FracIdeal& J,
                             std::int64_t box_override = 0);

// Minimal monomial generators of the prime P_F. The generators of S off the
// face generate it, so this is exact. The zero ideal returns the empty set.
MonomialIdeal prime_ideal(const AffineSemigroup& S, int prime);

// ---- radicals and primes ----------------------------------------------------

// Faces disjoint from the generators of I; two monomial ideals have the
// same radical exactly when these sets agree.
std::vector<int> radical_class(const AffineSemigroup& S, const MonomialIdeal& I);
bool radical_contains(const AffineSemigroup& S, const MonomialIdeal& I, Exp m);
std::vector<int> minimal_primes(const AffineSemigroup& S, const MonomialIdeal& I);

struct PrincipalRadicalResult {
  bool is_radical_of_principal = false;
  std::optional<Exp> witness;          // monomial with rad(wD) = rad(I)
  std::vector<int> radical_faces;      // the face set of I
};
PrincipalRadicalResult is_radical_of_principal(const AffineSemigroup& S, const MonomialIdeal& I);

// The finitely generated radical witness for (D : z): the colon ideal
// itself. Carries the colon's completeness flag.
ColonResult rad_colon_coherent_witness(const AffineSemigroup& S, Exp z);

// Exponents of the union of (g + S) over gens, clipped to [lo, hi]; test and
// report helper.
std::vector<Exp> generated_set_in_box(const AffineSemigroup& S, const std::vector<Exp>& gens,
                                      Exp lo, Exp hi);

// Box-extracted minimal generators of the exponent intersection of I and J.
Flagged<MonomialIdeal> ideal_intersection_box(const AffineSemigroup& S, const MonomialIdeal& I,
                                              const MonomialIdeal& J);

}  // namespace speclab
