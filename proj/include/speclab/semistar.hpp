#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "speclab/flagged.hpp"
#include "speclab/semigroup.hpp"

namespace speclab {

// Set of monomial primes of a fixed semigroup, as sorted indices into
// AffineSemigroup::primes().
using PrimeSet = std::vector<int>;

PrimeSet parse_prime_set(const AffineSemigroup& S, const std::string& names);  // "P_x,m"
std::string prime_set_names(const AffineSemigroup& S, const PrimeSet& ps);

// Membership predicate for an overring presented by how it arose, not by
// generators (sublocalizations need not be finitely presentable).
struct OverringOracle {
  enum class Kind { localization, sublocalization, semigroup_prime_quotient };
  Kind kind;
  std::string describe;
  std::function<Flagged<bool>(Exp)> member;
};

// z in D_P, decided through the generators of (D : z): the colon escapes P
// exactly when a generator sits on P's face.
Flagged<bool> in_localization(const AffineSemigroup& S, Exp z, int prime);

// Brute-force arm of the same membership: searches s in S \ P with
// z + s in S directly over the face points within the radius. Used as the
// independent route in cross-checks.
bool in_localization_box(const AffineSemigroup& S, Exp z, int prime, std::int64_t radius);

// z in I^{s_Delta}: for every P in Delta the colon (I : z) escapes P.
Flagged<bool> s_delta_member(const AffineSemigroup& S, const FracIdeal& I, const PrimeSet& delta,
                             Exp z);
Flagged<bool> s_delta_member(const AffineSemigroup& S, const PrimeSet& delta, Exp z);  // I = D

// Divisorial closure (D : (D : I)); extensive and idempotent.
Flagged<FracIdeal> v_closure(const AffineSemigroup& S, const FracIdeal& I);

struct TSpectrum {
  PrimeSet primes;  // monomial primes P with P^v = P, plus the zero ideal
  Poset poset;
  bool certified = true;
  std::string note;
};
TSpectrum t_spectrum_monomial(const AffineSemigroup& S);

// ---- finite-type spectral comparison (the tilde arm) -----------------------

// Candidate generator table for the brute-force evaluation of z in
// I^{tilde}: finitely generated monomial modules E with generators in the
// box, 0 in E^{s_Delta}, z + E inside I. Building the table scans each
// candidate's localization behavior once; queries then search generator
// sets of size <= 3.
class TildeSearch {
 public:
  static TildeSearch build(const AffineSemigroup& S, const PrimeSet& delta, std::int64_t ebox);

  struct Result {
    bool found = false;
    std::vector<Exp> witness;  // generators of a working E when found
  };
  Result query(const AffineSemigroup& S, const FracIdeal& I, Exp z) const;

  std::int64_t ebox() const { return ebox_; }

 private:
  PrimeSet delta_;
  std::int64_t ebox_ = 0;
  std::vector<Exp> candidates_;        // lex order
  std::vector<std::uint32_t> masks_;   // bit p: candidate escapes delta_[p]
};

TildeSearch::Result tilde_member(const AffineSemigroup& S, const FracIdeal& I,
                                 const PrimeSet& delta, Exp z, std::int64_t ebox);

struct Lemma55Report {
  PrimeSet delta;
  std::int64_t box = 0;
  std::int64_t ebox = 0;
  std::uint64_t agree = 0;
  std::vector<Exp> found_disagreements;  // tilde found, s_delta negative: failures
  std::vector<Exp> not_found;            // s_delta positive, search bound exhausted
  bool certified = true;
  std::string note;
};

// Compares s_delta membership with the tilde brute-force arm on every group
// point of the box. OpenMP over the grid; the serial variant is the
// reference the tests compare against.
Lemma55Report check_lemma_55(const AffineSemigroup& S, const PrimeSet& delta, const FracIdeal& I,
                             std::int64_t box, std::int64_t ebox = 0);
Lemma55Report check_lemma_55_serial(const AffineSemigroup& S, const PrimeSet& delta,
                                    const FracIdeal& I, std::int64_t box, std::int64_t ebox = 0);

// ---- decision procedures ----------------------------------------------------

struct QrVerdict {
  bool pass = false;
  std::optional<Exp> witness;            // monomial with rad(wD) = rad((D:z))
  std::vector<std::string> obstruction;  // face names of the unmatched radical class
  std::vector<Exp> colon_gens;
  bool certified = true;
  std::string note;  // always a monomial-layer certificate
};
QrVerdict qr_criterion_for(const AffineSemigroup& S, Exp z);

struct Cor45Report {
  bool applicable = false;
  std::string note;
  struct RayEntry {
    std::string prime;
    bool pass = false;
    std::optional<Exp> witness;
  };
  std::vector<RayEntry> rays;
  std::uint64_t checked = 0;
  bool routes_agree = true;             // colon route vs direct face search
  std::vector<Exp> route_mismatches;
  bool intersection_equals_ring = true; // box comparison of cap D_P with D
  std::vector<Exp> extra_monomials;     // in the intersection but not in D
  bool certified = true;
};
Cor45Report cor45_monomial_report(const AffineSemigroup& S, std::int64_t box = 0);

// Delta must be a nonempty down-set of the monomial t-spectrum.
Flagged<bool> pi_t_member(const AffineSemigroup& S, const PrimeSet& delta, Exp z);

struct DistinguishResult {
  bool found = false;
  std::optional<Exp> witness;
  int side = 0;  // +1: witness in the image of delta only; -1: lambda only
  std::int64_t radius_reached = 0;
  bool certified = true;
  std::string note;  // indeterminate reports say so explicitly
};
// Searches group points of growing boxes (radius B, 2B, 4B, cap 8B) for a
// monomial separating the two sublocalizations.
DistinguishResult pi_t_distinguish(const AffineSemigroup& S, const PrimeSet& delta,
                                   const PrimeSet& lambda, std::int64_t base_radius = 0);

struct Prop58Report {
  PrimeSet delta;
  PrimeSet delta_t;  // delta cap t-spectrum
  std::uint64_t checked = 0;
  std::vector<Exp> mismatches;
  bool certified = true;
};
Prop58Report check_prop_58(const AffineSemigroup& S, const PrimeSet& delta, std::int64_t box = 0);

// z in the quotient ring attached to the semigroup prime given by an
// antichain of monomial primes: some generator of (D : z) avoids the union.
Flagged<bool> lambda_qr_member(const AffineSemigroup& S, const PrimeSet& antichain, Exp z);

OverringOracle oracle_localization(const AffineSemigroup& S, int prime);
OverringOracle oracle_s_delta(const AffineSemigroup& S, PrimeSet delta);
OverringOracle oracle_lambda_qr(const AffineSemigroup& S, PrimeSet antichain);

// Group lattice points of [-radius, radius]^dim in deterministic lex order.
std::vector<Exp> group_box(const AffineSemigroup& S, std::int64_t radius);

}  // namespace speclab
