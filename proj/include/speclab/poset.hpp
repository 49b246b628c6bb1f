#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace speclab {

// Subsets of a poset's elements as bit masks (element index -> bit).
using PointSet = std::uint64_t;

// A finite T0 space modeled by its specialization order. Convention:
// x <= y means y lies in the closure of {x}, so the open sets are exactly
// the down-sets of <=.
class Poset {
 public:
  Poset() = default;  // empty space
  static constexpr int kMaxElements = 63;
  // Default cap for operations that materialize every down-set.
  static constexpr int kEnumLimit = 20;

  // Builds the poset from an arbitrary relation; the reflexive-transitive
  // closure is taken. An antisymmetry violation throws with a witness cycle
  // in the message. Labels are stored sorted, so element indices and every
  // report derived from them are deterministic.
  static Poset from_relation(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& less_pairs);

  // Text format: one "a < b" cover pair per line, "point a" for isolated
  // points, '#' comments.
  static Poset parse(const std::string& text);

  static Poset chain(int n);      // labels a, b, c, ...
  static Poset antichain(int n);

  int size() const { return n_; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;  // throws if unknown

  bool leq(int a, int b) const { return (up_[static_cast<std::size_t>(a)] >> b) & 1u; }
  PointSet up_set(int a) const { return up_[static_cast<std::size_t>(a)]; }    // closure of {a}
  PointSet down_set(int a) const { return down_[static_cast<std::size_t>(a)]; }
  PointSet all() const { return n_ == 64 ? ~PointSet(0) : ((PointSet(1) << n_) - 1); }

  PointSet down_closure(PointSet s) const;
  PointSet up_closure(PointSet s) const;  // topological closure
  bool is_open(PointSet s) const { return down_closure(s) == s; }
  bool is_closed(PointSet s) const { return up_closure(s) == s; }

  // Order-reversed space; closed sets of the result are the down-sets of
  // *this. Involution.
  Poset inverse_space() const;

  // All down-sets (the whole topology), empty set and full space included.
  // Guarded: throws if size() > limit.
  std::vector<PointSet> all_down_sets(int limit = kEnumLimit) const;

  // All antichains, the empty one included. Enumerated directly from the
  // order (independent of the down-set walk).
  std::vector<PointSet> all_antichains(int limit = kEnumLimit) const;

  bool same_order(const Poset& other) const;

  std::vector<std::pair<int, int>> cover_pairs() const;
  std::string hasse_dot(const std::string& graph_name = "poset") const;

  void require_subset(PointSet s) const;  // throws if s has bits outside the space

  std::string set_to_string(PointSet s) const;
  PointSet set_of(const std::vector<std::string>& labels) const;

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<PointSet> up_;    // up_[a] = { b : a <= b }
  std::vector<PointSet> down_;  // down_[a] = { b : b <= a }
};

// ---- point-set operations ----------------------------------------------

PointSet down_closure(const Poset& x, PointSet s);
bool is_open(const Poset& x, PointSet s);

// Checks that every singleton is (compact open) minus (compact open), i.e.
// that the patch topology is discrete at finite scale. Always true; the
// checker exhibits the witnessing pair per point.
bool constructible_is_discrete(const Poset& x);

// ---- spectrality ---------------------------------------------------------

struct SpectralReport {
  bool spectral = false;
  bool t0 = true;
  bool compact = true;                 // whole space open, finite
  bool basis_intersection_closed = true;
  bool sober = true;
  std::optional<std::pair<std::string, std::string>> t0_witness;
  // Closed irreducible set lacking a unique generic point, if any.
  std::optional<std::string> sober_witness;
  // label of irreducible closed set -> its generic point, sorted.
  std::vector<std::pair<std::string, std::string>> generic_points;
};

// Explicit topology variant: `opens` must be a topology on {0..n-1} (empty
// set, whole space, closed under union/intersection), otherwise an input
// error is thrown. `labels` may be empty (indices are used).
SpectralReport is_spectral(int n, std::vector<PointSet> opens,
                           const std::vector<std::string>& labels = {});

// Down-set-topology variant. For posets within the enumeration limit this
// materializes the topology and runs the explicit checker; larger posets are
// checked structurally (T0 from antisymmetry, generic point = minimum of an
// up-set).
SpectralReport is_spectral(const Poset& x);

// Lemma-style criterion: every subbasis member must be open; returns true
// iff each B and B cap Y is compact, which holds at finite scale.
bool check_proconstructible_criterion(const Poset& x, PointSet y,
                                      const std::vector<PointSet>& subbasis);

// ---- maps ---------------------------------------------------------------

struct SpectralMap {
  Poset source;
  Poset target;
  std::vector<int> map;  // total: source element index -> target element index

  bool is_monotone() const;      // equivalent to continuity for down-set topologies
  bool is_surjective() const;
  bool is_bijective() const;
  PointSet preimage(PointSet t) const;
  PointSet image(PointSet s) const;
};

struct SurjectionReport {
  bool source_spectral = false;
  bool target_t0 = false;
  bool continuous = false;
  bool surjective = false;
  bool preimages_compact = false;
  bool hypotheses_hold = false;
  // conclusion, verified directly and independently of the hypotheses
  bool target_spectral = false;
  bool map_spectral = false;
  bool conclusion_holds = false;
  bool agreement = false;  // hypotheses_hold implies conclusion_holds
  std::string detail;
};

// Verifies the hypotheses (source spectral, target T0, subbasis preimages
// compact, f continuous surjective) and then the conclusion (target
// spectral, f spectral). A failed hypothesis yields a report, not an error.
SurjectionReport check_surjection_spectral(const SpectralMap& f,
                                           const std::vector<PointSet>& target_subbasis);

// Variant for exhaustive sweeps where the source/target spectrality reports
// were computed once and reused across many maps.
SurjectionReport check_surjection_spectral(const SpectralMap& f,
                                           const std::vector<PointSet>& target_subbasis,
                                           const SpectralReport& source_report,
                                           const SpectralReport& target_report);

// For a bijective f: true iff f and f^-1 are order-preserving; additionally
// verifies open-set transport both ways. Throws if f is not bijective.
bool order_iso_is_homeo(const SpectralMap& f);

}  // namespace speclab
