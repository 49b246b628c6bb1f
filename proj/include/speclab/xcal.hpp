#pragma once

#include <string>
#include <vector>

#include "speclab/poset.hpp"

namespace speclab {

// The space of nonempty subsets of a finite base space that are closed in
// its inverse topology, i.e. the nonempty down-sets, with basic opens
// u_omega(W) = { Y : Y subseteq W } for W open in the base. Its
// specialization order is set inclusion; build_xcal cross-validates that
// against the order computed from the topology and refuses to return on a
// mismatch.
struct XcalSpace {
  Poset base;
  std::vector<PointSet> points;      // nonempty down-sets of base, ascending mask order
  std::vector<PointSet> basic_opens; // opens of base, ascending; u(basic_opens[i]) is basic
  Poset order;                       // inclusion order on points; labels "{a,b}"

  int point_index(PointSet p) const;  // -1 if absent
};

XcalSpace build_xcal(const Poset& base, int limit = Poset::kEnumLimit);

// Indices (into xc.points) of the points contained in omega. Throws if
// omega is not open in the base.
std::vector<int> u_omega(const XcalSpace& xc, PointSet omega);

// The embedding x -> down_closure({x}) of the base into the point space.
SpectralMap embed_base(const XcalSpace& xc);

std::string xcal_json(const XcalSpace& xc);

}  // namespace speclab
