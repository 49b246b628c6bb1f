#include "speclab/xcal.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace speclab {

int XcalSpace::point_index(PointSet p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) return -1;
  return static_cast<int>(it - points.begin());
}

XcalSpace build_xcal(const Poset& base, int limit) {
  XcalSpace xc;
  xc.base = base;
  xc.basic_opens = base.all_down_sets(limit);
  for (PointSet s : xc.basic_opens) {
    if (s == 0) continue;
    if (base.down_closure(s) != s) throw std::logic_error("point is not inverse-closed");
    xc.points.push_back(s);
  }
  if (xc.points.size() > 63)
    throw std::invalid_argument("point space too large to model as a poset");

  const auto u_of = [&xc](PointSet omega) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < xc.points.size(); ++i)
      if ((xc.points[i] & ~omega) == 0) mask |= std::uint64_t(1) << i;
    return mask;
  };
  std::vector<std::uint64_t> u_mask(xc.basic_opens.size());
  for (std::size_t b = 0; b < xc.basic_opens.size(); ++b) u_mask[b] = u_of(xc.basic_opens[b]);
  const auto open_index = [&xc](PointSet w) {
    auto it = std::lower_bound(xc.basic_opens.begin(), xc.basic_opens.end(), w);
    if (it == xc.basic_opens.end() || *it != w)
      throw std::logic_error("opens are not intersection-closed");
    return static_cast<std::size_t>(it - xc.basic_opens.begin());
  };
  // u(W1 cap W2) = u(W1) cap u(W2), checked literally over every pair.
  for (std::size_t b1 = 0; b1 < xc.basic_opens.size(); ++b1)
    for (std::size_t b2 = 0; b2 < xc.basic_opens.size(); ++b2)
      if (u_mask[open_index(xc.basic_opens[b1] & xc.basic_opens[b2])] != (u_mask[b1] & u_mask[b2]))
        throw std::logic_error("basic opens are not intersection-compatible");

  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  labels.reserve(xc.points.size());
  for (PointSet p : xc.points) labels.push_back(base.set_to_string(p));
  for (std::size_t i = 0; i < xc.points.size(); ++i)
    for (std::size_t j = 0; j < xc.points.size(); ++j)
      if (i != j && (xc.points[i] & ~xc.points[j]) == 0)
        pairs.emplace_back(labels[i], labels[j]);  // P_i subseteq P_j: P_j specializes P_i
  xc.order = Poset::from_relation(labels, pairs);

  // Cross-validate the inclusion order against the specialization order of
  // the generated topology: Y1 <= Y2 iff every basic open containing Y2
  // contains Y1 (the basic opens form a basis).
  std::vector<std::uint64_t> point_opens(xc.points.size(), 0);
  for (std::size_t b = 0; b < xc.basic_opens.size(); ++b)
    for (std::size_t i = 0; i < xc.points.size(); ++i)
      if ((u_mask[b] >> i) & 1u) point_opens[i] |= std::uint64_t(1) << b;
  std::vector<int> order_index(xc.points.size());
  for (std::size_t i = 0; i < xc.points.size(); ++i)
    order_index[i] = xc.order.index_of(labels[i]);
  for (std::size_t i = 0; i < xc.points.size(); ++i)
    for (std::size_t j = 0; j < xc.points.size(); ++j) {
      const bool topological = (point_opens[j] & ~point_opens[i]) == 0;
      if (topological != xc.order.leq(order_index[i], order_index[j]))
        throw std::logic_error("inclusion order disagrees with the topological order");
    }

  if (!is_spectral(xc.order).spectral) throw std::logic_error("point space is not spectral");
  return xc;
}

std::vector<int> u_omega(const XcalSpace& xc, PointSet omega) {
  if (!xc.base.is_open(omega)) throw std::invalid_argument("omega is not open in the base");
  std::vector<int> out;
  for (std::size_t i = 0; i < xc.points.size(); ++i)
    if ((xc.points[i] & ~omega) == 0) out.push_back(static_cast<int>(i));
  return out;
}

SpectralMap embed_base(const XcalSpace& xc) {
  SpectralMap f;
  f.source = xc.base;
  f.target = xc.order;
  f.map.resize(static_cast<std::size_t>(xc.base.size()));
  for (int i = 0; i < xc.base.size(); ++i) {
    PointSet p = xc.base.down_set(i);
    int idx = xc.point_index(p);
    if (idx < 0) throw std::logic_error("principal down-set missing from point list");
    f.map[static_cast<std::size_t>(i)] =
        f.target.index_of(xc.base.set_to_string(p));
  }
  return f;
}

std::string xcal_json(const XcalSpace& xc) {
  nlohmann::ordered_json j;
  j["base"] = nlohmann::ordered_json::array();
  for (const auto& l : xc.base.labels()) j["base"].push_back(l);
  j["points"] = nlohmann::ordered_json::array();
  for (PointSet p : xc.points) j["points"].push_back(xc.base.set_to_string(p));
  j["basic_opens"] = nlohmann::ordered_json::array();
  for (PointSet w : xc.basic_opens) {
    nlohmann::ordered_json entry;
    entry["omega"] = xc.base.set_to_string(w);
    entry["members"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < xc.points.size(); ++i)
      if ((xc.points[i] & ~w) == 0)
        entry["members"].push_back(xc.base.set_to_string(xc.points[i]));
    j["basic_opens"].push_back(entry);
  }
  return j.dump(2);
}

}  // namespace speclab
