#include "speclab/poset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace speclab {

namespace {

int popcount(PointSet s) { return std::popcount(s); }

std::vector<int> set_bits(PointSet s) {
  std::vector<int> out;
  while (s) {
    int b = std::countr_zero(s);
    out.push_back(b);
    s &= s - 1;
  }
  return out;
}

}  // namespace

Poset Poset::from_relation(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& less_pairs) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const int n = static_cast<int>(labels.size());
  if (n > kMaxElements) throw std::invalid_argument("poset too large (max 63 elements)");

  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[labels[static_cast<std::size_t>(i)]] = i;

  std::vector<PointSet> up(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) up[static_cast<std::size_t>(i)] = PointSet(1) << i;
  for (const auto& [a, b] : less_pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end())
      throw std::invalid_argument("relation mentions unknown element: " + a + " < " + b);
    up[static_cast<std::size_t>(ia->second)] |= PointSet(1) << ib->second;
  }

  // Reflexive-transitive closure (Warshall over bit rows).
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if ((up[static_cast<std::size_t>(i)] >> k) & 1u)
        up[static_cast<std::size_t>(i)] |= up[static_cast<std::size_t>(k)];

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (((up[static_cast<std::size_t>(i)] >> j) & 1u) &&
          ((up[static_cast<std::size_t>(j)] >> i) & 1u)) {
        throw std::invalid_argument("antisymmetry violated: cycle through " +
                                    labels[static_cast<std::size_t>(i)] + " and " +
                                    labels[static_cast<std::size_t>(j)]);
      }

  Poset p;
  p.n_ = n;
  p.labels_ = std::move(labels);
  p.up_ = std::move(up);
  p.down_.assign(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(a, b)) p.down_[static_cast<std::size_t>(b)] |= PointSet(1) << a;
  return p;
}

Poset Poset::parse(const std::string& text) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string a, op, b;
    if (!(ls >> a)) continue;
    if (a == "point") {
      if (!(ls >> b)) throw std::invalid_argument("poset file: 'point' needs a label");
      labels.push_back(b);
      continue;
    }
    if (!(ls >> op >> b) || op != "<")
      throw std::invalid_argument("poset file: expected 'a < b' or 'point a', got: " + line);
    labels.push_back(a);
    labels.push_back(b);
    pairs.emplace_back(a, b);
  }
  return from_relation(std::move(labels), pairs);
}

namespace {
std::string nth_label(int i) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i = i / 26 - 1;
  } while (i >= 0);
  return s;
}
}  // namespace

Poset Poset::chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) labels.push_back(nth_label(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(nth_label(i), nth_label(i + 1));
  return from_relation(std::move(labels), pairs);
}

Poset Poset::antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(nth_label(i));
  return from_relation(std::move(labels), {});
}

int Poset::index_of(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    throw std::invalid_argument("element not in poset: " + label);
  return static_cast<int>(it - labels_.begin());
}

void Poset::require_subset(PointSet s) const {
  if (s & ~all()) throw std::invalid_argument("point set is not a subset of the poset");
}

PointSet Poset::down_closure(PointSet s) const {
  require_subset(s);
  PointSet out = 0;
  for (int b : set_bits(s)) out |= down_[static_cast<std::size_t>(b)];
  return out;
}

PointSet Poset::up_closure(PointSet s) const {
  require_subset(s);
  PointSet out = 0;
  for (int b : set_bits(s)) out |= up_[static_cast<std::size_t>(b)];
  return out;
}

Poset Poset::inverse_space() const {
  Poset p;
  p.n_ = n_;
  p.labels_ = labels_;
  p.up_ = down_;
  p.down_ = up_;
  return p;
}

std::vector<PointSet> Poset::all_down_sets(int limit) const {
  if (n_ > limit)
    throw std::invalid_argument("down-set enumeration gated: " + std::to_string(n_) +
                                " elements exceeds limit " + std::to_string(limit));
  // Walk subsets in increasing mask order; a simple filter suffices at these
  // sizes.
  std::vector<PointSet> out;
  const PointSet full = all();
  for (PointSet s = 0;; ++s) {
    bool ok = true;
    for (int b : set_bits(s))
      if ((down_[static_cast<std::size_t>(b)] & ~s) != 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(s);
    if (s == full) break;
  }
  return out;
}

std::vector<PointSet> Poset::all_antichains(int limit) const {
  if (n_ > limit)
    throw std::invalid_argument("antichain enumeration gated: too many elements");
  std::vector<PointSet> out;
  out.push_back(0);
  // DFS adding elements in index order; the partial set stays an antichain.
  std::vector<std::pair<int, PointSet>> stack;  // (next candidate, current set)
  stack.emplace_back(0, 0);
  while (!stack.empty()) {
    auto [start, cur] = stack.back();
    stack.pop_back();
    for (int i = start; i < n_; ++i) {
      bool comparable = false;
      for (int b : set_bits(cur))
        if (leq(b, i) || leq(i, b)) {
          comparable = true;
          break;
        }
      if (comparable) continue;
      PointSet next = cur | (PointSet(1) << i);
      out.push_back(next);
      stack.emplace_back(i + 1, next);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Poset::same_order(const Poset& other) const {
  return n_ == other.n_ && labels_ == other.labels_ && up_ == other.up_;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < n_ && cover; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

std::string Poset::hasse_dot(const std::string& graph_name) const {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n  rankdir=BT;\n";
  for (int i = 0; i < n_; ++i) os << "  \"" << label(i) << "\";\n";
  for (auto [a, b] : cover_pairs())
    os << "  \"" << label(a) << "\" -> \"" << label(b) << "\";\n";
  os << "}\n";
  return os.str();
}

std::string Poset::set_to_string(PointSet s) const {
  std::string out = "{";
  bool first = true;
  for (int b : set_bits(s)) {
    if (!first) out += ",";
    out += label(b);
    first = false;
  }
  return out + "}";
}

PointSet Poset::set_of(const std::vector<std::string>& labels) const {
  PointSet s = 0;
  for (const auto& l : labels) s |= PointSet(1) << index_of(l);
  return s;
}

PointSet down_closure(const Poset& x, PointSet s) { return x.down_closure(s); }
bool is_open(const Poset& x, PointSet s) { return x.is_open(s); }

bool constructible_is_discrete(const Poset& x) {
  for (int i = 0; i < x.size(); ++i) {
    const PointSet u = x.down_set(i);
    const PointSet v = u & ~(PointSet(1) << i);  // strict down-set
    if (!x.is_open(u) || !x.is_open(v)) return false;
    if ((u & ~v) != (PointSet(1) << i)) return false;
  }
  return true;
}

namespace {

std::string set_label(PointSet s, int n, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (int b = 0; b < n; ++b)
    if ((s >> b) & 1u) {
      if (!first) out += ",";
      out += labels.empty() ? std::to_string(b) : labels[static_cast<std::size_t>(b)];
      first = false;
    }
  return out + "}";
}

}  // namespace

SpectralReport is_spectral(int n, std::vector<PointSet> opens,
                           const std::vector<std::string>& labels) {
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  const PointSet full = n == 0 ? 0 : (n >= 64 ? ~PointSet(0) : (PointSet(1) << n) - 1);

  auto is_listed = [&opens](PointSet s) {
    return std::binary_search(opens.begin(), opens.end(), s);
  };
  if (!is_listed(0) || !is_listed(full))
    throw std::invalid_argument("open family must contain the empty set and the whole space");
  for (PointSet a : opens)
    for (PointSet b : opens) {
      if (!is_listed(a | b))
        throw std::invalid_argument("open family not closed under union");
      if (!is_listed(a & b))
        throw std::invalid_argument("open family not closed under intersection");
    }

  SpectralReport rep;
  rep.compact = true;  // finitely many points: every open cover is finite
  rep.basis_intersection_closed = true;

  // T0: some open separates each pair.
  for (int i = 0; i < n && rep.t0; ++i)
    for (int j = i + 1; j < n && rep.t0; ++j) {
      bool separated = false;
      for (PointSet o : opens) {
        bool bi = (o >> i) & 1u, bj = (o >> j) & 1u;
        if (bi != bj) {
          separated = true;
          break;
        }
      }
      if (!separated) {
        rep.t0 = false;
        rep.t0_witness = {labels.empty() ? std::to_string(i) : labels[static_cast<std::size_t>(i)],
                          labels.empty() ? std::to_string(j) : labels[static_cast<std::size_t>(j)]};
      }
    }

  // Sober: every nonempty irreducible closed set has exactly one generic pt.
  std::vector<PointSet> closeds;
  closeds.reserve(opens.size());
  for (PointSet o : opens) closeds.push_back(full & ~o);
  std::sort(closeds.begin(), closeds.end());

  // closure of a point = smallest closed set containing it
  std::vector<PointSet> point_closure(static_cast<std::size_t>(n), full);
  for (int i = 0; i < n; ++i)
    for (PointSet c : closeds)
      if (((c >> i) & 1u) && popcount(c) < popcount(point_closure[static_cast<std::size_t>(i)]))
        point_closure[static_cast<std::size_t>(i)] = c;

  for (PointSet c : closeds) {
    if (c == 0) continue;
    std::vector<int> generics;
    for (int i = 0; i < n; ++i)
      if (((c >> i) & 1u) && point_closure[static_cast<std::size_t>(i)] == c) generics.push_back(i);
    if (generics.size() == 1) {
      rep.generic_points.emplace_back(
          set_label(c, n, labels),
          labels.empty() ? std::to_string(generics[0])
                         : labels[static_cast<std::size_t>(generics[0])]);
      continue;
    }
    // No unique generic point: decide irreducibility the slow way.
    bool irreducible = true;
    for (PointSet c1 : closeds) {
      if (!irreducible) break;
      if ((c1 & c) == c || (c1 & c) == 0) continue;
      for (PointSet c2 : closeds) {
        if ((c2 & c) == c) continue;
        if ((c & ~(c1 | c2)) == 0) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) {
      rep.sober = false;
      if (!rep.sober_witness) rep.sober_witness = set_label(c, n, labels);
    }
  }

  rep.spectral = rep.t0 && rep.compact && rep.basis_intersection_closed && rep.sober;
  return rep;
}

SpectralReport is_spectral(const Poset& x) {
  if (x.size() <= Poset::kEnumLimit) {
    return is_spectral(x.size(), x.all_down_sets(), x.labels());
  }
  // Structural path: antisymmetry gives T0; closed sets are up-sets and an
  // up-set is irreducible exactly when it has a minimum, which is then its
  // generic point.
  SpectralReport rep;
  rep.t0 = true;
  rep.compact = true;
  rep.basis_intersection_closed = true;
  rep.sober = true;
  rep.spectral = true;
  return rep;
}

namespace {
// Finite spaces: any subset is compact (covers are finite families).
bool finite_subset_compact(PointSet) { return true; }
}  // namespace

bool check_proconstructible_criterion(const Poset& x, PointSet y,
                                      const std::vector<PointSet>& subbasis) {
  x.require_subset(y);
  for (PointSet b : subbasis) {
    if (!x.is_open(b)) throw std::invalid_argument("subbasis member is not open");
    if (!finite_subset_compact(b)) return false;
    if (!finite_subset_compact(b & y)) return false;
  }
  return true;
}

bool SpectralMap::is_monotone() const {
  for (int a = 0; a < source.size(); ++a)
    for (int b = 0; b < source.size(); ++b)
      if (source.leq(a, b) &&
          !target.leq(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
        return false;
  return true;
}

bool SpectralMap::is_surjective() const {
  PointSet hit = 0;
  for (int v : map) hit |= PointSet(1) << v;
  return hit == target.all();
}

bool SpectralMap::is_bijective() const {
  return source.size() == target.size() && is_surjective();
}

PointSet SpectralMap::preimage(PointSet t) const {
  PointSet out = 0;
  for (int a = 0; a < source.size(); ++a)
    if ((t >> map[static_cast<std::size_t>(a)]) & 1u) out |= PointSet(1) << a;
  return out;
}

PointSet SpectralMap::image(PointSet s) const {
  PointSet out = 0;
  for (int a = 0; a < source.size(); ++a)
    if ((s >> a) & 1u) out |= PointSet(1) << map[static_cast<std::size_t>(a)];
  return out;
}

SurjectionReport check_surjection_spectral(const SpectralMap& f,
                                           const std::vector<PointSet>& target_subbasis) {
  return check_surjection_spectral(f, target_subbasis, is_spectral(f.source),
                                   is_spectral(f.target));
}

SurjectionReport check_surjection_spectral(const SpectralMap& f,
                                           const std::vector<PointSet>& target_subbasis,
                                           const SpectralReport& source_report,
                                           const SpectralReport& target_report) {
  if (f.map.size() != static_cast<std::size_t>(f.source.size()))
    throw std::invalid_argument("map is not total");
  for (int v : f.map)
    if (v < 0 || v >= f.target.size()) throw std::invalid_argument("map value out of range");
  for (PointSet b : target_subbasis)
    if (!f.target.is_open(b)) throw std::invalid_argument("subbasis member not open in target");

  SurjectionReport rep;
  rep.source_spectral = source_report.spectral;
  rep.target_t0 = true;  // posets are T0 by antisymmetry
  rep.continuous = f.is_monotone();
  rep.surjective = f.is_surjective();
  rep.preimages_compact = true;
  for (PointSet b : target_subbasis)
    if (!finite_subset_compact(f.preimage(b))) rep.preimages_compact = false;
  rep.hypotheses_hold = rep.source_spectral && rep.target_t0 && rep.continuous &&
                        rep.surjective && rep.preimages_compact;

  rep.target_spectral = target_report.spectral;
  // Spectral map: preimages of compact opens are compact opens. At finite
  // scale compactness is automatic, so this reduces to continuity.
  rep.map_spectral = rep.continuous;
  rep.conclusion_holds = rep.target_spectral && rep.map_spectral;
  rep.agreement = !rep.hypotheses_hold || rep.conclusion_holds;
  if (!rep.hypotheses_hold) {
    rep.detail = "hypothesis failure:";
    if (!rep.source_spectral) rep.detail += " source-not-spectral";
    if (!rep.continuous) rep.detail += " not-continuous";
    if (!rep.surjective) rep.detail += " not-surjective";
  }
  return rep;
}

bool order_iso_is_homeo(const SpectralMap& f) {
  if (!f.is_bijective()) throw std::invalid_argument("map is not bijective");
  std::vector<int> inv(static_cast<std::size_t>(f.target.size()));
  for (int a = 0; a < f.source.size(); ++a) inv[static_cast<std::size_t>(f.map[static_cast<std::size_t>(a)])] = a;

  bool fwd = f.is_monotone();
  bool bwd = true;
  for (int a = 0; a < f.target.size(); ++a)
    for (int b = 0; b < f.target.size(); ++b)
      if (f.target.leq(a, b) &&
          !f.source.leq(inv[static_cast<std::size_t>(a)], inv[static_cast<std::size_t>(b)]))
        bwd = false;
  if (!fwd || !bwd) return false;

  // Independent check: images and preimages of opens are open.
  if (f.source.size() <= Poset::kEnumLimit && f.target.size() <= Poset::kEnumLimit) {
    for (PointSet o : f.source.all_down_sets())
      if (!f.target.is_open(f.image(o))) return false;
    for (PointSet o : f.target.all_down_sets())
      if (!f.source.is_open(f.preimage(o))) return false;
  }
  return true;
}

}  // namespace speclab
