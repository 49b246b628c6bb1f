#include "speclab/scal.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace speclab {

namespace {

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool zn_in_union(const std::vector<std::int64_t>& primes, const std::vector<int>& subset,
                 std::int64_t x) {
  for (int i : subset)
    if (x % primes[static_cast<std::size_t>(i)] == 0) return true;
  return false;
}

std::string zn_point_name(const std::vector<std::int64_t>& primes, const std::vector<int>& subset) {
  std::string out = "{";
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (k) out += ",";
    out += "(" + std::to_string(primes[static_cast<std::size_t>(subset[k])]) + ")";
  }
  return out + "}";
}

// literal check of the three semigroup-prime axioms in Z/n
void validate_zn_point(std::int64_t n, const std::vector<std::int64_t>& primes,
                       const std::vector<int>& subset) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (std::int64_t x = 0; x < n; ++x)
    in[static_cast<std::size_t>(x)] = zn_in_union(primes, subset, x) ? 1 : 0;
  bool nonempty = false, proper = false;
  for (std::int64_t x = 0; x < n; ++x) {
    if (in[static_cast<std::size_t>(x)]) nonempty = true;
    if (!in[static_cast<std::size_t>(x)]) proper = true;
  }
  if (!nonempty || !proper) throw std::logic_error("semigroup prime axioms fail: not proper");
  for (std::int64_t r = 0; r < n; ++r)
    for (std::int64_t x = 0; x < n; ++x) {
      const bool px = in[static_cast<std::size_t>(x)];
      const bool pr = in[static_cast<std::size_t>(r)];
      const bool prod = in[static_cast<std::size_t>((r * x) % n)];
      if (px && !prod) throw std::logic_error("semigroup prime axioms fail: not an ideal set");
      if (!px && !pr && prod)
        throw std::logic_error("semigroup prime axioms fail: complement not multiplicative");
    }
  for (std::int64_t x = 0; x < n; ++x)
    if (in[static_cast<std::size_t>(x)] && gcd64(x, n) == 1)
      throw std::logic_error("semigroup prime contains a unit");
}

Poset order_from_points(const std::vector<SemigroupPrime>& points,
                        const std::function<bool(int, int)>& leq) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : points) labels.push_back(p.name);
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = 0; b < points.size(); ++b)
      if (a != b && leq(static_cast<int>(a), static_cast<int>(b)))
        pairs.emplace_back(points[a].name, points[b].name);
  return Poset::from_relation(labels, pairs);
}

}  // namespace

int ScalSpace::point_index_by_name(const std::string& name) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown semigroup prime: " + name);
}

ScalSpace scal_zn(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  ScalSpace space;
  space.base = ScalSpace::Base::modular;
  space.modulus = n;
  space.prime_divisors = prime_divisors(n);
  for (std::int64_t p : space.prime_divisors) space.prime_names.push_back("(" + std::to_string(p) + ")");

  const int k = static_cast<int>(space.prime_divisors.size());
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    SemigroupPrime pt;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1u) pt.antichain.push_back(i);
    pt.name = zn_point_name(space.prime_divisors, pt.antichain);
    validate_zn_point(n, space.prime_divisors, pt.antichain);
    space.points.push_back(std::move(pt));
  }

  // order = literal union inclusion inside Z/n
  const auto leq = [&space, n](int a, int b) {
    for (std::int64_t x = 0; x < n; ++x)
      if (zn_in_union(space.prime_divisors, space.points[static_cast<std::size_t>(a)].antichain,
                      x) &&
          !zn_in_union(space.prime_divisors, space.points[static_cast<std::size_t>(b)].antichain,
                       x))
        return false;
    return true;
  };
  space.order = order_from_points(space.points, leq);
  return space;
}

ScalSpace scal_monomial(const AffineSemigroup& S) {
  ScalSpace space;
  space.base = ScalSpace::Base::monomial;
  space.semigroup = S;
  const int k = static_cast<int>(S.primes().size());
  for (const auto& p : S.primes()) space.prime_names.push_back(p.name);

  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1u) subset.push_back(i);
    bool antichain = true;
    for (std::size_t a = 0; a < subset.size() && antichain; ++a)
      for (std::size_t b = 0; b < subset.size() && antichain; ++b)
        if (a != b && S.prime_leq(subset[a], subset[b])) antichain = false;
    if (!antichain) continue;
    SemigroupPrime pt;
    pt.antichain = subset;
    std::string name = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (i) name += ",";
      name += S.primes()[static_cast<std::size_t>(subset[i])].name;
    }
    pt.name = name + "}";
    space.points.push_back(std::move(pt));
  }

  // domination order: every prime of a sits under some prime of b; by prime
  // avoidance this is union inclusion at the ring level
  const auto leq = [&space, &S](int a, int b) {
    for (int p : space.points[static_cast<std::size_t>(a)].antichain) {
      bool dominated = false;
      for (int q : space.points[static_cast<std::size_t>(b)].antichain)
        if (p == q || S.prime_leq(p, q)) dominated = true;
      if (!dominated) return false;
    }
    return true;
  };
  space.order = order_from_points(space.points, leq);

  // which pairs the monomial unions can actually tell apart
  const std::int64_t B = S.search_bound();
  S.ensure_window(Exp{B, B});
  std::vector<Exp> monomials;
  for (std::int64_t x = 0; x <= B; ++x)
    for (std::int64_t y = 0; y <= (S.dim() == 1 ? 0 : B); ++y)
      if (S.member_fast(Exp{x, y})) monomials.push_back(Exp{x, y});
  for (int a = 0; a < space.point_count(); ++a)
    for (int b = a + 1; b < space.point_count(); ++b) {
      bool separated = false;
      for (Exp x : monomials)
        if (point_contains(space, a, x) != point_contains(space, b, x)) {
          separated = true;
          break;
        }
      if (!separated) {
        space.subbasis_separates = false;
        space.inseparable_pairs.emplace_back(a, b);
      }
    }
  return space;
}

bool point_contains(const ScalSpace& space, int point, std::int64_t x) {
  if (space.base != ScalSpace::Base::modular)
    throw std::invalid_argument("integer elements belong to the modular model");
  const std::int64_t v = ((x % space.modulus) + space.modulus) % space.modulus;
  return zn_in_union(space.prime_divisors, space.points[static_cast<std::size_t>(point)].antichain,
                     v);
}

bool point_contains(const ScalSpace& space, int point, Exp x) {
  if (space.base != ScalSpace::Base::monomial)
    throw std::invalid_argument("monomial elements belong to the monomial model");
  const AffineSemigroup& S = *space.semigroup;
  for (int p : space.points[static_cast<std::size_t>(point)].antichain)
    if (S.prime_contains(p, x)) return true;
  return false;
}

std::vector<int> d_scal(const ScalSpace& space, std::int64_t x) {
  std::vector<int> out;
  for (int i = 0; i < space.point_count(); ++i)
    if (!point_contains(space, i, x)) out.push_back(i);
  return out;
}

std::vector<int> d_scal(const ScalSpace& space, Exp x) {
  if (space.base != ScalSpace::Base::monomial)
    throw std::invalid_argument("monomial elements belong to the monomial model");
  if (!space.semigroup->member(x))
    throw std::invalid_argument("subbasic opens are indexed by monomials of the semigroup");
  std::vector<int> out;
  for (int i = 0; i < space.point_count(); ++i)
    if (!point_contains(space, i, x)) out.push_back(i);
  return out;
}

namespace {
PointSet mask_of(const std::vector<int>& idx) {
  PointSet m = 0;
  for (int i : idx) m |= PointSet(1) << i;
  return m;
}
}  // namespace

std::vector<PointSet> scal_opens(const ScalSpace& space) {
  std::set<PointSet> subbasic;
  subbasic.insert(0);
  const PointSet full =
      space.point_count() >= 64 ? ~PointSet(0) : (PointSet(1) << space.point_count()) - 1;
  if (space.base == ScalSpace::Base::modular) {
    for (std::int64_t x = 0; x < space.modulus; ++x) subbasic.insert(mask_of(d_scal(space, x)));
  } else {
    const AffineSemigroup& S = *space.semigroup;
    const std::int64_t B = S.search_bound();
    S.ensure_window(Exp{B, B});
    for (std::int64_t x = 0; x <= B; ++x)
      for (std::int64_t y = 0; y <= (S.dim() == 1 ? 0 : B); ++y)
        if (S.member_fast(Exp{x, y})) subbasic.insert(mask_of(d_scal(space, Exp{x, y})));
  }
  // close under intersections, then take all unions
  std::set<PointSet> inters(subbasic.begin(), subbasic.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<PointSet> cur(inters.begin(), inters.end());
    for (PointSet a : cur)
      for (PointSet b : cur)
        if (inters.insert(a & b).second) grew = true;
  }
  std::set<PointSet> opens(inters.begin(), inters.end());
  opens.insert(full);
  grew = true;
  while (grew) {
    grew = false;
    std::vector<PointSet> cur(opens.begin(), opens.end());
    for (PointSet a : cur)
      for (PointSet b : cur)
        if (opens.insert(a | b).second) grew = true;
  }
  return {opens.begin(), opens.end()};
}

EmbedReport embed_spec(const ScalSpace& space) {
  EmbedReport rep;
  Poset spec;
  std::vector<int> prime_to_point(space.prime_names.size());
  if (space.base == ScalSpace::Base::modular) {
    std::vector<std::string> labels = space.prime_names;
    spec = Poset::from_relation(labels, {});  // distinct maximal ideals: an antichain
  } else {
    spec = space.semigroup->prime_poset();
  }
  for (std::size_t i = 0; i < space.prime_names.size(); ++i) {
    bool found = false;
    for (int j = 0; j < space.point_count() && !found; ++j) {
      const auto& pt = space.points[static_cast<std::size_t>(j)];
      if (pt.antichain.size() == 1 &&
          space.prime_names[static_cast<std::size_t>(pt.antichain[0])] ==
              space.prime_names[i]) {
        prime_to_point[i] = j;
        found = true;
      }
    }
    if (!found) throw std::logic_error("singleton point missing");
  }

  rep.map.source = spec;
  rep.map.target = space.order;
  rep.map.map.resize(static_cast<std::size_t>(spec.size()));
  for (int i = 0; i < spec.size(); ++i) {
    // spec poset labels are sorted; translate back through the name
    const std::string& label = spec.label(i);
    int prime = -1;
    for (std::size_t p = 0; p < space.prime_names.size(); ++p)
      if (space.prime_names[p] == label) prime = static_cast<int>(p);
    if (prime < 0) throw std::logic_error("prime label mismatch");
    rep.map.map[static_cast<std::size_t>(i)] =
        space.order.index_of(space.points[static_cast<std::size_t>(
                                              prime_to_point[static_cast<std::size_t>(prime)])]
                                 .name);
  }

  std::vector<int> seen(static_cast<std::size_t>(space.order.size()), 0);
  rep.injective = true;
  for (int v : rep.map.map) {
    if (seen[static_cast<std::size_t>(v)]) rep.injective = false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  rep.continuous = rep.map.is_monotone();

  // subspace topology must agree with the spectrum's own topology
  PointSet image = 0;
  for (int v : rep.map.map) image |= PointSet(1) << v;
  std::set<PointSet> pulled;
  std::vector<PointSet> target_order_opens;
  for (PointSet open_in_space : scal_opens(space)) {
    // translate the point-index mask to an order-label mask
    PointSet translated = 0;
    for (int j = 0; j < space.point_count(); ++j)
      if ((open_in_space >> j) & 1u)
        translated |= PointSet(1)
                      << space.order.index_of(space.points[static_cast<std::size_t>(j)].name);
    pulled.insert(rep.map.preimage(translated));
  }
  std::set<PointSet> source_opens;
  for (PointSet o : rep.map.source.all_down_sets()) source_opens.insert(o);
  rep.subspace_topology_matches = pulled == source_opens;
  rep.ok = rep.injective && rep.continuous && rep.subspace_topology_matches;
  return rep;
}

OverringOracle point_oracle(const ScalSpace& space, int point) {
  if (space.base != ScalSpace::Base::monomial)
    throw std::invalid_argument("oracles attach to monomial semigroup primes");
  return oracle_lambda_qr(*space.semigroup,
                          space.points[static_cast<std::size_t>(point)].antichain);
}

std::string scal_json(const ScalSpace& space) {
  nlohmann::ordered_json j;
  if (space.base == ScalSpace::Base::modular) {
    j["base"] = "Z/" + std::to_string(space.modulus);
  } else {
    j["base"] = nlohmann::ordered_json::parse(space.semigroup->to_json());
    j["note"] = "monomial semigroup primes only; subbasic opens indexed by monomials";
    j["subbasis_separates_points"] = space.subbasis_separates;
    if (!space.subbasis_separates) {
      j["monomially_inseparable_pairs"] = nlohmann::ordered_json::array();
      for (auto [a, b] : space.inseparable_pairs)
        j["monomially_inseparable_pairs"].push_back(
            {space.point_name(a), space.point_name(b)});
    }
  }
  j["primes"] = space.prime_names;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : space.points) j["points"].push_back(p.name);
  j["d_scal"] = nlohmann::ordered_json::array();
  if (space.base == ScalSpace::Base::modular) {
    for (std::int64_t x = 0; x < space.modulus; ++x) {
      nlohmann::ordered_json entry;
      entry["x"] = x;
      entry["points"] = nlohmann::ordered_json::array();
      for (int i : d_scal(space, x)) entry["points"].push_back(space.point_name(i));
      j["d_scal"].push_back(entry);
    }
  } else {
    const AffineSemigroup& S = *space.semigroup;
    const std::int64_t B = std::min<std::int64_t>(S.search_bound(), 6);
    S.ensure_window(Exp{B, B});
    for (std::int64_t x = 0; x <= B; ++x)
      for (std::int64_t y = 0; y <= (S.dim() == 1 ? 0 : B); ++y) {
        const Exp v{x, y};
        if (!S.member_fast(v)) continue;
        nlohmann::ordered_json entry;
        entry["x"] = format_exp(v, S.dim());
        entry["points"] = nlohmann::ordered_json::array();
        for (int i : d_scal(space, v)) entry["points"].push_back(space.point_name(i));
        j["d_scal"].push_back(entry);
      }
  }
  return j.dump(2);
}

}  // namespace speclab
