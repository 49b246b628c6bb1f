#include "speclab/semistar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "speclab/parallel.hpp"

namespace speclab {

namespace {

bool face_is_full(const AffineSemigroup& S, int prime) {
  return S.faces()[static_cast<std::size_t>(S.primes()[static_cast<std::size_t>(prime)].face)]
             .kind == FaceKind::full;
}

int prime_face(const AffineSemigroup& S, int prime) {
  return S.primes()[static_cast<std::size_t>(prime)].face;
}

void require_group(const AffineSemigroup& S, Exp z) {
  if (!S.in_group(z))
    throw std::invalid_argument("exponent not in the group of the semigroup: " +
                                format_exp(z, S.dim()));
}

PrimeSet normalize_prime_set(const AffineSemigroup& S, PrimeSet ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (int p : ps)
    if (p < 0 || p >= static_cast<int>(S.primes().size()))
      throw std::invalid_argument("prime index out of range");
  return ps;
}

}  // namespace

PrimeSet parse_prime_set(const AffineSemigroup& S, const std::string& names) {
  PrimeSet out;
  std::string item;
  std::istringstream in(names);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(S.prime_index(item));
  }
  return normalize_prime_set(S, out);
}

std::string prime_set_names(const AffineSemigroup& S, const PrimeSet& ps) {
  std::string out;
  for (int p : ps) {
    if (!out.empty()) out += ",";
    out += S.primes()[static_cast<std::size_t>(p)].name;
  }
  return out;
}

// ---- localization membership -------------------------------------------------

namespace {
// escape of a computed colon from a prime: some generator on the prime's face
Flagged<bool> colon_escapes(const AffineSemigroup& S, const ColonResult& col, int prime) {
  if (face_is_full(S, prime)) {
    if (!col.gens.empty()) return {true};
    return {false, col.certified, col.note};  // empty and certified cannot occur
  }
  const int face = prime_face(S, prime);
  for (Exp g : col.gens)
    if (S.face_contains(face, g)) return {true};
  return {false, col.certified, col.note};
}
}  // namespace

Flagged<bool> in_localization(const AffineSemigroup& S, Exp z, int prime) {
  require_group(S, z);
  if (face_is_full(S, prime)) return {true};  // D_(0) is the quotient field
  const ColonResult col = colon_by_element(S, z);
  return colon_escapes(S, col, prime);
}

bool in_localization_box(const AffineSemigroup& S, Exp z, int prime, std::int64_t radius) {
  require_group(S, z);
  if (face_is_full(S, prime)) return true;
  const Face& face = S.faces()[static_cast<std::size_t>(prime_face(S, prime))];
  const std::int64_t zmax = z.linf();
  S.ensure_window(Exp{radius + zmax, radius + zmax});
  if (face.kind == FaceKind::origin) return S.member_fast(z);
  // ray points of S within the radius
  Exp step;
  if (S.dim() == 2 && !S.degenerate_line()) {
    step = S.ray_dir(0) == face.dir ? S.ray_step(0) : S.ray_step(1);
  } else {
    step = S.line_step();
  }
  for (Exp f{0, 0}; f.linf() <= radius; f = f + step)
    if (S.member_fast(f) && S.member_fast(z + f)) return true;
  return false;
}

Flagged<bool> s_delta_member(const AffineSemigroup& S, const FracIdeal& I, const PrimeSet& delta0,
                             Exp z) {
  const PrimeSet delta = normalize_prime_set(S, delta0);
  if (delta.empty()) throw std::invalid_argument("delta must be nonempty");
  require_group(S, z);
  if (I.is_zero()) throw std::invalid_argument("zero module has no localization data");

  bool all_full = true;
  for (int p : delta)
    if (!face_is_full(S, p)) all_full = false;
  if (all_full) return {true};  // intersection of copies of K

  const ColonResult col = colon_by_element(S, I, z);
  Flagged<bool> out{true};
  for (int p : delta) {
    const Flagged<bool> esc = colon_escapes(S, col, p);
    out.absorb_flag(esc);
    if (!esc.value) {
      out.value = false;
      return out;
    }
  }
  return out;
}

Flagged<bool> s_delta_member(const AffineSemigroup& S, const PrimeSet& delta, Exp z) {
  return s_delta_member(S, frac_of(whole_ring_ideal()), delta, z);
}

// ---- v-closure and t-spectrum -------------------------------------------------

Flagged<FracIdeal> v_closure(const AffineSemigroup& S, const FracIdeal& I) {
  if (I.is_zero()) throw std::invalid_argument("v-closure of the zero module is not defined");
  const ColonResult inner = colon_fractional(S, I);
  const ColonResult outer = colon_fractional(S, inner.as_frac());
  Flagged<FracIdeal> out{outer.as_frac()};
  out.absorb_flag(inner.certified, inner.note);
  out.absorb_flag(outer.certified, outer.note);
  return out;
}

TSpectrum t_spectrum_monomial(const AffineSemigroup& S) {
  TSpectrum out;
  for (std::size_t p = 0; p < S.primes().size(); ++p) {
    if (face_is_full(S, static_cast<int>(p))) {
      out.primes.push_back(static_cast<int>(p));  // the zero ideal
      continue;
    }
    const MonomialIdeal ideal = prime_ideal(S, static_cast<int>(p));
    const Flagged<FracIdeal> v = v_closure(S, frac_of(ideal));
    out.certified = out.certified && v.certified;
    if (!v.certified && out.note.empty()) out.note = v.note;
    if (v.value.gens == ideal.gens) out.primes.push_back(static_cast<int>(p));
  }
  std::sort(out.primes.begin(), out.primes.end());

  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int p : out.primes) labels.push_back(S.primes()[static_cast<std::size_t>(p)].name);
  for (int a : out.primes)
    for (int b : out.primes)
      if (a != b && S.prime_leq(a, b))
        pairs.emplace_back(S.primes()[static_cast<std::size_t>(a)].name,
                           S.primes()[static_cast<std::size_t>(b)].name);
  out.poset = Poset::from_relation(labels, pairs);
  return out;
}

// ---- tilde search ---------------------------------------------------------------

std::vector<Exp> group_box(const AffineSemigroup& S, std::int64_t radius) {
  std::vector<Exp> out;
  if (S.dim() == 1) {
    for (std::int64_t x = -radius; x <= radius; ++x) out.push_back(Exp{x, 0});
    return out;
  }
  for (std::int64_t x = -radius; x <= radius; ++x)
    for (std::int64_t y = -radius; y <= radius; ++y)
      if (S.in_group(Exp{x, y})) out.push_back(Exp{x, y});
  return out;
}

TildeSearch TildeSearch::build(const AffineSemigroup& S, const PrimeSet& delta0,
                               std::int64_t ebox) {
  TildeSearch ts;
  ts.delta_ = normalize_prime_set(S, delta0);
  if (ts.delta_.empty()) throw std::invalid_argument("delta must be nonempty");
  if (ts.delta_.size() > 31) throw std::invalid_argument("delta too large");
  ts.ebox_ = ebox;
  ts.candidates_ = group_box(S, ebox);
  S.ensure_window(Exp{3 * ebox + 2, 3 * ebox + 2});
  ts.masks_.reserve(ts.candidates_.size());
  for (Exp e : ts.candidates_) {
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < ts.delta_.size(); ++p) {
      const int prime = ts.delta_[p];
      bool escape;
      if (face_is_full(S, prime)) {
        escape = true;
      } else {
        // direct search for f in S on the face with f - e in S
        escape = false;
        const Face& face = S.faces()[static_cast<std::size_t>(prime_face(S, prime))];
        if (face.kind == FaceKind::origin) {
          escape = S.member_fast(Exp{0, 0} - e);
        } else {
          Exp step;
          if (S.dim() == 2 && !S.degenerate_line())
            step = S.ray_dir(0) == face.dir ? S.ray_step(0) : S.ray_step(1);
          else
            step = S.line_step();
          for (Exp f{0, 0}; f.linf() <= 2 * ebox + 1 && !escape; f = f + step)
            escape = S.member_fast(f) && S.member_fast(f - e);
        }
      }
      if (escape) mask |= std::uint32_t(1) << p;
    }
    ts.masks_.push_back(mask);
  }
  return ts;
}

TildeSearch::Result TildeSearch::query(const AffineSemigroup& S, const FracIdeal& I, Exp z) const {
  const std::uint32_t full = (std::uint32_t(1) << delta_.size()) - 1;
  // distinct escape masks among feasible candidates, first (lex) witness each
  std::vector<std::pair<std::uint32_t, Exp>> reps;
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (!frac_contains(S, I, z + candidates_[i])) continue;
    const std::uint32_t m = masks_[i];
    bool known = false;
    for (auto& [rm, re] : reps)
      if (rm == m) {
        known = true;
        break;
      }
    if (!known) reps.emplace_back(m, candidates_[i]);
  }
  Result res;
  for (std::size_t a = 0; a < reps.size() && !res.found; ++a)
    if (reps[a].first == full) {
      res.found = true;
      res.witness = {reps[a].second};
    }
  for (std::size_t a = 0; a < reps.size() && !res.found; ++a)
    for (std::size_t b = a + 1; b < reps.size() && !res.found; ++b)
      if ((reps[a].first | reps[b].first) == full) {
        res.found = true;
        res.witness = {reps[a].second, reps[b].second};
      }
  for (std::size_t a = 0; a < reps.size() && !res.found; ++a)
    for (std::size_t b = a + 1; b < reps.size() && !res.found; ++b)
      for (std::size_t c = b + 1; c < reps.size() && !res.found; ++c)
        if ((reps[a].first | reps[b].first | reps[c].first) == full) {
          res.found = true;
          res.witness = {reps[a].second, reps[b].second, reps[c].second};
        }
  if (res.found) std::sort(res.witness.begin(), res.witness.end());
  return res;
}

TildeSearch::Result tilde_member(const AffineSemigroup& S, const FracIdeal& I,
                                 const PrimeSet& delta, Exp z, std::int64_t ebox) {
  if (ebox <= 0) ebox = S.search_bound();
  return TildeSearch::build(S, delta, ebox).query(S, I, z);
}

// ---- lemma 5.5 sweep -------------------------------------------------------------

namespace {
Lemma55Report lemma55_impl(const AffineSemigroup& S, const PrimeSet& delta0, const FracIdeal& I,
                           std::int64_t box, std::int64_t ebox) {
  const PrimeSet delta = normalize_prime_set(S, delta0);
  if (delta.empty()) throw std::invalid_argument("delta must be nonempty");
  if (box <= 0) box = 10;
  if (ebox <= 0) ebox = box;

  Lemma55Report rep;
  rep.delta = delta;
  rep.box = box;
  rep.ebox = ebox;

  const TildeSearch ts = TildeSearch::build(S, delta, ebox);
  const std::vector<Exp> grid = group_box(S, box);
  // warm the window for every membership the workers can reach
  std::int64_t mg = 0;
  for (Exp g : I.gens) mg = std::max(mg, g.linf());
  S.ensure_window(Exp{4 * (box + ebox) + mg + 4, 4 * (box + ebox) + mg + 4});

  struct Cell {
    std::uint8_t s_delta = 0, found = 0, certified = 1;
  };
  std::vector<Cell> cells = par::map_n<Cell>(
      static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
        const Exp z = grid[static_cast<std::size_t>(i)];
        Cell c;
        const Flagged<bool> sv = s_delta_member(S, I, delta, z);
        c.s_delta = sv.value ? 1 : 0;
        c.certified = sv.certified ? 1 : 0;
        c.found = ts.query(S, I, z).found ? 1 : 0;
        return c;
      });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Cell& c = cells[i];
    if (!c.certified) rep.certified = false;
    if (c.found && !c.s_delta)
      rep.found_disagreements.push_back(grid[i]);
    else if (c.s_delta && !c.found)
      rep.not_found.push_back(grid[i]);
    else
      ++rep.agree;
  }
  if (!rep.certified) rep.note = "some memberships verified within box only";
  return rep;
}
}  // namespace

Lemma55Report check_lemma_55(const AffineSemigroup& S, const PrimeSet& delta, const FracIdeal& I,
                             std::int64_t box, std::int64_t ebox) {
  return lemma55_impl(S, delta, I, box, ebox);
}

Lemma55Report check_lemma_55_serial(const AffineSemigroup& S, const PrimeSet& delta,
                                    const FracIdeal& I, std::int64_t box, std::int64_t ebox) {
  const bool was = par::enabled();
  par::set_enabled(false);
  Lemma55Report rep = lemma55_impl(S, delta, I, box, ebox);
  par::set_enabled(was);
  return rep;
}

// ---- decision procedures ----------------------------------------------------------

QrVerdict qr_criterion_for(const AffineSemigroup& S, Exp z) {
  require_group(S, z);
  QrVerdict v;
  const ColonResult col = colon_by_element(S, z);
  v.colon_gens = col.gens;
  v.certified = col.certified;
  v.note = "monomial-layer certificate";
  if (!col.certified) v.note += "; " + col.note;

  if (col.as_ideal().is_whole_ring()) {
    v.pass = true;
    v.witness = Exp{0, 0};  // z already lies in the ring
    return v;
  }
  const PrincipalRadicalResult pr = is_radical_of_principal(S, col.as_ideal());
  v.pass = pr.is_radical_of_principal;
  v.witness = pr.witness;
  if (!v.pass)
    for (int f : pr.radical_faces)
      v.obstruction.push_back(S.faces()[static_cast<std::size_t>(f)].name);
  return v;
}

Cor45Report cor45_monomial_report(const AffineSemigroup& S, std::int64_t box) {
  if (S.dim() != 2) throw std::invalid_argument("the height-one survey needs dim 2");
  Cor45Report rep;
  const std::vector<int> rays = S.ray_faces();
  if (rays.empty()) {
    rep.applicable = false;
    rep.note = "no ray primes / not applicable";
    return rep;
  }
  rep.applicable = true;
  if (box <= 0) box = S.search_bound() / 2;

  PrimeSet ray_primes;
  for (int f : rays) ray_primes.push_back(S.prime_of_face(f));
  std::sort(ray_primes.begin(), ray_primes.end());

  for (int p : ray_primes) {
    Cor45Report::RayEntry entry;
    entry.prime = S.primes()[static_cast<std::size_t>(p)].name;
    const PrincipalRadicalResult pr = is_radical_of_principal(S, prime_ideal(S, p));
    entry.pass = pr.is_radical_of_principal;
    entry.witness = pr.witness;
    rep.rays.push_back(entry);
  }

  const std::vector<Exp> grid = group_box(S, box);
  S.ensure_window(Exp{6 * box + 4, 6 * box + 4});
  struct Cell {
    std::uint8_t route_a = 0, route_b = 0, in_ring = 0, certified = 1;
  };
  std::vector<Cell> cells = par::map_n<Cell>(
      static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
        const Exp z = grid[static_cast<std::size_t>(i)];
        Cell c;
        bool a = true;
        for (int p : ray_primes) a = a && in_localization_box(S, z, p, 2 * box + 2);
        c.route_a = a ? 1 : 0;
        const Flagged<bool> b = s_delta_member(S, ray_primes, z);
        c.route_b = b.value ? 1 : 0;
        c.certified = b.certified ? 1 : 0;
        c.in_ring = S.member_fast(z) ? 1 : 0;
        return c;
      });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Cell& c = cells[i];
    ++rep.checked;
    if (!c.certified) rep.certified = false;
    if (c.route_a != c.route_b) {
      rep.routes_agree = false;
      rep.route_mismatches.push_back(grid[i]);
    }
    if (c.route_b && !c.in_ring) {
      rep.intersection_equals_ring = false;
      rep.extra_monomials.push_back(grid[i]);
    }
  }
  return rep;
}

Flagged<bool> pi_t_member(const AffineSemigroup& S, const PrimeSet& delta0, Exp z) {
  const PrimeSet delta = normalize_prime_set(S, delta0);
  if (delta.empty()) throw std::invalid_argument("delta must be nonempty");
  const TSpectrum ts = t_spectrum_monomial(S);
  for (int p : delta)
    if (!std::binary_search(ts.primes.begin(), ts.primes.end(), p))
      throw std::invalid_argument("delta contains a prime outside the t-spectrum");
  for (int p : delta)
    for (int q : ts.primes)
      if (S.prime_leq(q, p) && !std::binary_search(delta.begin(), delta.end(), q))
        throw std::invalid_argument("delta is not a down-set of the t-spectrum");
  return s_delta_member(S, delta, z);
}

DistinguishResult pi_t_distinguish(const AffineSemigroup& S, const PrimeSet& delta0,
                                   const PrimeSet& lambda0, std::int64_t base_radius) {
  const PrimeSet delta = normalize_prime_set(S, delta0);
  const PrimeSet lambda = normalize_prime_set(S, lambda0);
  if (delta == lambda) throw std::invalid_argument("the two down-sets must differ");
  // validate both as down-sets of the t-spectrum
  (void)pi_t_member(S, delta, Exp{0, 0});
  (void)pi_t_member(S, lambda, Exp{0, 0});

  if (base_radius <= 0) base_radius = S.search_bound() / 4;
  if (base_radius <= 0) base_radius = 4;

  DistinguishResult res;
  std::int64_t prev = -1;
  for (std::int64_t radius = base_radius; radius <= 8 * base_radius; radius *= 2) {
    res.radius_reached = radius;
    std::vector<Exp> shell;
    for (Exp z : group_box(S, radius))
      if (z.linf() > prev) shell.push_back(z);
    // smallest exponents first, so the reported witness is the minimal one
    std::sort(shell.begin(), shell.end(),
              [](Exp a, Exp b) { return std::pair(a.linf(), a) < std::pair(b.linf(), b); });
    S.ensure_window(Exp{6 * radius + 4, 6 * radius + 4});
    struct Cell {
      std::uint8_t in_delta = 0, in_lambda = 0, certified = 1;
    };
    // blocks keep the scan order deterministic while allowing an early exit
    constexpr std::size_t kBlock = 256;
    for (std::size_t start = 0; start < shell.size(); start += kBlock) {
      const std::size_t count = std::min(kBlock, shell.size() - start);
      std::vector<Cell> cells = par::map_n<Cell>(
          static_cast<std::int64_t>(count), [&](std::int64_t i) {
            const Exp z = shell[start + static_cast<std::size_t>(i)];
            Cell c;
            const ColonResult col = colon_by_element(S, z);
            bool in_d = true, in_l = true;
            for (int p : delta) {
              const Flagged<bool> esc = colon_escapes(S, col, p);
              if (!esc.certified) c.certified = 0;
              in_d = in_d && esc.value;
            }
            for (int p : lambda) {
              const Flagged<bool> esc = colon_escapes(S, col, p);
              if (!esc.certified) c.certified = 0;
              in_l = in_l && esc.value;
            }
            c.in_delta = in_d ? 1 : 0;
            c.in_lambda = in_l ? 1 : 0;
            return c;
          });
      for (std::size_t i = 0; i < count; ++i) {
        if (!cells[i].certified) res.certified = false;
        if (cells[i].in_delta != cells[i].in_lambda) {
          res.found = true;
          res.witness = shell[start + i];
          res.side = cells[i].in_delta ? +1 : -1;
          res.note = "separating monomial found";
          return res;
        }
      }
    }
    prev = radius;
  }
  res.note = "no monomial witness within radius " + std::to_string(8 * base_radius) +
             "; indeterminate";
  return res;
}

Prop58Report check_prop_58(const AffineSemigroup& S, const PrimeSet& delta0, std::int64_t box) {
  const PrimeSet delta = normalize_prime_set(S, delta0);
  if (delta.empty()) throw std::invalid_argument("delta must be nonempty");
  const TSpectrum ts = t_spectrum_monomial(S);
  Prop58Report rep;
  rep.delta = delta;
  for (int p : delta)
    if (std::binary_search(ts.primes.begin(), ts.primes.end(), p)) rep.delta_t.push_back(p);
  if (rep.delta_t.empty())
    throw std::invalid_argument("delta does not meet the t-spectrum");
  if (box <= 0) box = S.search_bound() / 2;

  const std::vector<Exp> grid = group_box(S, box);
  S.ensure_window(Exp{6 * box + 4, 6 * box + 4});
  struct Cell {
    std::uint8_t a = 0, b = 0, certified = 1;
  };
  std::vector<Cell> cells = par::map_n<Cell>(
      static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
        const Exp z = grid[static_cast<std::size_t>(i)];
        Cell c;
        const ColonResult col = colon_by_element(S, z);
        bool a = true, b = true;
        for (int p : delta) {
          const Flagged<bool> esc = colon_escapes(S, col, p);
          if (!esc.certified) c.certified = 0;
          a = a && esc.value;
        }
        for (int p : rep.delta_t) {
          const Flagged<bool> esc = colon_escapes(S, col, p);
          if (!esc.certified) c.certified = 0;
          b = b && esc.value;
        }
        c.a = a ? 1 : 0;
        c.b = b ? 1 : 0;
        return c;
      });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ++rep.checked;
    if (!cells[i].certified) rep.certified = false;
    if (cells[i].a != cells[i].b) rep.mismatches.push_back(grid[i]);
  }
  return rep;
}

Flagged<bool> lambda_qr_member(const AffineSemigroup& S, const PrimeSet& antichain0, Exp z) {
  const PrimeSet antichain = normalize_prime_set(S, antichain0);
  if (antichain.empty()) throw std::invalid_argument("semigroup prime needs a nonempty antichain");
  for (int a : antichain)
    for (int b : antichain)
      if (a != b && (S.prime_leq(a, b) || S.prime_leq(b, a)))
        throw std::invalid_argument("prime set is not an antichain");
  require_group(S, z);

  const ColonResult col = colon_by_element(S, z);
  for (Exp g : col.gens) {
    bool outside_all = true;
    for (int p : antichain) {
      if (face_is_full(S, p)) continue;  // the zero ideal contains no monomial
      if (!S.face_contains(prime_face(S, p), g)) {
        outside_all = false;
        break;
      }
    }
    if (outside_all) return {true};
  }
  return {false, col.certified, col.note};
}

OverringOracle oracle_localization(const AffineSemigroup& S, int prime) {
  OverringOracle o;
  o.kind = OverringOracle::Kind::localization;
  o.describe = "D_" + S.primes()[static_cast<std::size_t>(prime)].name;
  o.member = [&S, prime](Exp z) { return in_localization(S, z, prime); };
  return o;
}

OverringOracle oracle_s_delta(const AffineSemigroup& S, PrimeSet delta) {
  OverringOracle o;
  o.kind = OverringOracle::Kind::sublocalization;
  o.describe = "T({" + prime_set_names(S, delta) + "})";
  o.member = [&S, delta](Exp z) { return s_delta_member(S, delta, z); };
  return o;
}

OverringOracle oracle_lambda_qr(const AffineSemigroup& S, PrimeSet antichain) {
  OverringOracle o;
  o.kind = OverringOracle::Kind::semigroup_prime_quotient;
  o.describe = "quotient ring of the semigroup prime {" + prime_set_names(S, antichain) + "}";
  o.member = [&S, antichain](Exp z) { return lambda_qr_member(S, antichain, z); };
  return o;
}

}  // namespace speclab
