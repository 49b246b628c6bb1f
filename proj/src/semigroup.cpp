#include "speclab/semigroup.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace speclab {

namespace {

std::string exp_str(Exp e, int dim) { return format_exp(e, dim); }

Exp primitive(Exp v) {
  std::int64_t g = gcd64(v[0], v[1]);
  return g == 0 ? v : Exp{v[0] / g, v[1] / g};
}

// ax + by = g with g = gcd(a,b) >= 0
std::tuple<std::int64_t, std::int64_t, std::int64_t> extgcd(std::int64_t a, std::int64_t b) {
  if (b == 0) return a >= 0 ? std::tuple{a, std::int64_t(1), std::int64_t(0)}
                            : std::tuple{-a, std::int64_t(-1), std::int64_t(0)};
  auto [g, x, y] = extgcd(b, a % b);
  return {g, y, x - (a / b) * y};
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

// ---- Lattice ---------------------------------------------------------------

Lattice Lattice::from(const std::vector<Exp>& vectors) {
  std::vector<Exp> vs;
  for (Exp v : vectors)
    if (!v.is_zero()) vs.push_back(v);
  Lattice lat;
  if (vs.empty()) return lat;

  const Exp d0 = primitive(vs[0]);
  bool collinear = true;
  for (Exp v : vs)
    if (cross(d0, v) != 0) collinear = false;

  if (collinear) {
    lat.rank = 1;
    lat.dir = d0;
    const int coord = d0[0] != 0 ? 0 : 1;
    std::int64_t g = 0;
    for (Exp v : vs) g = gcd64(g, v[coord] / d0[coord]);
    lat.step = g;
    return lat;
  }

  lat.rank = 2;
  Exp w{0, 0};
  std::int64_t cur = 0;
  for (Exp v : vs) {
    auto [g, a, b] = extgcd(cur, v[1]);
    w = a * w + b * v;
    cur = g;
  }
  lat.r = cur;  // > 0: some y-coordinate is nonzero or reduction below finds p
  if (lat.r == 0) {
    // every vector on the x-axis yet not collinear cannot happen; guard anyway
    throw std::logic_error("lattice reduction failed");
  }
  std::int64_t p = 0;
  for (Exp v : vs) {
    const std::int64_t t = v[1] / lat.r;
    p = gcd64(p, (v - t * w)[0]);
  }
  if (p == 0) throw std::logic_error("lattice rank detection failed");
  lat.p = p;
  lat.q = ((w[0] % p) + p) % p;
  return lat;
}

bool Lattice::contains(Exp v) const {
  switch (rank) {
    case 0:
      return v.is_zero();
    case 1: {
      if (cross(dir, v) != 0) return false;
      const int coord = dir[0] != 0 ? 0 : 1;
      const std::int64_t unit = step * dir[coord];
      return v[coord] % unit == 0;
    }
    default: {
      if (v[1] % r != 0) return false;
      const std::int64_t t = v[1] / r;
      return (v[0] - t * q) % p == 0;
    }
  }
}

std::int64_t Lattice::line_coordinate(Exp v) const {
  if (rank != 1 || !contains(v)) throw std::invalid_argument("vector not in the line lattice");
  const int coord = dir[0] != 0 ? 0 : 1;
  return v[coord] / (step * dir[coord]);
}

// ---- construction -----------------------------------------------------------

AffineSemigroup::AffineSemigroup(int dim, std::vector<Exp> generators, std::optional<Exp> conductor,
                                 std::optional<std::int64_t> search_bound)
    : dim_(dim), conductor_(conductor), cache_(std::make_shared<WindowCache>()) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  if (generators.empty()) throw std::invalid_argument("at least one generator required");
  for (Exp g : generators) {
    if (g.is_zero()) throw std::invalid_argument("generators must be nonzero");
    if (!g.nonneg()) throw std::invalid_argument("generators must have nonnegative entries");
    if (dim == 1 && g[1] != 0) throw std::invalid_argument("dim 1 generators are single integers");
  }
  gens_ = std::move(generators);

  std::int64_t max_coord = 0;
  for (Exp g : gens_) max_coord = std::max(max_coord, g.linf());
  search_bound_ = search_bound.value_or(4 * max_coord * static_cast<std::int64_t>(gens_.size()));
  if (search_bound_ <= 0) throw std::invalid_argument("search bound must be positive");

  group_ = Lattice::from(gens_);

  if (dim_ == 1) {
    std::vector<std::int64_t> ks;
    for (Exp g : gens_) ks.push_back(g[0]);
    NumericalMonoid m(ks);
    if (m.gcd() != 1)
      throw std::invalid_argument("dim 1 requires gcd 1 (quotient field k(t))");
    line_ = std::move(m);
    line_step_ = Exp{1, 0};
  } else if (group_.rank == 1) {
    // collinear generators: everything lives on one lattice line
    line_step_ = group_.step * group_.dir;
    std::vector<std::int64_t> ks;
    for (Exp g : gens_) ks.push_back(group_.line_coordinate(g));
    line_ = NumericalMonoid(ks);  // gcd 1 by construction of the group step
  } else {
    // extreme rays: generators extremal in the cross-product order
    Exp lo = gens_[0], hi = gens_[0];
    for (Exp g : gens_) {
      if (cross(g, lo) > 0) lo = g;
      if (cross(hi, g) > 0) hi = g;
    }
    rays_[0] = primitive(lo);
    rays_[1] = primitive(hi);
    for (int i = 0; i < 2; ++i) {
      // smallest positive lattice multiple of the primitive direction
      const Exp d = rays_[i];
      std::int64_t d_step = 1;
      while (!group_.contains(d_step * d)) ++d_step;
      ray_steps_[i] = d_step * d;
      std::vector<std::int64_t> ks;
      for (Exp g : gens_)
        if (cross(d, g) == 0) ks.push_back(g[d[0] != 0 ? 0 : 1] / ray_steps_[i][d[0] != 0 ? 0 : 1]);
      if (ks.empty()) throw std::logic_error("extreme ray carries no generator");
      ray_monoids_[i] = NumericalMonoid(ks);
    }
  }

  build_faces();
  if (conductor_) verify_conductor();
}

void AffineSemigroup::build_faces() {
  faces_.clear();
  faces_.push_back({FaceKind::origin, Exp{}, "0"});
  if (dim_ == 2 && group_.rank == 2) {
    for (int i = 0; i < 2; ++i) {
      std::string name = rays_[i] == Exp{1, 0}   ? "x-ray"
                         : rays_[i] == Exp{0, 1} ? "y-ray"
                                                 : "ray(" + std::to_string(rays_[i][0]) + "," +
                                                       std::to_string(rays_[i][1]) + ")";
      faces_.push_back({FaceKind::ray, rays_[i], name});
    }
  }
  faces_.push_back({FaceKind::full, Exp{}, "cone"});

  primes_.clear();
  for (int f = static_cast<int>(faces_.size()) - 1; f >= 0; --f) {
    const Face& face = faces_[static_cast<std::size_t>(f)];
    std::string name;
    switch (face.kind) {
      case FaceKind::full:
        name = "(0)";
        break;
      case FaceKind::origin:
        name = "m";
        break;
      case FaceKind::ray:
        name = face.dir == Exp{1, 0}   ? "P_x"
               : face.dir == Exp{0, 1} ? "P_y"
                                       : "P(" + std::to_string(face.dir[0]) + "," +
                                             std::to_string(face.dir[1]) + ")";
        break;
    }
    primes_.push_back({f, name});
  }
}

void AffineSemigroup::verify_conductor() {
  const Exp c = *conductor_;
  if (!c.nonneg()) throw std::invalid_argument("conductor must be in N^dim");
  if (dim_ == 1 || group_.rank == 1) {
    if (!in_group(c)) throw std::invalid_argument("conductor not in the group of the semigroup");
    const std::int64_t k = dim_ == 1 ? c[0] : group_.line_coordinate(c);
    if (k < line_->frobenius() + 1)
      throw std::invalid_argument("conductor certificate fails: " + exp_str(c, dim_) +
                                  " + saturation is not inside the semigroup");
    conductor_exact_ = true;
    conductor_check_radius_ = -1;
    return;
  }
  if (!member(c)) throw std::invalid_argument("conductor must lie in the semigroup");
  const std::int64_t W = search_bound_;
  ensure_window(Exp{c[0] + W, c[1] + W});
  for (std::int64_t x = 0; x <= W; ++x)
    for (std::int64_t y = 0; y <= W; ++y) {
      const Exp h{x, y};
      if (!in_saturation(h)) continue;
      if (!member_fast(c + h))
        throw std::invalid_argument("conductor certificate fails at saturation element " +
                                    exp_str(h, dim_));
    }
  conductor_exact_ = false;  // tail beyond the window is the certificate's claim
  conductor_check_radius_ = W;
}

// ---- membership -------------------------------------------------------------

bool AffineSemigroup::in_cone(Exp z) const {
  if (dim_ == 1 || group_.rank == 1) {
    const Exp d = dim_ == 1 ? Exp{1, 0} : group_.dir;
    if (cross(d, z) != 0) return false;
    const int coord = d[0] != 0 ? 0 : 1;
    return z[coord] * d[coord] >= 0;
  }
  return cross(rays_[0], z) >= 0 && cross(z, rays_[1]) >= 0;
}

namespace {
bool coeff_dfs(const std::vector<Exp>& gens, std::size_t idx, Exp v) {
  if (v.is_zero()) return true;
  if (idx == gens.size()) return false;
  const Exp g = gens[idx];
  std::int64_t cmax = std::numeric_limits<std::int64_t>::max();
  for (int i = 0; i < 2; ++i)
    if (g[i] > 0) cmax = std::min(cmax, v[i] / g[i]);
  if (idx + 1 == gens.size()) {
    // v must be an exact multiple of the last generator
    for (std::int64_t c = 0; c <= cmax; ++c)
      if ((v - c * g).is_zero()) return true;
    return false;
  }
  for (std::int64_t c = cmax; c >= 0; --c)
    if (coeff_dfs(gens, idx + 1, v - c * g)) return true;
  return false;
}
}  // namespace

bool AffineSemigroup::member(Exp z) const {
  if (z.is_zero()) return true;
  if (!z.nonneg()) return false;
  if (dim_ == 1) return z[1] == 0 && line_->member(z[0]);
  if (group_.rank == 1) {
    if (!group_.contains(z)) return false;
    const std::int64_t k = group_.line_coordinate(z);
    return k >= 0 && line_->member(k);
  }
  if (!in_cone(z) || !in_group(z)) return false;
  return coeff_dfs(gens_, 0, z);
}

struct AffineSemigroup::WindowCache {
  std::mutex mu;
  std::vector<std::unique_ptr<const Window>> built;  // kept alive for readers
  std::atomic<const Window*> current{nullptr};
};

const AffineSemigroup::Window* AffineSemigroup::current_window() const {
  return cache_->current.load(std::memory_order_acquire);
}

void AffineSemigroup::ensure_window(Exp hi) const {
  std::int64_t w0 = std::max<std::int64_t>(hi[0], 1);
  std::int64_t w1 = std::max<std::int64_t>(dim_ == 2 ? hi[1] : 0, 0);
  if (const Window* cur = current_window(); cur && cur->covers(Exp{w0, w1})) return;
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (const Window* cur = current_window()) {
    if (cur->covers(Exp{w0, w1})) return;
    w0 = std::max(w0, cur->w0);
    w1 = std::max(w1, cur->w1);
  }
  auto win = std::make_unique<Window>();
  win->w0 = w0;
  win->w1 = w1;
  win->bits.assign(static_cast<std::size_t>((w0 + 1) * (w1 + 1)), 0);
  // additive sieve: reach(v) = [v == 0] or reach(v - g) for some generator
  for (std::int64_t x = 0; x <= w0; ++x)
    for (std::int64_t y = 0; y <= w1; ++y) {
      bool reach = (x == 0 && y == 0);
      for (std::size_t gi = 0; gi < gens_.size() && !reach; ++gi) {
        const Exp g = gens_[gi];
        if (g[0] <= x && g[1] <= y)
          reach = win->bits[static_cast<std::size_t>((x - g[0]) * (w1 + 1) + (y - g[1]))] != 0;
      }
      win->bits[static_cast<std::size_t>(x * (w1 + 1) + y)] = reach ? 1 : 0;
    }
  const Window* ptr = win.get();
  cache_->built.push_back(std::move(win));
  cache_->current.store(ptr, std::memory_order_release);
}

bool AffineSemigroup::member_fast(Exp z) const {
  if (z.is_zero()) return true;
  if (!z.nonneg()) return false;
  if (const Window* cur = current_window(); cur && cur->covers(z)) return cur->get(z);
  return member(z);
}

Exp AffineSemigroup::window_hi() const {
  const Window* cur = current_window();
  return cur ? Exp{cur->w0, cur->w1} : Exp{-1, -1};
}

const NumericalMonoid& AffineSemigroup::line_monoid() const {
  if (!line_) throw std::logic_error("line monoid only exists for dim 1 or collinear systems");
  return *line_;
}

Exp AffineSemigroup::line_step() const {
  if (!line_) throw std::logic_error("line step only exists for dim 1 or collinear systems");
  return line_step_;
}

std::int64_t AffineSemigroup::frobenius() const {
  if (dim_ != 1) throw std::logic_error("frobenius number is the dim 1 notion");
  return line_->frobenius();
}

// ---- faces and primes --------------------------------------------------------

int AffineSemigroup::origin_face() const { return 0; }

int AffineSemigroup::full_face() const { return static_cast<int>(faces_.size()) - 1; }

std::vector<int> AffineSemigroup::ray_faces() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].kind == FaceKind::ray) out.push_back(static_cast<int>(i));
  return out;
}

bool AffineSemigroup::face_contains(int face, Exp m) const {
  const Face& f = faces_[static_cast<std::size_t>(face)];
  switch (f.kind) {
    case FaceKind::origin:
      return m.is_zero();
    case FaceKind::ray: {
      if (cross(f.dir, m) != 0) return false;
      const int coord = f.dir[0] != 0 ? 0 : 1;
      return m[coord] * f.dir[coord] >= 0;
    }
    case FaceKind::full:
      return in_cone(m);
  }
  return false;
}

int AffineSemigroup::face_of(Exp m) const {
  if (m.is_zero()) return origin_face();
  for (int f : ray_faces())
    if (face_contains(f, m)) return f;
  return full_face();
}

int AffineSemigroup::prime_index(const std::string& name) const {
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (primes_[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown monomial prime: " + name);
}

int AffineSemigroup::prime_of_face(int face) const {
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (primes_[i].face == face) return static_cast<int>(i);
  throw std::logic_error("face without prime");
}

namespace {
// F subseteq G on the tiny face lattice
bool face_subset(const Face& f, const Face& g) {
  switch (f.kind) {
    case FaceKind::origin:
      return true;
    case FaceKind::ray:
      return g.kind == FaceKind::full || (g.kind == FaceKind::ray && g.dir == f.dir);
    case FaceKind::full:
      return g.kind == FaceKind::full;
  }
  return false;
}
}  // namespace

bool AffineSemigroup::prime_leq(int a, int b) const {
  // P_F subseteq P_G iff G subseteq F
  const Face& fa = faces_[static_cast<std::size_t>(primes_[static_cast<std::size_t>(a)].face)];
  const Face& fb = faces_[static_cast<std::size_t>(primes_[static_cast<std::size_t>(b)].face)];
  return face_subset(fb, fa);
}

Poset AffineSemigroup::prime_poset() const {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : primes_) labels.push_back(p.name);
  for (std::size_t a = 0; a < primes_.size(); ++a)
    for (std::size_t b = 0; b < primes_.size(); ++b)
      if (a != b && prime_leq(static_cast<int>(a), static_cast<int>(b)))
        pairs.emplace_back(primes_[a].name, primes_[b].name);
  return Poset::from_relation(labels, pairs);
}

bool AffineSemigroup::prime_contains(int prime, Exp m) const {
  const MonomialPrime& p = primes_[static_cast<std::size_t>(prime)];
  if (faces_[static_cast<std::size_t>(p.face)].kind == FaceKind::full) return false;  // zero ideal
  return member_fast(m) && !face_contains(p.face, m);
}

Exp AffineSemigroup::ray_dir(int which) const {
  if (dim_ != 2 || group_.rank != 2) throw std::logic_error("rays need a nondegenerate cone");
  return rays_[which];
}

const NumericalMonoid& AffineSemigroup::ray_monoid(int which) const {
  if (!ray_monoids_[which]) throw std::logic_error("rays need a nondegenerate cone");
  return *ray_monoids_[which];
}

Exp AffineSemigroup::ray_step(int which) const {
  if (dim_ != 2 || group_.rank != 2) throw std::logic_error("rays need a nondegenerate cone");
  return ray_steps_[which];
}

// ---- json -------------------------------------------------------------------

AffineSemigroup AffineSemigroup::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("semigroup json: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("generators"))
    throw std::invalid_argument("semigroup json needs fields dim and generators");
  const int dim = j.at("dim").get<int>();
  auto read_vec = [dim](const nlohmann::json& v) -> Exp {
    if (v.is_number_integer()) return Exp{v.get<std::int64_t>(), 0};
    if (!v.is_array() || v.size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument("exponent vector has wrong arity");
    Exp e;
    for (int i = 0; i < dim; ++i) e[i] = v.at(static_cast<std::size_t>(i)).get<std::int64_t>();
    return e;
  };
  std::vector<Exp> gens;
  for (const auto& v : j.at("generators")) gens.push_back(read_vec(v));
  std::optional<Exp> conductor;
  if (j.contains("conductor")) conductor = read_vec(j.at("conductor"));
  std::optional<std::int64_t> bound;
  if (j.contains("search_bound")) bound = j.at("search_bound").get<std::int64_t>();
  return AffineSemigroup(dim, std::move(gens), conductor, bound);
}

std::string AffineSemigroup::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim_;
  j["generators"] = nlohmann::ordered_json::array();
  for (Exp g : gens_) {
    if (dim_ == 1)
      j["generators"].push_back(g[0]);
    else
      j["generators"].push_back({g[0], g[1]});
  }
  if (conductor_) {
    if (dim_ == 1)
      j["conductor"] = (*conductor_)[0];
    else
      j["conductor"] = {(*conductor_)[0], (*conductor_)[1]};
  }
  j["search_bound"] = search_bound_;
  return j.dump(2);
}

// ---- ideals -------------------------------------------------------------------

std::vector<Exp> minimalize(const AffineSemigroup& S, std::vector<Exp> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](Exp a, Exp b) { return std::pair(a.sum(), a) < std::pair(b.sum(), b); });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (!candidates.empty()) {
    Exp mn = candidates.front(), mx = candidates.front();
    for (Exp c : candidates)
      for (int i = 0; i < 2; ++i) {
        mn[i] = std::min(mn[i], c[i]);
        mx[i] = std::max(mx[i], c[i]);
      }
    S.ensure_window(mx - mn);
  }
  std::vector<Exp> minimal;
  for (Exp v : candidates) {
    bool covered = false;
    for (Exp w : minimal) {
      const Exp d = v - w;
      if (d.nonneg() && S.member_fast(d)) {
        covered = true;
        break;
      }
    }
    if (!covered) minimal.push_back(v);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

MonomialIdeal make_ideal(const AffineSemigroup& S, std::vector<Exp> gens) {
  for (Exp g : gens)
    if (!S.member(g))
      throw std::invalid_argument("ideal generator not in the semigroup: " +
                                  exp_str(g, S.dim()));
  return MonomialIdeal{minimalize(S, std::move(gens))};
}

FracIdeal make_frac_ideal(const AffineSemigroup& S, std::vector<Exp> gens) {
  for (Exp g : gens)
    if (!S.in_group(g))
      throw std::invalid_argument("fractional generator not in the group: " +
                                  exp_str(g, S.dim()));
  return FracIdeal{minimalize(S, std::move(gens))};
}

MonomialIdeal whole_ring_ideal() { return MonomialIdeal{{Exp{0, 0}}}; }

FracIdeal frac_of(const MonomialIdeal& I) { return FracIdeal{I.gens}; }

bool ideal_contains(const AffineSemigroup& S, const MonomialIdeal& I, Exp v) {
  for (Exp g : I.gens) {
    const Exp d = v - g;
    if (d.nonneg() && S.member_fast(d)) return true;
  }
  return false;
}

bool frac_contains(const AffineSemigroup& S, const FracIdeal& I, Exp v) {
  for (Exp g : I.gens) {
    const Exp d = v - g;
    if (d.nonneg() && S.member_fast(d)) return true;
  }
  return false;
}

// ---- colon engine ---------------------------------------------------------

namespace {

// Exact one-dimensional colon: K = { k : k + k_j in N for all j } with N of
// gcd 1 in lattice units. Minimal generators are below 2F + 1 + max(-k_j).
std::vector<std::int64_t> line_colon(const NumericalMonoid& N,
                                     const std::vector<std::int64_t>& shifts) {
  if (shifts.empty()) throw std::logic_error("line colon needs at least one shift");
  const std::int64_t F = N.frobenius();
  // every v >= F+1+lo is a member, so minimal generators live in [lo, hi]
  std::int64_t lo = -shifts[0];
  for (std::int64_t k : shifts) lo = std::max(lo, -k);
  const std::int64_t hi = lo + 2 * F + 1;
  std::vector<std::int64_t> members;
  for (std::int64_t v = lo; v <= hi; ++v) {
    bool ok = true;
    for (std::int64_t k : shifts)
      if (!N.member(v + k)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(v);
  }
  std::vector<std::int64_t> minimal;
  for (std::int64_t v : members) {
    bool covered = false;
    for (std::int64_t w : minimal)
      if (N.member(v - w)) {
        covered = true;
        break;
      }
    if (!covered) minimal.push_back(v);
  }
  return minimal;
}

struct CertifiedRadius {
  std::int64_t radius = 0;
  bool conductor_exact = false;
};

// Certified search radius for the rank-2 case: beyond it, every element of
// K = { v : v + shift in S } is a semigroup translate of an element inside.
// Interior points follow from the conductor translate c + saturation inside
// S; the two boundary strips reduce to colon ideals of the ray monoids,
// bounded through their Frobenius numbers.
std::optional<CertifiedRadius> certified_radius(const AffineSemigroup& S,
                                                const std::vector<Exp>& shifts) {
  if (!S.conductor()) return std::nullopt;
  const Exp c = *S.conductor();
  const Exp w = S.ray_step(0) + S.ray_step(1);  // interior group vector
  const Exp r1 = S.ray_dir(0), r2 = S.ray_dir(1);

  std::int64_t n0 = 1;
  for (Exp j : shifts) {
    n0 = std::max(n0, ceil_div(-cross(r1, j), cross(r1, w)));
    n0 = std::max(n0, ceil_div(-cross(j, r2), cross(w, r2)));
  }
  const Exp p = c + n0 * w;
  const Exp q = p + c;

  std::int64_t ms = 0;
  for (Exp j : shifts) ms = std::max(ms, j.linf());
  std::int64_t mg = 0;
  for (Exp g : S.generators()) mg = std::max(mg, g.linf());

  std::int64_t radius = q.linf();
  for (int ray = 0; ray < 2; ++ray) {
    const Exp r = S.ray_dir(ray);
    auto level = [&](Exp v) { return ray == 0 ? cross(r, v) : cross(v, r); };
    std::int64_t msl = 0;
    for (Exp j : shifts) msl = std::max(msl, std::abs(level(j)));
    const std::int64_t t_strip = std::abs(level(q)) + msl;
    std::int64_t lmin = 0;
    for (Exp g : S.generators()) {
      const std::int64_t l = std::abs(level(g));
      if (l > 0) lmin = lmin == 0 ? l : std::min(lmin, l);
    }
    const std::int64_t cmax = t_strip / lmin + 1;
    const std::int64_t a = cmax * mg;
    const std::int64_t dmax = 2 * a + ms;
    const NumericalMonoid& nr = S.ray_monoid(ray);
    const std::int64_t bk = nr.gcd() * (2 * nr.frobenius() + 2) + dmax + a;
    radius = std::max(radius, a + bk * S.ray_step(ray).linf());
  }
  CertifiedRadius out;
  out.radius = radius + ms + 2;
  out.conductor_exact = S.conductor_exact();
  return out;
}

}  // namespace

ColonResult colon_intersection(const AffineSemigroup& S, std::vector<Exp> shifts, bool integral,
                               std::int64_t box_override) {
  if (integral) shifts.push_back(Exp{0, 0});
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  if (shifts.empty()) throw std::invalid_argument("colon needs at least one shift");
  for (Exp j : shifts)
    if (!S.in_group(j))
      throw std::invalid_argument("shift not in the group of the semigroup: " +
                                  exp_str(j, S.dim()));

  ColonResult res;

  if (S.dim() == 1 || S.degenerate_line()) {
    const NumericalMonoid& N = S.line_monoid();
    std::vector<std::int64_t> ks;
    for (Exp j : shifts)
      ks.push_back(S.dim() == 1 ? j[0] : S.group().line_coordinate(j));
    std::vector<std::int64_t> minimal = line_colon(N, ks);
    for (std::int64_t k : minimal) res.gens.push_back(k * S.line_step());
    std::sort(res.gens.begin(), res.gens.end());
    res.certified = true;
    res.note = "exact (frobenius bound)";
    std::int64_t lo = -ks[0];
    for (std::int64_t k : ks) lo = std::max(lo, -k);
    res.region_lo = lo * S.line_step();
    res.radius = 2 * N.frobenius() + 1;
    return res;
  }

  Exp lo{0, 0};
  for (int i = 0; i < 2; ++i) {
    lo[i] = -shifts[0][i];
    for (Exp j : shifts) lo[i] = std::max(lo[i], -j[i]);
  }

  std::int64_t radius = std::max(S.search_bound(), box_override);
  const auto cert = certified_radius(S, shifts);
  constexpr std::int64_t kRadiusCap = 4096;
  bool certified = false;
  if (cert && cert->radius <= kRadiusCap) {
    radius = std::max(radius, cert->radius);
    certified = true;
    res.note = cert->conductor_exact
                   ? "certified (conductor radius " + std::to_string(cert->radius) + ")"
                   : "certified modulo window-checked conductor (radius " +
                         std::to_string(cert->radius) + ")";
  } else {
    res.note = "verified within box [" + exp_str(lo, S.dim()) + " .. radius " +
               std::to_string(radius) + "]";
  }
  res.certified = certified;
  res.region_lo = lo;
  res.radius = radius;

  std::int64_t need0 = std::max(lo[0] + radius, radius), need1 = std::max(lo[1] + radius, radius);
  for (Exp j : shifts) {
    need0 = std::max(need0, lo[0] + radius + j[0]);
    need1 = std::max(need1, lo[1] + radius + j[1]);
  }
  S.ensure_window(Exp{need0, need1});

  std::vector<Exp> members;
  for (std::int64_t x = lo[0]; x <= lo[0] + radius; ++x)
    for (std::int64_t y = lo[1]; y <= lo[1] + radius; ++y) {
      const Exp v{x, y};
      bool ok = true;
      for (Exp j : shifts)
        if (!S.member_fast(v + j)) {
          ok = false;
          break;
        }
      if (ok) members.push_back(v);
    }
  res.gens = minimalize(S, std::move(members));
  return res;
}

ColonResult colon_by_element(const AffineSemigroup& S, Exp z, std::int64_t box_override) {
  return colon_intersection(S, {z}, /*integral=*/true, box_override);
}

namespace {
// (I : z) = union over generators g of { s in S : s + (z - g) in S }
ColonResult colon_union_by_shifts(const AffineSemigroup& S, const std::vector<Exp>& ideal_gens,
                                  Exp z, std::int64_t box_override) {
  ColonResult out;
  out.certified = true;
  std::vector<Exp> candidates;
  for (Exp g : ideal_gens) {
    ColonResult part = colon_intersection(S, {z - g}, /*integral=*/true, box_override);
    candidates.insert(candidates.end(), part.gens.begin(), part.gens.end());
    if (!part.certified) {
      out.certified = false;
      if (out.note.empty()) out.note = part.note;
    }
    out.region_lo = part.region_lo;
    out.radius = std::max(out.radius, part.radius);
  }
  if (out.certified) out.note = "exact union of certified parts";
  out.gens = minimalize(S, std::move(candidates));
  return out;
}
}  // namespace

ColonResult colon_by_element(const AffineSemigroup& S, const MonomialIdeal& I, Exp z,
                             std::int64_t box_override) {
  if (I.is_zero()) throw std::invalid_argument("colon by the zero ideal is not defined here");
  return colon_union_by_shifts(S, I.gens, z, box_override);
}

ColonResult colon_by_element(const AffineSemigroup& S, const FracIdeal& I, Exp z,
                             std::int64_t box_override) {
  if (I.is_zero()) throw std::invalid_argument("colon by the zero ideal is not defined here");
  return colon_union_by_shifts(S, I.gens, z, box_override);
}

ColonResult colon_fractional(const AffineSemigroup& S, const FracIdeal& J,
                             std::int64_t box_override) {
  if (J.is_zero()) throw std::invalid_argument("colon by the zero module is not defined");
  return colon_intersection(S, J.gens, /*integral=*/false, box_override);
}

MonomialIdeal prime_ideal(const AffineSemigroup& S, int prime) {
  const int face = S.primes()[static_cast<std::size_t>(prime)].face;
  if (S.faces()[static_cast<std::size_t>(face)].kind == FaceKind::full) return MonomialIdeal{};
  std::vector<Exp> gens;
  for (Exp g : S.generators())
    if (!S.face_contains(face, g)) gens.push_back(g);
  return MonomialIdeal{minimalize(S, std::move(gens))};
}

// ---- radicals ---------------------------------------------------------------

std::vector<int> radical_class(const AffineSemigroup& S, const MonomialIdeal& I) {
  if (I.is_zero()) throw std::invalid_argument("radical of the zero ideal is not modeled");
  std::vector<int> out;
  for (std::size_t f = 0; f < S.faces().size(); ++f) {
    bool meets = false;
    for (Exp g : I.gens)
      if (S.face_contains(static_cast<int>(f), g)) {
        meets = true;
        break;
      }
    if (!meets) out.push_back(static_cast<int>(f));
  }
  return out;
}

bool radical_contains(const AffineSemigroup& S, const MonomialIdeal& I, Exp m) {
  // rad(I) is the intersection of the primes P_F over the radical class
  if (!S.member_fast(m)) return false;
  for (int f : radical_class(S, I))
    if (S.face_contains(f, m)) return false;
  return true;
}

std::vector<int> minimal_primes(const AffineSemigroup& S, const MonomialIdeal& I) {
  const std::vector<int> cls = radical_class(S, I);
  std::vector<int> out;
  for (int f : cls) {
    bool maximal = true;
    for (int g : cls)
      if (g != f &&
          face_subset(S.faces()[static_cast<std::size_t>(f)],
                      S.faces()[static_cast<std::size_t>(g)]))
        maximal = false;
    if (maximal) out.push_back(S.prime_of_face(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PrincipalRadicalResult is_radical_of_principal(const AffineSemigroup& S, const MonomialIdeal& I) {
  PrincipalRadicalResult res;
  res.radical_faces = radical_class(S, I);

  for (std::size_t gi = 0; gi < S.faces().size(); ++gi) {
    const Face& G = S.faces()[gi];
    if (G.kind == FaceKind::origin) continue;  // no nonzero monomial sits on {0}
    std::vector<int> predicted;
    for (std::size_t f = 0; f < S.faces().size(); ++f)
      if (!face_subset(G, S.faces()[f])) predicted.push_back(static_cast<int>(f));
    if (predicted != res.radical_faces) continue;

    res.is_radical_of_principal = true;
    if (G.kind == FaceKind::ray) {
      int which = S.ray_dir(0) == G.dir ? 0 : 1;
      const std::int64_t kmin = S.ray_monoid(which).generators().front();
      res.witness = kmin * S.ray_step(which);
    } else if (S.dim() == 1 || S.degenerate_line()) {
      res.witness = S.line_monoid().generators().front() * S.line_step();
    } else {
      // lexicographically smallest interior monomial
      std::int64_t mg = 0;
      for (Exp g : S.generators()) mg = std::max(mg, g.linf());
      const std::int64_t W = 2 * mg + 2;
      S.ensure_window(Exp{W, W});
      for (std::int64_t x = 0; x <= W && !res.witness; ++x)
        for (std::int64_t y = 0; y <= W && !res.witness; ++y) {
          const Exp v{x, y};
          if (S.member_fast(v) && !v.is_zero() && S.face_of(v) == S.full_face())
            res.witness = v;
        }
    }
    return res;
  }
  return res;
}

ColonResult rad_colon_coherent_witness(const AffineSemigroup& S, Exp z) {
  ColonResult res = colon_by_element(S, z);
  res.note = res.note.empty() ? "finitely generated witness" : res.note;
  return res;
}

std::vector<Exp> generated_set_in_box(const AffineSemigroup& S, const std::vector<Exp>& gens,
                                      Exp lo, Exp hi) {
  std::int64_t mnx = 0, mny = 0;
  for (Exp g : gens) {
    mnx = std::min(mnx, g[0]);
    mny = std::min(mny, g[1]);
  }
  S.ensure_window(Exp{hi[0] - mnx, hi[1] - mny});
  std::vector<Exp> out;
  for (std::int64_t x = lo[0]; x <= hi[0]; ++x)
    for (std::int64_t y = (S.dim() == 1 ? 0 : lo[1]); y <= (S.dim() == 1 ? 0 : hi[1]); ++y) {
      const Exp v{x, y};
      for (Exp g : gens) {
        const Exp d = v - g;
        if (d.nonneg() && S.member_fast(d)) {
          out.push_back(v);
          break;
        }
      }
    }
  return out;
}

Flagged<MonomialIdeal> ideal_intersection_box(const AffineSemigroup& S, const MonomialIdeal& I,
                                              const MonomialIdeal& J) {
  if (S.dim() == 1 || S.degenerate_line()) {
    // exact: beyond max generator + frobenius the two ideals both contain the
    // full tail of the line
    const NumericalMonoid& N = S.line_monoid();
    std::int64_t kmax = 0;
    for (Exp g : I.gens) kmax = std::max(kmax, S.dim() == 1 ? g[0] : S.group().line_coordinate(g));
    for (Exp g : J.gens) kmax = std::max(kmax, S.dim() == 1 ? g[0] : S.group().line_coordinate(g));
    const std::int64_t hi = kmax + 2 * N.frobenius() + 2;
    std::vector<Exp> cands;
    for (std::int64_t k = 0; k <= hi; ++k) {
      const Exp v = k * S.line_step();
      if (ideal_contains(S, I, v) && ideal_contains(S, J, v)) cands.push_back(v);
    }
    return {MonomialIdeal{minimalize(S, std::move(cands))}, true, "exact (frobenius bound)"};
  }
  const std::int64_t B = S.search_bound();
  S.ensure_window(Exp{B, B});
  std::vector<Exp> cands;
  for (std::int64_t x = 0; x <= B; ++x)
    for (std::int64_t y = 0; y <= B; ++y) {
      const Exp v{x, y};
      if (ideal_contains(S, I, v) && ideal_contains(S, J, v)) cands.push_back(v);
    }
  return {MonomialIdeal{minimalize(S, std::move(cands))}, false,
          "generators extracted within box radius " + std::to_string(B)};
}

}  // namespace speclab
