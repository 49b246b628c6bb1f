#include "speclab/poset_enum.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

#include "speclab/parallel.hpp"

namespace speclab {

Poset OrderMatrix::to_poset() const {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq(a, b))
        pairs.emplace_back(labels[static_cast<std::size_t>(a)],
                           labels[static_cast<std::size_t>(b)]);
  return Poset::from_relation(labels, pairs);
}

namespace {

// Pair (i,j), i<j, gets one of three states: i<j, j<i, incomparable.
// Assignments are explored depth-first in pair order; forced pairs (by
// transitivity of earlier choices) are not branched on.
struct EnumState {
  int n;
  std::uint64_t up[8];    // current reflexive relation
  std::uint64_t nleq[8];  // nleq[a] bit b: a <= b ruled out

  bool knows_leq(int a, int b) const { return (up[a] >> b) & 1u; }
  bool knows_nleq(int a, int b) const { return (nleq[a] >> b) & 1u; }

  // Adds a <= b plus transitive consequences; false on contradiction.
  bool add_leq(int a, int b) {
    if (knows_nleq(a, b)) return false;
    if (knows_leq(a, b)) return true;
    // all x <= a, all y >= b: x <= y
    for (int x = 0; x < n; ++x) {
      if (!knows_leq(x, a)) continue;
      std::uint64_t need = up[b] & ~up[x];
      while (need) {
        int y = std::countr_zero(need);
        need &= need - 1;
        if (knows_nleq(x, y)) return false;
        if (x != y && knows_leq(y, x)) return false;  // antisymmetry
        up[x] |= std::uint64_t(1) << y;
      }
    }
    return true;
  }

  bool add_nleq(int a, int b) {
    if (knows_leq(a, b)) return false;
    nleq[a] |= std::uint64_t(1) << b;
    return true;
  }
};

struct PairList {
  std::vector<std::pair<int, int>> pairs;
  explicit PairList(int n) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
};

void dfs(EnumState st, const PairList& pl, std::size_t k,
         const std::function<void(const OrderMatrix&)>& fn, std::uint64_t& visited) {
  if (k == pl.pairs.size()) {
    OrderMatrix m;
    m.n = st.n;
    for (int i = 0; i < st.n; ++i) m.up[i] = st.up[i];
    ++visited;
    fn(m);
    return;
  }
  auto [i, j] = pl.pairs[k];
  if (st.knows_leq(i, j) || st.knows_leq(j, i)) {
    dfs(st, pl, k + 1, fn, visited);
    return;
  }
  {
    EnumState s = st;
    if (s.add_leq(i, j)) dfs(s, pl, k + 1, fn, visited);
  }
  {
    EnumState s = st;
    if (s.add_leq(j, i)) dfs(s, pl, k + 1, fn, visited);
  }
  {
    EnumState s = st;
    if (s.add_nleq(i, j) && s.add_nleq(j, i)) dfs(s, pl, k + 1, fn, visited);
  }
}

EnumState initial_state(int n) {
  EnumState st{};
  st.n = n;
  for (int i = 0; i < n; ++i) {
    st.up[i] = std::uint64_t(1) << i;
    st.nleq[i] = 0;
  }
  return st;
}

// Collects the partial states at a fixed depth so the tail DFS below each
// of them can run on its own thread.
void collect_prefixes(EnumState st, const PairList& pl, std::size_t k, std::size_t depth,
                      std::vector<std::pair<EnumState, std::size_t>>& out) {
  if (k == depth || k == pl.pairs.size()) {
    out.emplace_back(st, k);
    return;
  }
  auto [i, j] = pl.pairs[k];
  if (st.knows_leq(i, j) || st.knows_leq(j, i)) {
    collect_prefixes(st, pl, k + 1, depth, out);
    return;
  }
  {
    EnumState s = st;
    if (s.add_leq(i, j)) collect_prefixes(s, pl, k + 1, depth, out);
  }
  {
    EnumState s = st;
    if (s.add_leq(j, i)) collect_prefixes(s, pl, k + 1, depth, out);
  }
  {
    EnumState s = st;
    if (s.add_nleq(i, j) && s.add_nleq(j, i)) collect_prefixes(s, pl, k + 1, depth, out);
  }
}

}  // namespace

std::uint64_t for_each_poset(int n, const std::function<void(const OrderMatrix&)>& fn) {
  if (n < 0 || n > 7) throw std::invalid_argument("poset enumeration supports 0..7 elements");
  if (n == 0) {
    OrderMatrix m;
    m.n = 0;
    fn(m);
    return 1;
  }
  PairList pl(n);
  std::uint64_t visited = 0;
  dfs(initial_state(n), pl, 0, fn, visited);
  return visited;
}

std::uint64_t count_posets(int n) {
  return for_each_poset(n, [](const OrderMatrix&) {});
}

SweepResult sweep_posets_serial(
    int n, const std::function<std::optional<std::string>(const OrderMatrix&)>& check) {
  SweepResult res;
  res.visited = for_each_poset(n, [&](const OrderMatrix& m) {
    if (auto fail = check(m)) {
      ++res.failures;
      if (!res.first_failure) res.first_failure = *fail;
    }
  });
  return res;
}

SweepResult sweep_posets(int n,
                         const std::function<std::optional<std::string>(const OrderMatrix&)>& check) {
  if (!par::enabled() || n <= 4) return sweep_posets_serial(n, check);
  PairList pl(n);
  std::vector<std::pair<EnumState, std::size_t>> prefixes;
  collect_prefixes(initial_state(n), pl, 0, /*depth=*/5, prefixes);

  struct Partial {
    std::uint64_t visited = 0;
    std::uint64_t failures = 0;
    std::optional<std::string> first_failure;
  };
  std::vector<Partial> parts(prefixes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(prefixes.size()); ++t) {
    auto& part = parts[static_cast<std::size_t>(t)];
    dfs(prefixes[static_cast<std::size_t>(t)].first, pl, prefixes[static_cast<std::size_t>(t)].second,
        [&](const OrderMatrix& m) {
          if (auto fail = check(m)) {
            ++part.failures;
            if (!part.first_failure) part.first_failure = *fail;
          }
        },
        part.visited);
  }
  // Prefixes are in serial order, so taking the first failure across them in
  // order reproduces the serial result.
  SweepResult res;
  for (const auto& p : parts) {
    res.visited += p.visited;
    res.failures += p.failures;
    if (!res.first_failure && p.first_failure) res.first_failure = p.first_failure;
  }
  return res;
}

namespace {

void map_dfs(const OrderMatrix& src, const OrderMatrix& dst, std::vector<int>& map, int pos,
             std::uint64_t hit, std::uint64_t& count,
             const std::function<void(const OrderMatrix&, const OrderMatrix&,
                                      const std::vector<int>&)>& fn) {
  const int m = src.n, k = dst.n;
  if (pos == m) {
    if (hit == (std::uint64_t(1) << k) - 1) {
      ++count;
      fn(src, dst, map);
    }
    return;
  }
  // Not enough slots left to hit every missing target value.
  if (k - std::popcount(hit) > m - pos) return;
  for (int v = 0; v < k; ++v) {
    bool ok = true;
    for (int j = 0; j < pos && ok; ++j) {
      if (src.leq(j, pos) && !dst.leq(map[static_cast<std::size_t>(j)], v)) ok = false;
      if (src.leq(pos, j) && !dst.leq(v, map[static_cast<std::size_t>(j)])) ok = false;
    }
    if (!ok) continue;
    map[static_cast<std::size_t>(pos)] = v;
    map_dfs(src, dst, map, pos + 1, hit | (std::uint64_t(1) << v), count, fn);
  }
}

}  // namespace

std::uint64_t for_each_monotone_surjection(
    int m, int k,
    const std::function<void(const OrderMatrix&, const OrderMatrix&, const std::vector<int>&)>& fn) {
  if (k > m) return 0;
  std::uint64_t count = 0;
  for_each_poset(m, [&](const OrderMatrix& src) {
    for_each_poset(k, [&](const OrderMatrix& dst) {
      std::vector<int> map(static_cast<std::size_t>(m), 0);
      map_dfs(src, dst, map, 0, 0, count, fn);
    });
  });
  return count;
}

}  // namespace speclab
