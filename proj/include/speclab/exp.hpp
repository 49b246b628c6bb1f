#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace speclab {

// Exponent vector of a (Laurent) monomial. Always stores two coordinates;
// one-dimensional instances keep v[1] == 0.
struct Exp {
  std::array<std::int64_t, 2> v{0, 0};

  constexpr Exp() = default;
  constexpr Exp(std::int64_t a) : v{a, 0} {}
  constexpr Exp(std::int64_t a, std::int64_t b) : v{a, b} {}

  std::int64_t& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  std::int64_t operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  friend constexpr Exp operator+(Exp a, Exp b) { return {a.v[0] + b.v[0], a.v[1] + b.v[1]}; }
  friend constexpr Exp operator-(Exp a, Exp b) { return {a.v[0] - b.v[0], a.v[1] - b.v[1]}; }
  friend constexpr Exp operator*(std::int64_t k, Exp a) { return {k * a.v[0], k * a.v[1]}; }
  friend constexpr bool operator==(Exp a, Exp b) { return a.v == b.v; }
  // Lexicographic; used everywhere a deterministic order is needed.
  friend constexpr bool operator<(Exp a, Exp b) { return a.v < b.v; }

  constexpr bool is_zero() const { return v[0] == 0 && v[1] == 0; }
  constexpr bool nonneg() const { return v[0] >= 0 && v[1] >= 0; }
  std::int64_t sum() const { return v[0] + v[1]; }
  std::int64_t linf() const {
    std::int64_t a = v[0] < 0 ? -v[0] : v[0];
    std::int64_t b = v[1] < 0 ? -v[1] : v[1];
    return a > b ? a : b;
  }
};

// 2x2 integer cross product; > 0 iff b lies counterclockwise of a.
inline std::int64_t cross(Exp a, Exp b) { return a.v[0] * b.v[1] - a.v[1] * b.v[0]; }

std::string format_exp(Exp e, int dim);
Exp parse_exp(const std::string& text, int dim);
std::vector<Exp> parse_exp_list(const std::string& text, int dim);

}  // namespace speclab
