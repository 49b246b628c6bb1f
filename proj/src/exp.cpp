#include "speclab/exp.hpp"

#include <sstream>

namespace speclab {

std::string format_exp(Exp e, int dim) {
  if (dim == 1) return std::to_string(e[0]);
  return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
}

Exp parse_exp(const std::string& text, int dim) {
  std::string t;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') t += c;
  std::istringstream in(t);
  Exp e;
  char comma = 0;
  if (!(in >> e.v[0])) throw std::invalid_argument("bad exponent vector: " + text);
  if (dim == 2) {
    if (!(in >> comma >> e.v[1]) || comma != ',')
      throw std::invalid_argument("expected two comma-separated coordinates: " + text);
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("trailing input in exponent vector: " + text);
  return e;
}

std::vector<Exp> parse_exp_list(const std::string& text, int dim) {
  std::vector<Exp> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ';'))
    if (!item.empty()) out.push_back(parse_exp(item, dim));
  return out;
}

}  // namespace speclab
