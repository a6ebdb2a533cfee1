#include "permdyn/ratpoly.hpp"

#include <sstream>
#include <stdexcept>

#include "permdyn/numeric.hpp"

namespace permdyn {

int rat_degree(const RatPoly& f) { return static_cast<int>(f.size()) - 1; }

RatPoly rat_trim(RatPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

RatPoly rat_constant(const mpq_class& c) {
  if (c == 0) return {};
  return {c};
}

RatPoly rat_x() { return {mpq_class(0), mpq_class(1)}; }

RatPoly rat_add(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return rat_trim(std::move(r));
}

RatPoly rat_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  return rat_trim(std::move(r));
}

RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return rat_trim(std::move(r));
}

RatPoly rat_scale(const RatPoly& f, const mpq_class& c) {
  if (c == 0) return {};
  RatPoly r = f;
  for (auto& x : r) x *= c;
  return r;
}

mpq_class rat_eval(const RatPoly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

RatPoly rat_compose(const RatPoly& g, const RatPoly& f) {
  RatPoly acc;
  for (std::size_t i = g.size(); i-- > 0;) {
    acc = rat_mul(acc, f);
    if (acc.empty()) acc = rat_constant(g[i]);
    else acc[0] += g[i];
    acc = rat_trim(std::move(acc));
  }
  return acc;
}

RatPoly rat_derivative(const RatPoly& f) {
  if (f.size() < 2) return {};
  RatPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * mpq_class(static_cast<long>(i));
  return rat_trim(std::move(r));
}

std::string rat_poly_to_string(const RatPoly& f) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ' ';
    out += rational_to_string(f[i]);
  }
  return out;
}

RatPoly rat_poly_from_string(const std::string& text) {
  std::istringstream in(text);
  RatPoly f;
  std::string tok;
  while (in >> tok) f.push_back(rational_from_string(tok));
  if (f.empty()) throw std::invalid_argument("empty polynomial text");
  return rat_trim(std::move(f));
}

}  // namespace permdyn
