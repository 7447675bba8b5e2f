#include "scatpoly/bivariate_poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace scatpoly {

namespace {

void accumulate(BivariatePoly::TermMap& terms, const Monomial& m, const ComplexRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

}  // namespace

BivariatePoly::BivariatePoly(ComplexRational constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{0, 0}, std::move(constant));
}

BivariatePoly::BivariatePoly(TermMap terms) : terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.z < 0 || it->first.zbar < 0) throw std::invalid_argument("negative monomial exponent");
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
}

BivariatePoly BivariatePoly::monomial(int a, int b, ComplexRational coeff) {
  TermMap t;
  t.emplace(Monomial{a, b}, std::move(coeff));
  return BivariatePoly(std::move(t));
}

BivariatePoly BivariatePoly::boundary_factor() {
  return BivariatePoly(TermMap{{{0, 0}, 1}, {{1, 1}, -1}});
}

ComplexRational BivariatePoly::coeff(int a, int b) const {
  auto it = terms_.find(Monomial{a, b});
  return it == terms_.end() ? ComplexRational{} : it->second;
}

int BivariatePoly::total_degree() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) deg = std::max(deg, m.z + m.zbar);
  return deg;
}

BivariatePoly add(const BivariatePoly& lhs, const BivariatePoly& rhs) {
  auto terms = lhs.terms();
  for (const auto& [m, c] : rhs.terms()) accumulate(terms, m, c);
  return BivariatePoly(std::move(terms));
}

BivariatePoly sub(const BivariatePoly& lhs, const BivariatePoly& rhs) {
  auto terms = lhs.terms();
  for (const auto& [m, c] : rhs.terms()) accumulate(terms, m, -c);
  return BivariatePoly(std::move(terms));
}

BivariatePoly mul(const BivariatePoly& lhs, const BivariatePoly& rhs) {
  BivariatePoly::TermMap terms;
  for (const auto& [ml, cl] : lhs.terms()) {
    for (const auto& [mr, cr] : rhs.terms()) {
      accumulate(terms, Monomial{ml.z + mr.z, ml.zbar + mr.zbar}, cl * cr);
    }
  }
  return BivariatePoly(std::move(terms));
}

BivariatePoly scale(const BivariatePoly& p, const ComplexRational& c) {
  if (c.is_zero()) return {};
  BivariatePoly::TermMap terms;
  for (const auto& [m, coeff] : p.terms()) terms.emplace(m, coeff * c);
  return BivariatePoly(std::move(terms));
}

BivariatePoly pow(const BivariatePoly& p, unsigned exponent) {
  BivariatePoly result(1);
  BivariatePoly base = p;
  while (exponent > 0) {
    if (exponent & 1u) result = mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mul(base, base);
  }
  return result;
}

BivariatePoly wirtinger_dz(const BivariatePoly& p) {
  BivariatePoly::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.z == 0) continue;
    terms.emplace(Monomial{m.z - 1, m.zbar}, c * ComplexRational(m.z));
  }
  return BivariatePoly(std::move(terms));
}

BivariatePoly wirtinger_dzbar(const BivariatePoly& p) {
  BivariatePoly::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.zbar == 0) continue;
    terms.emplace(Monomial{m.z, m.zbar - 1}, c * ComplexRational(m.zbar));
  }
  return BivariatePoly(std::move(terms));
}

std::complex<double> eval(const BivariatePoly& p, std::complex<double> z) {
  if (p.is_zero()) return {0.0, 0.0};
  int max_a = 0;
  int max_b = 0;
  for (const auto& [m, c] : p.terms()) {
    max_a = std::max(max_a, m.z);
    max_b = std::max(max_b, m.zbar);
  }
  std::vector<std::complex<double>> zpow(max_a + 1, 1.0);
  std::vector<std::complex<double>> zbarpow(max_b + 1, 1.0);
  for (int k = 1; k <= max_a; ++k) zpow[k] = zpow[k - 1] * z;
  for (int k = 1; k <= max_b; ++k) zbarpow[k] = zbarpow[k - 1] * std::conj(z);

  std::complex<double> sum{0.0, 0.0};
  for (const auto& [m, c] : p.terms()) sum += c.to_complex() * zpow[m.z] * zbarpow[m.zbar];
  return sum;
}

ComplexRational eval_exact(const BivariatePoly& p, const ComplexRational& z) {
  // Powers of z and zbar, cached by exponent.
  std::map<int, ComplexRational> zpow{{0, 1}};
  std::map<int, ComplexRational> zbarpow{{0, 1}};
  const ComplexRational zc = z.conj();
  auto power = [](std::map<int, ComplexRational>& cache, const ComplexRational& base, int k) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    ComplexRational v = cache.rbegin()->second;
    for (int e = cache.rbegin()->first; e < k; ++e) {
      v *= base;
      cache.emplace(e + 1, v);
    }
    return v;
  };
  ComplexRational sum;
  for (const auto& [m, c] : p.terms()) sum += c * power(zpow, z, m.z) * power(zbarpow, zc, m.zbar);
  return sum;
}

std::optional<BivariatePoly> divide_by_boundary_factor(const BivariatePoly& p) {
  // Along each diagonal a - b = d the polynomial is z^{max(d,0)} zbar^{max(-d,0)}
  // times a univariate polynomial in w = z zbar; divide that by (1 - w).
  std::map<int, std::map<int, ComplexRational>> diagonals;
  for (const auto& [m, c] : p.terms()) diagonals[m.z - m.zbar][std::min(m.z, m.zbar)] = c;

  BivariatePoly::TermMap quotient;
  for (const auto& [d, series] : diagonals) {
    const int shift_a = std::max(d, 0);
    const int shift_b = std::max(-d, 0);
    const int top = series.rbegin()->first;
    ComplexRational running;
    for (int k = 0; k <= top; ++k) {
      auto it = series.find(k);
      if (it != series.end()) running += it->second;
      if (k == top) break;
      if (!running.is_zero()) quotient.emplace(Monomial{shift_a + k, shift_b + k}, running);
    }
    if (!running.is_zero()) return std::nullopt;
  }
  return BivariatePoly(std::move(quotient));
}

std::string to_canonical_string(const BivariatePoly& p) {
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    out += c.to_string();
    out += " z^" + std::to_string(m.z) + " zbar^" + std::to_string(m.zbar) + "\n";
  }
  return out;
}

}  // namespace scatpoly
