#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "scatpoly/rational.hpp"

namespace scatpoly {

// Exponent pair (a, b) of the monomial z^a zbar^b.
struct Monomial {
  int z = 0;
  int zbar = 0;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse polynomial in the commuting formal variables z and zbar with exact
/// complex-rational coefficients.
///
/// No stored term is ever zero, so structural equality is polynomial equality
/// and the empty term map is the zero polynomial. Values are immutable once
/// built; all operations return new polynomials.
class BivariatePoly {
 public:
  using TermMap = std::map<Monomial, ComplexRational>;

  BivariatePoly() = default;
  BivariatePoly(ComplexRational constant);  // NOLINT(implicit)
  explicit BivariatePoly(TermMap terms);

  static BivariatePoly monomial(int a, int b, ComplexRational coeff = 1);
  static BivariatePoly z() { return monomial(1, 0); }
  static BivariatePoly zbar() { return monomial(0, 1); }
  // 1 - z zbar, the factor vanishing on the unit circle.
  static BivariatePoly boundary_factor();

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Coefficient of z^a zbar^b (zero when absent).
  ComplexRational coeff(int a, int b) const;

  // max(a + b) over stored terms; -1 for the zero polynomial.
  int total_degree() const;

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  TermMap terms_;
};

BivariatePoly add(const BivariatePoly& lhs, const BivariatePoly& rhs);
BivariatePoly sub(const BivariatePoly& lhs, const BivariatePoly& rhs);
BivariatePoly mul(const BivariatePoly& lhs, const BivariatePoly& rhs);
BivariatePoly scale(const BivariatePoly& p, const ComplexRational& c);
BivariatePoly pow(const BivariatePoly& p, unsigned exponent);

inline BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) { return add(a, b); }
inline BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) { return sub(a, b); }
inline BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) { return mul(a, b); }
inline BivariatePoly operator*(const ComplexRational& c, const BivariatePoly& p) { return scale(p, c); }

// Wirtinger derivatives, treating z and zbar as independent variables.
BivariatePoly wirtinger_dz(const BivariatePoly& p);
BivariatePoly wirtinger_dzbar(const BivariatePoly& p);

// Substitutes z and conj(z).
std::complex<double> eval(const BivariatePoly& p, std::complex<double> z);

// Exact evaluation at z = x + iy with rational coordinates.
ComplexRational eval_exact(const BivariatePoly& p, const ComplexRational& z);

// Exact q with p = (1 - z zbar) q, or nullopt when (1 - z zbar) does not divide p.
std::optional<BivariatePoly> divide_by_boundary_factor(const BivariatePoly& p);

// Canonical text form: terms ascending by (a, b), one per line, each
// "(<re>/<den>,<im>/<den>) z^a zbar^b". The zero polynomial is the empty string.
std::string to_canonical_string(const BivariatePoly& p);

}  // namespace scatpoly
