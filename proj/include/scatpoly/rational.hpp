#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace scatpoly {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator (GMP canonical form).
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

// n! as an exact integer.
mpz_class factorial(unsigned long n);

// Exact complex rational re + i*im.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(Rational re, Rational im = 0);  // NOLINT(implicit)
  ComplexRational(long re) : ComplexRational(Rational(re)) {}  // NOLINT

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  ComplexRational conj() const { return {re_, -im_}; }

  ComplexRational& operator+=(const ComplexRational& rhs);
  ComplexRational& operator-=(const ComplexRational& rhs);
  ComplexRational& operator*=(const ComplexRational& rhs);

  friend ComplexRational operator+(ComplexRational lhs, const ComplexRational& rhs) { return lhs += rhs; }
  friend ComplexRational operator-(ComplexRational lhs, const ComplexRational& rhs) { return lhs -= rhs; }
  friend ComplexRational operator*(ComplexRational lhs, const ComplexRational& rhs) { return lhs *= rhs; }
  friend ComplexRational operator-(const ComplexRational& v) { return {-v.re_, -v.im_}; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  // "(<num>/<den>,<num>/<den>)", denominators always written.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

// Closest rational to a double (exact binary value of the double).
Rational rational_from_double(double v);

}  // namespace scatpoly
