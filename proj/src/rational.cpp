#include "scatpoly/rational.hpp"

#include <stdexcept>

namespace scatpoly {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  Rational r{mpz_class(numerator), mpz_class(denominator)};
  r.canonicalize();
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

ComplexRational::ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& rhs) {
  Rational re = re_ * rhs.re_ - im_ * rhs.im_;
  Rational im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

namespace {
std::string fraction(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}
}  // namespace

std::string ComplexRational::to_string() const {
  return "(" + fraction(re_) + "," + fraction(im_) + ")";
}

Rational rational_from_double(double v) {
  Rational r(v);
  r.canonicalize();
  return r;
}

}  // namespace scatpoly
