#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatpoly/bivariate_poly.hpp"
#include "scatpoly/jacobi.hpp"

namespace scatpoly {

/// Index (p, q) of a scattering polynomial; min{p, q} >= 1.
class PQIndex {
 public:
  PQIndex(int p, int q) : p_(p), q_(q) {
    if (p < 1 || q < 1) throw std::invalid_argument("min{p,q} must be >= 1");
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int m() const { return std::abs(p_ - q_); }
  int nu() const { return std::min(p_, q_) - 1; }
  int max() const { return std::max(p_, q_); }
  int sum() const { return p_ + q_; }
  // Eigenvalue of the negated modified Laplacian.
  long eigenvalue() const { return static_cast<long>(p_) * q_; }
  // The scattering polynomial is a pure Fourier mode e^{i n theta}, n = q - p.
  int angular_frequency() const { return q_ - p_; }

  std::string to_string() const { return "(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

  friend auto operator<=>(const PQIndex&, const PQIndex&) = default;

 private:
  int p_;
  int q_;
};

/// Factored representation
///   phi(r e^{i theta}) = coeff (1 - r^2) r^m P_nu^(1,m)(2r^2 - 1) e^{i n theta}.
struct RadialForm {
  double coeff = 0.0;
  int m = 0;
  int nu = 0;
  int angular_frequency = 0;
  // Sign of the printed prefactor (-1)^{q + max{p,q}}; kept to document
  // whether the validated sign agrees with it.
  int printed_sign = 1;

  int resolved_sign() const { return coeff < 0 ? -1 : 1; }
  bool printed_sign_agrees() const { return printed_sign == resolved_sign(); }

  template <std::floating_point Scalar>
  Scalar radial(Scalar r) const {
    const Scalar r2 = r * r;
    return Scalar(coeff) * (1 - r2) * std::pow(r, m) * jacobi_eval(JacobiParams{nu, m}, 2 * r2 - 1);
  }

  template <std::floating_point Scalar>
  std::complex<Scalar> operator()(Scalar r, Scalar theta) const {
    const Scalar phase = Scalar(angular_frequency) * theta;
    return radial(r) * std::complex<Scalar>(std::cos(phase), std::sin(phase));
  }

  std::complex<double> operator()(std::complex<double> z) const {
    return (*this)(std::abs(z), std::arg(z));
  }
};

/// Thrown when neither candidate sign of the Jacobi form reproduces the
/// Rodrigues polynomial.
class ValidationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Rodrigues route:
// (-1)^p / (q (p+q-1)!) (1 - z zbar) d^{p+q}/dz^p dzbar^q (1 - z zbar)^{p+q-1}.
BivariatePoly rodrigues(const PQIndex& idx);

// Expanded finite sum over j = 0..nu, built directly with exact coefficients.
BivariatePoly radial_sum(const PQIndex& idx);

// Jacobi representation with its sign fixed by checking against rodrigues().
RadialForm jacobi_form(const PQIndex& idx);

// (1 - z zbar) d^2/dz dzbar, exactly.
BivariatePoly apply_modified_laplacian(const BivariatePoly& poly);

// True iff -modified_laplacian(poly) == eigenvalue * poly exactly.
bool is_eigenfunction(const BivariatePoly& poly, const Rational& eigenvalue);

// -modified_laplacian(phi) == pq phi for the Rodrigues polynomial.
bool eigencheck(const PQIndex& idx);

// All (p, q) with pq = k, ordered by p.
std::vector<PQIndex> eigenspace_indices(long k);

// All (p, q) with p + q <= max_sum in lexicographic order.
std::vector<PQIndex> basis_indices(int max_sum);

// Squared norm in L^2(disk, r dr dtheta / (1 - r^2)): pi p / (q (p + q)).
double norm_sq(const PQIndex& idx);

// max |route - reference| / max |reference| over the sample points, with the
// reference evaluated exactly at the rational value of each sample.
double relative_discrepancy(const RadialForm& form, const BivariatePoly& reference,
                            const std::vector<std::complex<double>>& points);

// Deterministic pseudo-random points in the open unit disk.
std::vector<std::complex<double>> sample_disk_points(std::size_t count, unsigned long seed);

}  // namespace scatpoly
