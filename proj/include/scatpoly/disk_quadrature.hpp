#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "scatpoly/jacobi.hpp"
#include "scatpoly/scattering.hpp"

namespace scatpoly {

// A function on the closed disk in polar coordinates.
using DiskFunction = std::function<std::complex<double>(double r, double theta)>;

// Inner products below are in L^2(disk, r dr dtheta / (1 - r^2)), conjugate-linear
// in the second slot. The singular weight is never sampled: every integrand is
// rewritten so that it cancels against the (1 - r^2) factor of a basis function,
// then integrated in u = 2 r^2 - 1.

/// <phi_a, phi_b> from the Jacobi forms. Exactly zero when the angular
/// frequencies differ; otherwise Gauss-Legendre of order (sum_a + sum_b)/2 + 2
/// (rounded up), which is exact for the polynomial integrand.
std::complex<double> inner_product_basis(const PQIndex& a, const PQIndex& b);
std::complex<double> inner_product_basis(const RadialForm& a, const RadialForm& b, int order);

// Gauss-Legendre order used by inner_product_basis for a pair.
int basis_pair_order(const PQIndex& a, const PQIndex& b);

struct GramMatrix {
  std::vector<PQIndex> indices;
  Eigen::MatrixXcd entries;

  double max_off_diagonal() const;
  // max |G_ii - norm_sq(i)| / norm_sq(i)
  double max_diagonal_relative_error() const;
};

/// Pairwise basis inner products; the upper triangle is computed and mirrored.
GramMatrix gram(const std::vector<PQIndex>& indices);

/// Samples of a disk function on a tensor grid of Gauss-Legendre radial nodes
/// (in u = 2r^2 - 1) and equally spaced angles. Projections onto any basis
/// member reuse the same samples.
class DiskSamples {
 public:
  DiskSamples(const DiskFunction& f, int radial_order, int angular_points);

  // <f, phi> by angular trapezoid and radial Gauss-Legendre.
  std::complex<double> inner_product(const RadialForm& form) const;
  std::complex<double> inner_product(const PQIndex& idx) const { return inner_product(jacobi_form(idx)); }

  // (1/2pi) * integral of f(r, theta) e^{-i n theta} dtheta at each radial node.
  Eigen::VectorXcd fourier_mode(int n) const;

  const QuadratureRule<double>& radial_rule() const { return rule_; }
  const Eigen::VectorXd& radii() const { return radii_; }
  int angular_points() const { return static_cast<int>(values_.cols()); }

 private:
  QuadratureRule<double> rule_;
  Eigen::VectorXd radii_;
  Eigen::MatrixXcd values_;  // radial node x angle
};

std::complex<double> inner_product_function(const DiskFunction& f, const PQIndex& idx, int radial_order,
                                            int angular_points);

/// Angular points used when the caller gives none: 4 * |n|_max + 16.
int default_angular_points(int max_angular_frequency);

/// Integral of cos^{2m} sin^{2n} over [0, 2pi] by the double-factorial formula.
double angular_moment(int m, int n);
/// Same integral by the trapezoid rule with the given number of points.
double angular_moment_trapezoid(int m, int n, int points);

/// Integral over {r <= 1 - eps} of x^{2m} y^{2n} / (1 - r^2).
double truncated_moment(int m, int n, double eps);

struct MomentEstimate {
  int m = 0;
  int n = 0;
  std::vector<double> cutoffs;
  std::vector<double> values;

  bool is_monotone() const;
  // Least-squares slope of values against ln(1/eps).
  double log_slope() const;
};

std::vector<double> default_eps_ladder();

MomentEstimate moment_ladder(int m, int n, const std::vector<double>& cutoffs);

}  // namespace scatpoly
