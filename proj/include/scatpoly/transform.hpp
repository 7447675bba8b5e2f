#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "scatpoly/bivariate_poly.hpp"
#include "scatpoly/disk_quadrature.hpp"
#include "scatpoly/scattering.hpp"

namespace scatpoly {

/// Truncated expansion sum c_{p,q} phi^(p,q), keyed by index; every key has
/// p + q <= truncation.
class ExpansionTable {
 public:
  using Map = std::map<PQIndex, std::complex<double>>;

  ExpansionTable() = default;
  explicit ExpansionTable(int truncation) : truncation_(truncation) {}

  // Throws std::out_of_range if p + q exceeds the truncation.
  void set(const PQIndex& idx, std::complex<double> value);
  std::complex<double> at(const PQIndex& idx) const;

  const Map& coefficients() const { return coefficients_; }
  int truncation() const { return truncation_; }
  bool empty() const { return coefficients_.empty(); }

 private:
  int truncation_ = 0;
  Map coefficients_;
};

// Radial and angular counts of a polar grid: r_i = i / radial, theta_j = 2 pi j / angular.
struct GridSpec {
  int radial = 16;
  int angular = 32;
};

struct GridSample {
  Eigen::VectorXd radial_nodes;   // in [0, 1)
  Eigen::VectorXd angular_nodes;  // in [0, 2pi)
  Eigen::MatrixXcd values;        // radial x angular
};

GridSample polar_grid(const GridSpec& spec);

// Fill a grid's values from a function.
GridSample sample(const DiskFunction& f, const GridSpec& spec);

// Radial Gauss-Legendre order truncation + 8.
int expansion_radial_order(int truncation);
// Angular points 4 * truncation + 16.
int expansion_angular_points(int truncation);

/// c_{p,q} = <f, phi> / norm_sq over basis_indices(truncation).
ExpansionTable expand(const DiskFunction& f, int truncation);

/// Evaluates the partial sum through the Jacobi forms.
class Synthesizer {
 public:
  explicit Synthesizer(const ExpansionTable& table);
  std::complex<double> operator()(double r, double theta) const;

 private:
  std::vector<std::pair<RadialForm, std::complex<double>>> terms_;
};

GridSample reconstruct(const ExpansionTable& table, const GridSpec& spec);

/// Coefficients of u with -modified_laplacian(u) = f: f-coefficients divided by pq.
ExpansionTable solve_weighted_poisson(const DiskFunction& f, int truncation);
ExpansionTable divide_by_eigenvalues(const ExpansionTable& f_table);

/// max |partial sum| over n_theta equally spaced points of the unit circle.
double boundary_value_check(const ExpansionTable& table, int n_theta);

/// sqrt of int |f - partial sum|^2 r dr dtheta / (1 - r^2); f must vanish on the circle.
double weighted_l2_residual(const DiskFunction& f, const ExpansionTable& table, int radial_order = 64,
                            int angular_points = 128);

// Exact-coefficient counterparts used for residual checks in the symbolic representation.
using ExactTable = std::map<PQIndex, ComplexRational>;

BivariatePoly synthesize_exact(const ExactTable& table);
ExactTable divide_by_eigenvalues(const ExactTable& f_table);

}  // namespace scatpoly
