#include "scatpoly/transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace scatpoly {

void ExpansionTable::set(const PQIndex& idx, std::complex<double> value) {
  if (idx.sum() > truncation_) {
    throw std::out_of_range("expansion index " + idx.to_string() + " exceeds truncation " +
                            std::to_string(truncation_));
  }
  coefficients_[idx] = value;
}

std::complex<double> ExpansionTable::at(const PQIndex& idx) const {
  auto it = coefficients_.find(idx);
  return it == coefficients_.end() ? std::complex<double>{} : it->second;
}

GridSample polar_grid(const GridSpec& spec) {
  if (spec.radial < 1 || spec.angular < 1) throw std::invalid_argument("grid dimensions must be positive");
  GridSample g;
  g.radial_nodes.resize(spec.radial);
  g.angular_nodes.resize(spec.angular);
  for (int i = 0; i < spec.radial; ++i) g.radial_nodes[i] = static_cast<double>(i) / spec.radial;
  for (int j = 0; j < spec.angular; ++j) g.angular_nodes[j] = 2.0 * std::numbers::pi * j / spec.angular;
  g.values = Eigen::MatrixXcd::Zero(spec.radial, spec.angular);
  return g;
}

GridSample sample(const DiskFunction& f, const GridSpec& spec) {
  GridSample g = polar_grid(spec);
  for (Eigen::Index i = 0; i < g.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.values.cols(); ++j) g.values(i, j) = f(g.radial_nodes[i], g.angular_nodes[j]);
  }
  return g;
}

int expansion_radial_order(int truncation) { return truncation + 8; }
int expansion_angular_points(int truncation) { return 4 * truncation + 16; }

ExpansionTable expand(const DiskFunction& f, int truncation) {
  if (truncation < 2) throw std::invalid_argument("expand: truncation must be >= 2");
  const DiskSamples samples(f, expansion_radial_order(truncation), expansion_angular_points(truncation));
  ExpansionTable table(truncation);
  for (const auto& idx : basis_indices(truncation)) {
    table.set(idx, samples.inner_product(idx) / norm_sq(idx));
  }
  return table;
}

Synthesizer::Synthesizer(const ExpansionTable& table) {
  terms_.reserve(table.coefficients().size());
  for (const auto& [idx, c] : table.coefficients()) terms_.emplace_back(jacobi_form(idx), c);
}

std::complex<double> Synthesizer::operator()(double r, double theta) const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [form, c] : terms_) sum += c * form(r, theta);
  return sum;
}

GridSample reconstruct(const ExpansionTable& table, const GridSpec& spec) {
  const Synthesizer synth(table);
  return sample([&](double r, double theta) { return synth(r, theta); }, spec);
}

ExpansionTable divide_by_eigenvalues(const ExpansionTable& f_table) {
  ExpansionTable u(f_table.truncation());
  for (const auto& [idx, c] : f_table.coefficients()) u.set(idx, c / static_cast<double>(idx.eigenvalue()));
  return u;
}

ExpansionTable solve_weighted_poisson(const DiskFunction& f, int truncation) {
  return divide_by_eigenvalues(expand(f, truncation));
}

double boundary_value_check(const ExpansionTable& table, int n_theta) {
  if (n_theta < 1) throw std::invalid_argument("boundary_value_check: n_theta must be >= 1");
  if (table.empty()) return 0.0;
  const Synthesizer synth(table);
  double worst = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    worst = std::max(worst, std::abs(synth(1.0, 2.0 * std::numbers::pi * j / n_theta)));
  }
  return worst;
}

double weighted_l2_residual(const DiskFunction& f, const ExpansionTable& table, int radial_order,
                            int angular_points) {
  const Synthesizer synth(table);
  const auto rule = gauss_legendre<double>(radial_order);
  // r dr / (1 - r^2) = du / (2 (1 - u)) with u = 2r^2 - 1.
  double total = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double r = std::sqrt((1.0 + u) / 2.0);
    double ring = 0.0;
    for (int l = 0; l < angular_points; ++l) {
      const double theta = 2.0 * std::numbers::pi * l / angular_points;
      ring += std::norm(f(r, theta) - synth(r, theta));
    }
    total += rule.weights[i] * ring * (2.0 * std::numbers::pi / angular_points) / (2.0 * (1.0 - u));
  }
  return std::sqrt(total);
}

BivariatePoly synthesize_exact(const ExactTable& table) {
  BivariatePoly sum;
  for (const auto& [idx, c] : table) sum = add(sum, scale(rodrigues(idx), c));
  return sum;
}

ExactTable divide_by_eigenvalues(const ExactTable& f_table) {
  ExactTable u;
  for (const auto& [idx, c] : f_table) {
    Rational inv(1, static_cast<unsigned long>(idx.eigenvalue()));
    inv.canonicalize();
    u.emplace(idx, c * ComplexRational(inv));
  }
  return u;
}

}  // namespace scatpoly
