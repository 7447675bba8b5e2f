#include "scatpoly/disk_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace scatpoly {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Radial order used by truncated_moment after the logarithmic substitution.
constexpr int kMomentOrder = 96;

double double_factorial(int n) {
  double out = 1.0;
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

}  // namespace

int basis_pair_order(const PQIndex& a, const PQIndex& b) { return (a.sum() + b.sum() + 1) / 2 + 2; }

std::complex<double> inner_product_basis(const RadialForm& a, const RadialForm& b, int order) {
  if (a.angular_frequency != b.angular_frequency) return {0.0, 0.0};
  const int m = a.m;
  const auto rule = gauss_legendre<double>(order);
  // 2pi int_0^1 f_a f_b r dr / (1 - r^2) with u = 2r^2 - 1:
  // (2pi / 4) c_a c_b int (1-u)/2 ((1+u)/2)^m P_a P_b du.
  const double integral = rule.integrate([&](double u) {
    return (1.0 - u) / 2.0 * std::pow((1.0 + u) / 2.0, m) * jacobi_eval(JacobiParams{a.nu, m}, u) *
           jacobi_eval(JacobiParams{b.nu, m}, u);
  });
  return {kTwoPi / 4.0 * a.coeff * b.coeff * integral, 0.0};
}

std::complex<double> inner_product_basis(const PQIndex& a, const PQIndex& b) {
  if (a.angular_frequency() != b.angular_frequency()) return {0.0, 0.0};
  return inner_product_basis(jacobi_form(a), jacobi_form(b), basis_pair_order(a, b));
}

double GramMatrix::max_off_diagonal() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(entries(i, j)));
    }
  }
  return worst;
}

double GramMatrix::max_diagonal_relative_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const double expected = norm_sq(indices[i]);
    const auto k = static_cast<Eigen::Index>(i);
    worst = std::max(worst, std::abs(entries(k, k) - expected) / expected);
  }
  return worst;
}

GramMatrix gram(const std::vector<PQIndex>& indices) {
  if (indices.empty()) throw std::invalid_argument("gram: empty index sequence");
  std::vector<RadialForm> forms;
  forms.reserve(indices.size());
  for (const auto& idx : indices) forms.push_back(jacobi_form(idx));

  const auto n = static_cast<Eigen::Index>(indices.size());
  GramMatrix g{indices, Eigen::MatrixXcd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto& a = indices[static_cast<std::size_t>(i)];
      const auto& b = indices[static_cast<std::size_t>(j)];
      g.entries(i, j) = inner_product_basis(forms[static_cast<std::size_t>(i)],
                                            forms[static_cast<std::size_t>(j)], basis_pair_order(a, b));
      g.entries(j, i) = std::conj(g.entries(i, j));
    }
  }
  return g;
}

DiskSamples::DiskSamples(const DiskFunction& f, int radial_order, int angular_points)
    : rule_(gauss_legendre<double>(radial_order)) {
  if (angular_points < 1) throw std::invalid_argument("angular_points must be >= 1");
  const auto nr = rule_.nodes.size();
  radii_ = ((rule_.nodes.array() + 1.0) / 2.0).sqrt().matrix();
  values_.resize(nr, angular_points);
  for (Eigen::Index i = 0; i < nr; ++i) {
    for (int l = 0; l < angular_points; ++l) values_(i, l) = f(radii_[i], kTwoPi * l / angular_points);
  }
}

Eigen::VectorXcd DiskSamples::fourier_mode(int n) const {
  const auto points = values_.cols();
  Eigen::VectorXcd twiddle(points);
  for (Eigen::Index l = 0; l < points; ++l) {
    const double phase = -kTwoPi * static_cast<double>(n) * static_cast<double>(l) / static_cast<double>(points);
    twiddle[l] = std::complex<double>(std::cos(phase), std::sin(phase)) / static_cast<double>(points);
  }
  return values_ * twiddle;
}

std::complex<double> DiskSamples::inner_product(const RadialForm& form) const {
  // <f, phi> = c int_0^1 [int f e^{-in theta} dtheta] r^m P(2r^2-1) r dr
  //          = (2pi c / 4) int_{-1}^1 F_n(r(u)) r^m P(u) du,   F_n the mean over theta.
  const Eigen::VectorXcd mode = fourier_mode(form.angular_frequency);
  std::complex<double> sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < radii_.size(); ++i) {
    const double u = rule_.nodes[i];
    sum += rule_.weights[i] * mode[i] * std::pow(radii_[i], form.m) * jacobi_eval(JacobiParams{form.nu, form.m}, u);
  }
  return kTwoPi / 4.0 * form.coeff * sum;
}

std::complex<double> inner_product_function(const DiskFunction& f, const PQIndex& idx, int radial_order,
                                            int angular_points) {
  return DiskSamples(f, radial_order, angular_points).inner_product(idx);
}

int default_angular_points(int max_angular_frequency) { return 4 * std::abs(max_angular_frequency) + 16; }

double angular_moment(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("angular_moment: negative exponent");
  return kTwoPi * double_factorial(2 * m - 1) * double_factorial(2 * n - 1) / double_factorial(2 * m + 2 * n);
}

double angular_moment_trapezoid(int m, int n, int points) {
  if (points < 1) throw std::invalid_argument("angular_moment_trapezoid: points must be >= 1");
  double sum = 0.0;
  for (int l = 0; l < points; ++l) {
    const double theta = kTwoPi * l / points;
    sum += std::pow(std::cos(theta), 2 * m) * std::pow(std::sin(theta), 2 * n);
  }
  return kTwoPi * sum / points;
}

double truncated_moment(int m, int n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("truncated_moment: eps must lie in (0, 1)");
  if (m < 0 || n < 0) throw std::invalid_argument("truncated_moment: negative exponent");
  const int k = m + n;
  // int_0^{1-eps} r^{2k+1} / (1 - r^2) dr with t = 1 - r^2 and s = ln t:
  // (1/2) int_{ln t0}^{0} (1 - e^s)^k ds,  t0 = eps (2 - eps).
  const double lower = std::log(eps * (2.0 - eps));
  const auto rule = gauss_legendre<double>(kMomentOrder);
  const double half_width = -lower / 2.0;
  const double radial = rule.integrate([&](double x) {
    const double s = lower / 2.0 * (1.0 - x);
    return std::pow(-std::expm1(s), k);
  }) * half_width / 2.0;
  return angular_moment(m, n) * radial;
}

bool MomentEstimate::is_monotone() const {
  // Cutoffs may come in any order; compare along decreasing eps.
  std::vector<std::size_t> order(cutoffs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cutoffs[a] > cutoffs[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!(values[order[i]] > values[order[i - 1]])) return false;
  }
  return true;
}

double MomentEstimate::log_slope() const {
  const auto count = static_cast<Eigen::Index>(cutoffs.size());
  if (count < 2) throw std::invalid_argument("log_slope: need at least two cutoffs");
  Eigen::MatrixXd design(count, 2);
  Eigen::VectorXd rhs(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    design(i, 0) = std::log(1.0 / cutoffs[static_cast<std::size_t>(i)]);
    design(i, 1) = 1.0;
    rhs[i] = values[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
  return fit[0];
}

std::vector<double> default_eps_ladder() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7}; }

MomentEstimate moment_ladder(int m, int n, const std::vector<double>& cutoffs) {
  MomentEstimate est{m, n, cutoffs, {}};
  est.values.reserve(cutoffs.size());
  for (double eps : cutoffs) est.values.push_back(truncated_moment(m, n, eps));
  return est;
}

}  // namespace scatpoly
