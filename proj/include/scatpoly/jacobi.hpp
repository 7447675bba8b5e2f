#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace scatpoly {

/// Parameters of P_nu^(alpha, beta). Only alpha = 1 with integer beta >= 0
/// is supported; beta is the angular order |p - q| of a scattering polynomial.
struct JacobiParams {
  int degree = 0;  // nu
  int beta = 0;    // m
  int alpha = 1;

  void validate() const {
    if (alpha != 1) throw std::invalid_argument("jacobi: only alpha = 1 is supported");
    if (beta < 0) throw std::invalid_argument("jacobi: beta must be nonnegative");
    if (degree < 0) throw std::invalid_argument("jacobi: degree must be nonnegative");
  }
};

/// P_nu^(alpha,beta)(x) by the three-term recurrence in the degree.
template <std::floating_point Scalar>
Scalar jacobi_eval(const JacobiParams& params, Scalar x) {
  params.validate();
  const Scalar a = params.alpha;
  const Scalar b = params.beta;
  Scalar prev = 1;
  if (params.degree == 0) return prev;
  Scalar cur = (a + 1) + (a + b + 2) * (x - 1) / 2;
  for (int n = 2; n <= params.degree; ++n) {
    const Scalar s = 2 * n + a + b;
    const Scalar c1 = 2 * n * (n + a + b) * (s - 2);
    const Scalar c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b);
    const Scalar c3 = 2 * (n + a - 1) * (n + b - 1) * s;
    const Scalar next = (c2 * cur - c3 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Closed form of the squared norm of P_nu^(1,m) under (1-u)(1+u)^m on [-1,1]:
/// 2^{m+2} (nu+1) / ((2nu+m+2)(nu+m+1)).
template <std::floating_point Scalar = double>
Scalar jacobi_norm_sq(const JacobiParams& params) {
  params.validate();
  const Scalar nu = params.degree;
  const Scalar m = params.beta;
  return std::ldexp(Scalar(1), params.beta + 2) * (nu + 1) / ((2 * nu + m + 2) * (nu + m + 1));
}

/// Q_nu^(1,m)(u) = sqrt((1-u)/2) ((1+u)/2)^{m/2} P_nu^(1,m)(u).
template <std::floating_point Scalar>
Scalar quasipolynomial_q(const JacobiParams& params, Scalar u) {
  const Scalar left = std::sqrt(std::max(Scalar(0), (1 - u) / 2));
  const Scalar right = std::pow(std::max(Scalar(0), (1 + u) / 2), Scalar(params.beta) / 2);
  return left * right * jacobi_eval(params, u);
}

/// Node/weight rule on [-1, 1]; exact for polynomials of degree <= 2*order - 1.
template <std::floating_point Scalar>
struct QuadratureRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector nodes;    // strictly increasing
  Vector weights;  // positive
  int order = 0;

  template <typename F>
  auto integrate(F&& f) const {
    using R = decltype(f(Scalar{}));
    R sum{};
    for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

namespace detail {
// (P_n(x), P_n'(x)) for the Legendre polynomial; x must not be +-1.
template <std::floating_point Scalar>
std::pair<Scalar, Scalar> legendre_and_derivative(int n, Scalar x) {
  Scalar p0 = 1;
  Scalar p1 = x;
  for (int k = 2; k <= n; ++k) {
    const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1)};
}
}  // namespace detail

/// Gauss-Legendre rule by Newton iteration on the Legendre recurrence.
/// Throws std::runtime_error if a root fails to converge within 100 steps.
template <std::floating_point Scalar>
QuadratureRule<Scalar> gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  constexpr int kMaxIterations = 100;
  constexpr Scalar kTolerance = Scalar(1e-15);

  QuadratureRule<Scalar> rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root; Chebyshev-type initial guess.
    Scalar x = std::cos(std::numbers::pi_v<Scalar> * (i + Scalar(0.75)) / (n + Scalar(0.5)));
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
      const auto [value, slope] = detail::legendre_and_derivative(n, x);
      const Scalar dx = value / slope;
      x -= dx;
      if (std::abs(dx) <= kTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw std::runtime_error("gauss_legendre: Newton iteration did not converge for order " +
                               std::to_string(order));
    }
    const Scalar dp = detail::legendre_and_derivative(n, x).second;
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    if (2 * i + 1 == n) x = 0;
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

}  // namespace scatpoly
