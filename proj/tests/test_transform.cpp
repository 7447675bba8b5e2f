#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "scatpoly/transform.hpp"

using namespace scatpoly;

namespace {

const std::complex<double> kI(0.0, 1.0);

DiskFunction from_poly(const BivariatePoly& p) {
  return [p](double r, double theta) { return eval(p, std::polar(r, theta)); };
}

double max_coefficient_error(const ExpansionTable& table, const ExpansionTable::Map& expected) {
  double worst = 0.0;
  for (const auto& [idx, c] : table.coefficients()) {
    auto it = expected.find(idx);
    const std::complex<double> want = it == expected.end() ? std::complex<double>{} : it->second;
    worst = std::max(worst, std::abs(c - want));
  }
  return worst;
}

// Smooth, non-polynomial, zero on the unit circle.
std::vector<std::pair<const char*, DiskFunction>> smooth_targets() {
  return {
      {"(1-r^2) exp(x)", [](double r, double t) { return std::complex<double>((1 - r * r) * std::exp(r * std::cos(t))); }},
      {"(1-r^2) cos(3 r^2)", [](double r, double) { return std::complex<double>((1 - r * r) * std::cos(3 * r * r)); }},
      {"(1-r^2) / (2 - x)", [](double r, double t) { return std::complex<double>((1 - r * r) / (2 - r * std::cos(t))); }},
      {"sin(pi r^2)", [](double r, double) { return std::complex<double>(std::sin(std::numbers::pi * r * r)); }},
      {"(1-r^2) z exp(i y)",
       [](double r, double t) { return (1 - r * r) * std::polar(r, t) * std::exp(kI * (r * std::sin(t))); }},
  };
}

}  // namespace

TEST_CASE("expand examples") {
  SUBCASE("a basis function expands to a unit coefficient") {
    const ExpansionTable t = expand(from_poly(rodrigues({2, 3})), 8);
    CHECK(t.truncation() == 8);
    CHECK(t.coefficients().size() == basis_indices(8).size());
    CHECK(max_coefficient_error(t, {{{2, 3}, 1.0}}) < 1e-10);
  }

  SUBCASE("linear combinations") {
    const BivariatePoly f = scale(rodrigues({2, 3}), ComplexRational(0, -2)) + rodrigues({1, 1});
    const ExpansionTable t = expand(from_poly(f), 6);
    CHECK(max_coefficient_error(t, {{{2, 3}, -2.0 * kI}, {{1, 1}, 1.0}}) < 1e-10);
  }

  SUBCASE("a radial function only touches p = q") {
    // (1 - z zbar)^2 = 2/3 phi^(1,1) + 1/3 phi^(2,2)
    const DiskFunction bump = [](double r, double) { return std::complex<double>((1 - r * r) * (1 - r * r)); };
    const ExpansionTable t = expand(bump, 8);
    CHECK(max_coefficient_error(t, {{{1, 1}, 2.0 / 3.0}, {{2, 2}, 1.0 / 3.0}}) < 1e-12);
  }

  CHECK_THROWS_AS(expand(from_poly(rodrigues({1, 1})), 1), std::invalid_argument);
}

TEST_CASE("ExpansionTable bounds") {
  ExpansionTable t(4);
  t.set({2, 2}, 1.0);
  CHECK(t.at({2, 2}) == std::complex<double>(1.0));
  CHECK(t.at({1, 1}) == std::complex<double>(0.0));
  CHECK_THROWS_AS(t.set({3, 2}, 1.0), std::out_of_range);
}

TEST_CASE("reconstruct") {
  ExpansionTable t(2);
  t.set({1, 1}, 1.0);
  const GridSample g = reconstruct(t, {4, 6});
  CHECK(g.values.rows() == 4);
  CHECK(g.values.cols() == 6);
  for (Eigen::Index i = 0; i < g.values.rows(); ++i) {
    const double r = g.radial_nodes[i];
    CHECK(r == doctest::Approx(i / 4.0));
    for (Eigen::Index j = 0; j < g.values.cols(); ++j) CHECK(std::abs(g.values(i, j) - (1 - r * r)) < 1e-15);
  }

  SUBCASE("round trip of a basis function") {
    const BivariatePoly phi = rodrigues({3, 2});
    const GridSpec spec{12, 20};
    const GridSample back = reconstruct(expand(from_poly(phi), 8), spec);
    const GridSample direct = sample(from_poly(phi), spec);
    CHECK((back.values - direct.values).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("solve_weighted_poisson examples") {
  const ExpansionTable u23 = solve_weighted_poisson(from_poly(rodrigues({2, 3})), 8);
  CHECK(max_coefficient_error(u23, {{{2, 3}, 1.0 / 6.0}}) < 1e-11);

  const ExpansionTable u11 = solve_weighted_poisson(from_poly(rodrigues({1, 1})), 6);
  CHECK(max_coefficient_error(u11, {{{1, 1}, 1.0}}) < 1e-11);

  SUBCASE("grid residual of -L u - f") {
    const BivariatePoly f = scale(rodrigues({1, 2}), 3) + rodrigues({2, 2});
    const ExpansionTable u = solve_weighted_poisson(from_poly(f), 8);
    double worst = 0.0;
    for (const auto& z : sample_disk_points(200, 77)) {
      std::complex<double> lu{0.0, 0.0};
      for (const auto& [idx, c] : u.coefficients()) lu -= c * eval(apply_modified_laplacian(rodrigues(idx)), z);
      worst = std::max(worst, std::abs(lu - eval(f, z)));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("exact solver residual is zero") {
  const ExactTable f_table{{{1, 2}, ComplexRational(3)}, {{2, 2}, ComplexRational(1)},
                           {{4, 3}, ComplexRational(Rational(1, 5), Rational(-2))}};
  const BivariatePoly f = synthesize_exact(f_table);
  const BivariatePoly u = synthesize_exact(divide_by_eigenvalues(f_table));
  CHECK((scale(apply_modified_laplacian(u), -1) - f).is_zero());
  CHECK(divide_by_eigenvalues(f_table).at({4, 3}) == ComplexRational(Rational(1, 60), Rational(-1, 6)));
}

TEST_CASE("boundary_value_check") {
  CHECK(boundary_value_check(ExpansionTable(4), 64) == 0.0);
  ExpansionTable t(6);
  t.set({1, 1}, 1.0);
  t.set({2, 3}, {0.5, -1.5});
  t.set({5, 1}, 7.0);
  CHECK(boundary_value_check(t, 360) < 1e-12);
  CHECK_THROWS_AS(boundary_value_check(t, 0), std::invalid_argument);
}

TEST_CASE("random tables vanish on the circle") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> coeff;
  for (int trial = 0; trial < 5; ++trial) {
    ExpansionTable t(12);
    for (const auto& idx : basis_indices(12)) t.set(idx, {coeff(rng), coeff(rng)});
    CHECK(boundary_value_check(t, 256) < 1e-12);
  }
}

TEST_CASE("Parseval identity on finite combinations") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> coeff;
  ExpansionTable t(7);
  for (const auto& idx : basis_indices(7)) t.set(idx, {coeff(rng), coeff(rng)});
  const Synthesizer synth(t);
  const DiskFunction f = [&](double r, double theta) { return synth(r, theta); };
  double energy = 0.0;
  for (const auto& [idx, c] : t.coefficients()) energy += std::norm(c) * norm_sq(idx);
  const double norm = weighted_l2_residual(f, ExpansionTable(7));
  CHECK(norm * norm == doctest::Approx(energy).epsilon(1e-10));

  SUBCASE("expanding a partial sum returns it") {
    const ExpansionTable again = expand(f, 7);
    CHECK(max_coefficient_error(again, t.coefficients()) < 1e-10);
    CHECK(weighted_l2_residual(f, again) < 1e-9);
  }
}

TEST_CASE("weighted residual decreases with truncation on smooth targets") {
  for (const auto& [name, f] : smooth_targets()) {
    CAPTURE(name);
    CHECK(std::abs(f(1.0, 0.7)) < 1e-15);
    double previous = weighted_l2_residual(f, ExpansionTable(2));
    for (int trunc : {6, 10, 14}) {
      const double residual = weighted_l2_residual(f, expand(f, trunc));
      CHECK(residual < previous);
      previous = residual;
    }
  }
}
