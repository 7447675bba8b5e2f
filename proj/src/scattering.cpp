#include "scatpoly/scattering.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace scatpoly {

namespace {

constexpr std::size_t kSignValidationPoints = 20;
constexpr double kSignValidationTolerance = 1e-12;

Rational sign_rational(int exponent) { return (exponent % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

BivariatePoly rodrigues(const PQIndex& idx) {
  const int p = idx.p();
  const int q = idx.q();
  BivariatePoly inner = pow(BivariatePoly::boundary_factor(), static_cast<unsigned>(p + q - 1));
  for (int k = 0; k < p; ++k) inner = wirtinger_dz(inner);
  for (int k = 0; k < q; ++k) inner = wirtinger_dzbar(inner);

  Rational prefactor = sign_rational(p) / Rational(mpz_class(q) * factorial(p + q - 1));
  prefactor.canonicalize();
  return scale(mul(BivariatePoly::boundary_factor(), inner), prefactor);
}

BivariatePoly radial_sum(const PQIndex& idx) {
  const int q = idx.q();
  const int m = idx.m();
  const int nu = idx.nu();
  // Leading monomial z^{m+nu-p+1} zbar^{m+nu-q+1}; one exponent is zero, the other m.
  const int a0 = m + nu - idx.p() + 1;
  const int b0 = m + nu - q + 1;

  BivariatePoly::TermMap terms;
  for (int j = 0; j <= nu; ++j) {
    Rational c(factorial(j + nu + m + 1), factorial(j) * factorial(j + m) * factorial(nu - j));
    c.canonicalize();
    c *= sign_rational(q + nu + 1 + j);
    c /= q;
    terms.emplace(Monomial{a0 + j, b0 + j}, ComplexRational(c));
  }
  return mul(BivariatePoly::boundary_factor(), BivariatePoly(std::move(terms)));
}

RadialForm jacobi_form(const PQIndex& idx) {
  RadialForm form;
  form.m = idx.m();
  form.nu = idx.nu();
  form.angular_frequency = idx.angular_frequency();
  form.printed_sign = ((idx.q() + idx.max()) % 2 == 0) ? 1 : -1;
  const double magnitude = static_cast<double>(idx.max()) / idx.q();

  const BivariatePoly reference = rodrigues(idx);
  const auto points = sample_disk_points(kSignValidationPoints, 0x5eed0000UL + 1000UL * idx.p() + idx.q());
  for (int sign : {form.printed_sign, -form.printed_sign}) {
    form.coeff = sign * magnitude;
    if (relative_discrepancy(form, reference, points) <= kSignValidationTolerance) return form;
  }
  throw ValidationFailure("jacobi_form: no sign reproduces the Rodrigues polynomial for " + idx.to_string());
}

BivariatePoly apply_modified_laplacian(const BivariatePoly& poly) {
  return mul(BivariatePoly::boundary_factor(), wirtinger_dz(wirtinger_dzbar(poly)));
}

bool is_eigenfunction(const BivariatePoly& poly, const Rational& eigenvalue) {
  return add(apply_modified_laplacian(poly), scale(poly, eigenvalue)).is_zero();
}

bool eigencheck(const PQIndex& idx) { return is_eigenfunction(rodrigues(idx), Rational(idx.eigenvalue())); }

std::vector<PQIndex> eigenspace_indices(long k) {
  if (k < 1) throw std::invalid_argument("eigenspace_indices: k must be >= 1");
  std::vector<PQIndex> out;
  for (long p = 1; p <= k; ++p) {
    if (k % p == 0) out.emplace_back(static_cast<int>(p), static_cast<int>(k / p));
  }
  return out;
}

std::vector<PQIndex> basis_indices(int max_sum) {
  if (max_sum < 2) throw std::invalid_argument("basis_indices: max_sum must be >= 2");
  std::vector<PQIndex> out;
  for (int p = 1; p < max_sum; ++p) {
    for (int q = 1; p + q <= max_sum; ++q) out.emplace_back(p, q);
  }
  return out;
}

double norm_sq(const PQIndex& idx) {
  return std::numbers::pi * idx.p() / (static_cast<double>(idx.q()) * idx.sum());
}

double relative_discrepancy(const RadialForm& form, const BivariatePoly& reference,
                            const std::vector<std::complex<double>>& points) {
  double max_diff = 0.0;
  double max_ref = 0.0;
  for (const auto& z : points) {
    const ComplexRational exact_z(rational_from_double(z.real()), rational_from_double(z.imag()));
    const std::complex<double> ref = eval_exact(reference, exact_z).to_complex();
    max_diff = std::max(max_diff, std::abs(form(z) - ref));
    max_ref = std::max(max_ref, std::abs(ref));
  }
  return max_ref > 0.0 ? max_diff / max_ref : max_diff;
}

std::vector<std::complex<double>> sample_disk_points(std::size_t count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<std::complex<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // sqrt for area-uniform sampling
    out.push_back(std::polar(std::sqrt(radius(rng)), angle(rng)));
  }
  return out;
}

}  // namespace scatpoly
