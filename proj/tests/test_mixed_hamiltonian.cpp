#include "support.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/mixed_hamiltonian.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace metrobound;

namespace {

MixedHamiltonianParams params(double mu, double nu, int n) { return {mu, nu, Axis::x(), Axis::z(), n}; }

// Product state qubit by qubit with Bloch vector (alpha along x, beta along z, rest along y).
CVector product_xz(const std::vector<double>& a, const std::vector<double>& b) {
  CVector psi = CVector::Ones(1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ry = std::sqrt(std::max(0.0, 1.0 - a[i] * a[i] - b[i] * b[i]));
    const Eigen::Vector3d n(a[i], ry, b[i]);
    const CVector q = Axis::from_bloch(n.normalized()).plus_state();
    CVector next(psi.size() * 2);
    for (Eigen::Index j = 0; j < psi.size(); ++j) {
      next[2 * j] = psi[j] * q[0];
      next[2 * j + 1] = psi[j] * q[1];
    }
    psi = next;
  }
  return psi;
}

}  // namespace

TEST_CASE("symmetric variance examples") {
  for (int n : {3, 5, 8}) {
    CHECK(hab_symmetric_variance(0.0, 0.3, params(1, 0, n)) == doctest::Approx(n / 4.0));
    CHECK(hab_symmetric_variance(1.0, 0.0, params(0.7, 0.0, n)) == doctest::Approx(0.0));
  }
  CHECK(hab_symmetric_variance(0.2, std::sqrt(1.0 / 3.0), params(0, 1, 3)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(hab_symmetric_variance(0.8, 0.8, params(1, 1, 3)), DomainError);
  for (double b : {-0.5, 0.0, 0.4}) {
    CHECK(hab_symmetric_variance(0.3, b, params(1, 0, 6)) == doctest::Approx(hab_symmetric_variance(0.3, 0.9, params(1, 0, 6))));
  }
  for (double a : {-0.5, 0.0, 0.4}) {
    CHECK(hab_symmetric_variance(a, 0.3, params(0, 1, 6)) == doctest::Approx(hab_symmetric_variance(0.9, 0.3, params(0, 1, 6))));
  }
}

TEST_CASE("product-state variance formula matches the full space") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 5;
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double r = std::sqrt(u(rng)), phi = 2.0 * std::numbers::pi * u(rng);
      a[i] = r * std::cos(phi);
      b[i] = r * std::sin(phi);
    }
    const MixedHamiltonianParams p = params(u(rng), u(rng), n);
    const CMatrix h = hab_operator(p, Basis::Full).entries();
    CHECK(hab_product_variance(a, b, p) == doctest::Approx(testsupport::var(product_xz(a, b), h)).epsilon(1e-10));
    const std::vector<double> as(static_cast<std::size_t>(n), a[0]), bs(static_cast<std::size_t>(n), b[0]);
    CHECK(hab_product_variance(as, bs, p) == doctest::Approx(hab_symmetric_variance(a[0], b[0], p)).epsilon(1e-10));
  }
}

TEST_CASE("separable bound of the mixed generator") {
  for (int n : {3, 4, 7}) {
    CHECK(csep_hab(params(0, 1, n)).value == doctest::Approx(csep_analytic_value(n, 2)).epsilon(1e-9));
    CHECK(csep_hab(params(1, 0, n)).value == doctest::Approx(n).epsilon(1e-9));
  }
  HabOptimizerConfig cfg;
  cfg.cross_validate = true;
  const BoundReport r = csep_hab(params(0.5, 0.5, 6), cfg);
  REQUIRE(r.numeric_value.has_value());
  CHECK(r.value >= *r.numeric_value - 1e-6);
  CHECK_THROWS_AS(csep_hab_product(params(0.5, 0.5, 9)), CapacityError);
  CHECK_THROWS_AS(csep_hab(MixedHamiltonianParams{1, 1, Axis::x(), Axis::from_bloch(Eigen::Vector3d(1, 0, 1).normalized()), 4}),
                  DomainError);
  CHECK(MixedHamiltonianParams{1, 1, Axis::z(), Axis::z(), 4}.trivial());
}

TEST_CASE("entanglement bound of the mixed generator") {
  for (int n : {3, 4, 6}) {
    CHECK(cent_hab(params(1, 0, n)).value == doctest::Approx(n * n).epsilon(1e-10));
  }
  CHECK(cent_hab(params(0, 1, 6)).value == doctest::Approx(std::pow(6.0, 4) / 16.0).epsilon(1e-10));
  const CentHabReport r = cent_hab(params(0.5, 0.5, 4));
  REQUIRE(r.discrepancy.has_value());
  CHECK(*r.discrepancy < 1e-9);
  CHECK(cent_hab(params(0.5, 0.5, 40)).value == doctest::Approx(cent_hab(params(0.5, 0.5, 40), 0).value));
  CHECK_FALSE(cent_hab(params(0.5, 0.5, 40)).full_value.has_value());
  // y axis for b gives a complex full-space operator.
  const CentHabReport ry = cent_hab({0.3, 0.7, Axis::x(), Axis::y(), 5});
  CHECK(*ry.discrepancy < 1e-9);
  const auto [lo, hi] = hab_sector_extremes(params(0, 1, 5));
  CHECK(lo == doctest::Approx(0.25));
  CHECK(hi == doctest::Approx(6.25));
}

TEST_CASE("mixed-generator sweep") {
  HabSweepConfig cfg;
  cfg.full_space_cap = 8;
  const std::vector<double> mus{0.0, 0.4, 0.6, 0.7, 0.8, 0.9, 0.99, 1.0};
  const auto rows = s_hab_sweep(mus, {5, 10, 60}, cfg);
  CHECK(rows.size() == 24);
  for (const auto& r : rows) {
    const int n = static_cast<int>(r.number("N"));
    CHECK(r.number("csep") >= 0.0);
    CHECK(r.number("csep") <= r.number("cent") + 1e-9);
    if (r.number("mu") == 1.0) CHECK(r.number("s") == doctest::Approx(n).epsilon(1e-9));
    if (r.number("mu") == 0.0) CHECK(r.number("s") == doctest::Approx(s2_closed(n)).epsilon(1e-9));
  }
}

TEST_CASE("separable bound is convex in mu at N = 10") {
  std::vector<double> v;
  for (int i = 0; i <= 100; ++i) {
    const double mu = 0.01 * i;
    v.push_back(csep_hab(params(mu, 1.0 - mu, 10)).value);
  }
  CHECK(v.front() == doctest::Approx(csep_analytic_value(10, 2)).epsilon(1e-9));
  CHECK(v.back() == doctest::Approx(10.0).epsilon(1e-9));
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    CHECK(v[i - 1] + v[i + 1] - 2.0 * v[i] >= -1e-7 * v[i]);
  }
}
