#include "support.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/qfi.hpp"
#include "metrobound/separability.hpp"

#include <doctest.h>

#include <cmath>

using namespace metrobound;

namespace {

QuantumState random_pure(int n, std::mt19937_64& rng) {
  return QuantumState::pure(testsupport::random_vector(Eigen::Index{1} << n, rng), Representation::full(n));
}

OperatorMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cplx(testsupport::gauss(rng), testsupport::gauss(rng));
  return OperatorMatrix(0.5 * (g + g.adjoint()), Representation::full(n));
}

}  // namespace

TEST_CASE("pure-state QFI") {
  const OperatorMatrix jz4 = build_collective(Axis::z(), 4, Basis::Full);
  CHECK(qfi_pure(ghz_state(4), jz4).value == doctest::Approx(16.0));
  CHECK(qfi_pure(product_state(ProductBloch::uniform(4, 1.0), Axis::z()), jz4).value == doctest::Approx(0.0));
  CHECK(qfi_pure(ghz_state(4), jz4).method == QfiMethod::PureVariance);
  CHECK_THROWS_AS(qfi_pure(noisy_state(ghz_state(4), 0.5), jz4), DomainError);
  CHECK_THROWS_AS(qfi_pure(ghz_state(3), jz4), DimensionMismatch);
}

TEST_CASE("general QFI agrees with 4 Var on pure states") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 4;
    const QuantumState psi = random_pure(n, rng);
    const OperatorMatrix h = (t % 2 == 0) ? random_hermitian(n, rng)
                                          : operator_power(build_collective(Axis::x(), n, Basis::Full), 1 + t % 3);
    const QuantumState rho = QuantumState::density(psi.density_matrix(), psi.repr());
    CHECK(qfi_general(rho, h).value == doctest::Approx(qfi_pure(psi, h).value).epsilon(1e-8));
    CHECK(std::abs(qfi_general(psi, h).value - qfi_pure(psi, h).value) <= 1e-8 * std::max(1.0, qfi_pure(psi, h).value));
  }
  const QuantumState sym = random_symmetric_state(6, 5);
  const OperatorMatrix jz2 = operator_power(build_collective(Axis::z(), 6, Basis::Dicke), 2);
  const QuantumState proj = QuantumState::density(sym.density_matrix(), sym.repr());
  CHECK(qfi_general(proj, jz2).value == doctest::Approx(qfi_pure(sym, jz2).value).epsilon(1e-8));
}

TEST_CASE("maximally mixed state has zero QFI") {
  const QuantumState mixed = noisy_state(ghz_state(3), 0.0);
  CHECK(qfi_general(mixed, build_collective(Axis::z(), 3, Basis::Full)).value == 0.0);
}

TEST_CASE("closed forms for the optimal-state family") {
  CHECK(qfi_phi_closed({0.5, 0.5, 0.0}, 4, 1).value == doctest::Approx(16.0));
  CHECK(qfi_phi_closed({0.25, 0.25, 0.5}, 4, 2).value == doctest::Approx(16.0));
  CHECK(qfi_phi_closed({0.25, 0.25, 0.5}, 4, 1).value == doctest::Approx(8.0));
  CHECK(qfi_noisy_closed({0.2, 0.3, 0.5}, 1.0, 6, 3).value == doctest::Approx(qfi_phi_closed({0.2, 0.3, 0.5}, 6, 3).value));
  CHECK(qfi_noisy_closed({0.2, 0.3, 0.5}, 0.0, 6, 2).value == 0.0);
  CHECK_THROWS_AS(qfi_noisy_closed({0.2, 0.3, 0.5}, 1.1, 6, 2), DomainError);
  CHECK(noisy_qfi_factor(0.5, 200) == doctest::Approx(0.5));
}

TEST_CASE("noisy closed form matches the eigendecomposition") {
  const OptimalStateParams params{0.25, 0.25, 0.5};
  const QuantumState rho = noisy_state(optimal_state(params, Axis::z(), 6), 0.9);
  const OperatorMatrix h = operator_power(build_collective(Axis::z(), 6, Basis::Full), 2);
  CHECK(qfi_general(rho, h).value == doctest::Approx(qfi_noisy_closed(params, 0.9, 6, 2).value).epsilon(1e-8));
  const QuantumState g = noisy_state(ghz_state(4), 0.8);
  CHECK(qfi_general(g, build_collective(Axis::z(), 4, Basis::Full)).value ==
        doctest::Approx(qfi_noisy_closed({0.5, 0.5, 0.0}, 0.8, 4, 1).value).epsilon(1e-8));
}

TEST_CASE("QFI properties on random inputs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const QuantumState a = random_pure(n, rng), b = random_pure(n, rng);
    const OperatorMatrix h = build_collective(Axis::from_bloch(testsupport::random_direction(rng)), n, Basis::Full);
    const double p = u(rng);
    const QuantumState mix = QuantumState::density(p * a.density_matrix() + (1.0 - p) * b.density_matrix(), a.repr());
    const double fm = qfi_general(mix, h).value;
    CHECK(fm <= p * qfi_pure(a, h).value + (1.0 - p) * qfi_pure(b, h).value + 1e-8);
    const Eigen::VectorXd ev = h.eigenvalues();
    CHECK(fm <= std::pow(ev.maxCoeff() - ev.minCoeff(), 2) + 1e-8);
    CHECK(fm >= 0.0);
  }
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 4;
    const Eigen::Index d = Eigen::Index{1} << n;
    const QuantumState a = random_pure(n, rng), b = random_pure(n, rng);
    const QuantumState rho = QuantumState::density(0.3 * a.density_matrix() + 0.7 * b.density_matrix(), a.repr());
    const OperatorMatrix h = random_hermitian(n, rng);
    const CMatrix w = testsupport::random_unitary(d, rng);
    const QuantumState rho_u = QuantumState::density(w * rho.matrix() * w.adjoint(), rho.repr());
    const OperatorMatrix h_u(w * h.entries() * w.adjoint(), h.repr());
    CHECK(qfi_general(rho_u, h_u).value == doctest::Approx(qfi_general(rho, h).value).epsilon(1e-8));
  }
}
