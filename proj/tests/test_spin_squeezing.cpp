#include "support.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/spin_squeezing.hpp"

#include <doctest.h>

#include <cmath>

using namespace metrobound;

namespace {

void check_consistent(const SqueezingReport& r) {
  const double n = r.n_qubits;
  CHECK((r.x_matrix - ((n - 1.0) * r.gamma_matrix + r.c_matrix)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(r.chi_min <= r.chi_max);
}

}  // namespace

TEST_CASE("coherent state saturates the trace inequality") {
  const SqueezingReport r = squeezing_classify(product_state(ProductBloch::uniform(5, 1.0), Axis::z()));
  CHECK(r.gamma_matrix(0, 0) == doctest::Approx(1.25));
  CHECK(r.gamma_matrix(1, 1) == doctest::Approx(1.25));
  CHECK(std::abs(r.gamma_matrix(2, 2)) < 1e-12);
  CHECK(r.trace_gamma == doctest::Approx(2.5));
  CHECK_FALSE(r.any_violated());
  check_consistent(r);
}

TEST_CASE("two-qubit singlet violates the trace inequality") {
  const SqueezingReport r = squeezing_classify(singlet_state(2));
  CHECK(r.c_matrix.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.gamma_matrix.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.violated[0]);
  check_consistent(r);
}

TEST_CASE("GHZ is not detected") {
  const SqueezingReport r = squeezing_classify(ghz_state(6));
  CHECK_FALSE(r.any_violated());
  check_consistent(r);
}

TEST_CASE("optimal even-k state violates the third inequality") {
  for (double lambda : {0.0, 0.25, 0.5}) {
    const SqueezingReport r = squeezing_classify(optimal_state(OptimalStateParams::even_family(lambda), Axis::z(), 6));
    CHECK(r.violated[2]);
    check_consistent(r);
  }
}

TEST_CASE("noisy threshold of the third inequality") {
  for (int n : {6, 10}) {
    const double eta_c = 2.0 * (n - 1.0) / (3.0 * n - 4.0);
    for (double lambda : {0.0, 0.1, 0.25, 0.5}) {
      CHECK(squeezing_noisy_closed(n, eta_c + 1e-3, lambda, 0.5 - lambda).violated[2]);
      CHECK_FALSE(squeezing_noisy_closed(n, eta_c - 1e-3, lambda, 0.5 - lambda).violated[2]);
    }
  }
  const double eta_c = 2.0 * 5.0 / 14.0;
  const QuantumState phi = optimal_state(OptimalStateParams::even_family(0.25), Axis::z(), 6);
  CHECK(squeezing_classify(noisy_state(phi, eta_c + 1e-3)).violated[2]);
  CHECK_FALSE(squeezing_classify(noisy_state(phi, eta_c - 1e-3)).violated[2]);
}

TEST_CASE("closed-form matrices equal the direct computation") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n : {4, 6}) {
    for (int t = 0; t < 50; ++t) {
      double l1 = u(rng), l2 = u(rng);
      if (l1 + l2 > 1.0) {
        l1 = 1.0 - l1;
        l2 = 1.0 - l2;
      }
      const double eta = u(rng);
      const QuantumState rho = noisy_state(optimal_state({l1, l2, 1.0 - l1 - l2}, Axis::z(), n), eta);
      const SqueezingReport direct = squeezing_classify(rho);
      const SqueezingReport closed = squeezing_noisy_closed(n, eta, l1, l2);
      CHECK((direct.c_matrix - closed.c_matrix).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((direct.gamma_matrix - closed.gamma_matrix).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(direct.violated == closed.violated);
      check_consistent(direct);
    }
  }
}

TEST_CASE("separable product states never violate the inequalities") {
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 5;
    CVector psi = CVector::Ones(1);
    for (int i = 0; i < n; ++i) {
      const CVector q = Axis::from_bloch(testsupport::random_direction(rng)).plus_state();
      CVector next(psi.size() * 2);
      for (Eigen::Index j = 0; j < psi.size(); ++j) {
        next[2 * j] = psi[j] * q[0];
        next[2 * j + 1] = psi[j] * q[1];
      }
      psi = next;
    }
    const SqueezingReport rep = correlation_matrices(QuantumState::pure(psi / psi.norm(), Representation::full(n)));
    const double nn = n;
    CHECK(rep.trace_gamma >= nn / 2.0 - 1e-9);
    CHECK(rep.chi_min >= rep.c_matrix.trace() - nn / 2.0 - 1e-9);
    CHECK(rep.chi_max <= (nn - 1.0) * rep.trace_gamma - nn * (nn - 2.0) / 4.0 + 1e-9);
  }
}

TEST_CASE("Dicke basis gives the same matrices") {
  const QuantumState d = dicke_state(5, 2, Basis::Dicke);
  const SqueezingReport a = correlation_matrices(d);
  const SqueezingReport b = correlation_matrices(dicke_to_full(d));
  CHECK((a.c_matrix - b.c_matrix).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(squeezing_classify(d).any_violated());
}

TEST_CASE("detection points") {
  const DetectionPoint ghz = evaluate_detection_point(6, 0.5, 0.5, 1.0);
  CHECK(ghz.detected[0]);
  CHECK(ghz.qfi[0] == doctest::Approx(36.0));
  const DetectionPoint mixed = evaluate_detection_point(6, 0.2, 0.3, 0.0);
  for (int k = 0; k < 3; ++k) {
    CHECK_FALSE(mixed.detected[k]);
    CHECK_FALSE(mixed.squeezing[k]);
  }
  CHECK(mixed.region() == "neither");
  CHECK_THROWS_AS(evaluate_detection_point(5, 0.2, 0.3, 0.5), DomainError);
  CHECK_NOTHROW(evaluate_detection_point(5, 0.2, 0.8, 0.5));
}

TEST_CASE("detection sweeps") {
  DetectionSweepConfig cfg;
  cfg.n_qubits = 6;
  cfg.samples = 20000;
  const RegionSummary s = detection_region_summary(cfg);
  std::size_t total = 0;
  for (const auto& [name, count] : s.counts) total += count;
  CHECK(total == cfg.samples);
  REQUIRE(s.witnesses.count("only_k2") == 1);
  const DetectionPoint w = s.witnesses.at("only_k2");
  CHECK(w.qfi[1] > w.csep[1]);
  CHECK(w.qfi[0] <= 6.0);

  const auto rows = detection_region_sweep(cfg, 100, 110);
  CHECK(rows.size() == 10);
  CHECK(rows[3] == detection_record(detection_point(cfg, 103), 6, cfg.seed));
  CHECK(detection_region_sweep(cfg, 100, 110) == rows);

  DetectionSweepConfig grid = cfg;
  grid.mode = SweepMode::GridEqualSplit;
  grid.grid_lambda = 11;
  grid.grid_eta = 5;
  CHECK(detection_point_count(grid) == 55);
  const DetectionPoint last = detection_point(grid, 54);
  CHECK(last.lambda1 == doctest::Approx(0.5));
  CHECK(last.lambda2 == doctest::Approx(0.5));
  CHECK(last.eta == doctest::Approx(1.0));
}
