#pragma once

#include "metrobound/collective_ops.hpp"
#include "metrobound/records.hpp"
#include "metrobound/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace metrobound {

using Rational = boost::multiprecision::cpp_rational;

/// Largest N for which tau is also evaluated by the direct sum.
inline constexpr int kTauDirectLimit = 20000;

/// B_0..B_n with B_1 = +1/2.
std::vector<Rational> bernoulli_plus(int n);

/// tau_{N,k} = sum_{m=0}^N (N/2 - m)^k by direct summation.
Rational tau_direct(int n_qubits, int k);
/// Same sum through Faulhaber's formula.
Rational tau_faulhaber(int n_qubits, int k);
/// Direct sum cross-checked against Faulhaber (exact); Faulhaber alone above
/// kTauDirectLimit. Throws ComputationError on disagreement.
Rational tau(int n_qubits, int k);
double tau_value(int n_qubits, int k);

/// Haar average of F_Q(psi, J^k) over symmetric states, exact.
Rational avg_qfi_exact(int n_qubits, int k);
/// As a double; for k in {1, 2, 3} also checked against the closed forms.
double avg_qfi_analytic(int n_qubits, int k);
/// Closed forms, k in {1, 2, 3}.
Rational avg_qfi_closed(int n_qubits, int k);

struct AverageQfiResult {
  std::optional<double> analytic;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = kDefaultSeed;

  /// |mean - analytic| <= sigmas * stderr (true when no analytic value).
  bool consistent(double sigmas = 4.0) const;
};

struct MonteCarloConfig {
  std::int64_t n_samples = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t batch_size = 1000;
  Axis axis = Axis::z();
};

/// Mean and standard error of 4 Var(J^k) over Haar-random symmetric states
/// (Dicke representation). Deterministic for a given seed and batch size.
AverageQfiResult avg_qfi_mc(int n_qubits, int k, const MonteCarloConfig& config = {});

/// Per-sample values of 4 Var(J^k), in sample order.
std::vector<double> qfi_samples(int n_qubits, int k, const MonteCarloConfig& config);

/// Haar average QFI over C_sep, from the closed forms (k in {1, 2, 3}).
double t_ratio(int n_qubits, int k);

/// 1 - exp[-(N + 1) eps^2 / (4096 (N/2)^(4k))], eps = avg QFI - C_sep; 0 when eps <= 0.
double concentration_confidence(int n_qubits, int k);

}  // namespace metrobound
