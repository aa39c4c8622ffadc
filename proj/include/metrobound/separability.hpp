#pragma once

#include "metrobound/records.hpp"
#include "metrobound/rng.hpp"
#include "metrobound/states.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace metrobound {

enum class BoundMethod { Analytic, NumericSymmetric, NumericFull };

struct OptimizerConfig {
  int n_starts = 200;
  double tol = 1e-9;
  int max_iter = 5000;
  std::uint64_t seed = kDefaultSeed;
};

struct BoundReport {
  double value = 0.0;
  BoundMethod method = BoundMethod::Analytic;
  std::vector<double> argmax;
  std::optional<double> hessian_max_eig;
  int n_starts = 0;
  bool converged = true;
  /// Attached numeric run when an analytic bound was cross-checked.
  std::optional<double> numeric_value;
};

/// Var(J_a^k) on the product state with Bloch components `bloch` (not 4x).
double product_variance(const ProductBloch& bloch, int k);

/// Same polynomial without the [-1, 1] check; used for finite differences.
double product_variance_poly(std::span<const double> alphas, int k);

/// Writes d Var / d alpha_i into `grad` and returns Var.
double product_variance_with_gradient(std::span<const double> alphas, int k, std::span<double> grad);

/// Exact probability distribution of J_a on the product state; entry m is the
/// probability of outcome N/2 - m.
std::vector<double> product_distribution(std::span<const double> alphas);

/// Closed-form C_sep(J^k) for k in {1, 2, 3}; N >= 3 for k >= 2.
BoundReport csep_analytic(int n_qubits, int k);
double csep_analytic_value(int n_qubits, int k);

/// Multi-start projected-gradient maximisation of 4 Var over [-1, 1]^N plus a
/// symmetric-ansatz start.
BoundReport csep_numeric(int n_qubits, int k, const OptimizerConfig& config = {});

/// Max of 4 Var(J^k) over symmetric product states (golden section on a common alpha).
struct SymmetricOptimum {
  double value = 0.0;
  double alpha = 0.0;
};
SymmetricOptimum csep_symmetric(int n_qubits, int k);

/// Central finite-difference Hessian of `f` at `x`.
Eigen::MatrixXd finite_difference_hessian(const std::function<double(std::span<const double>)>& f,
                                          std::span<const double> x, double step);

struct HessianCertificate {
  int n_qubits = 0;
  double q = 0.0;
  double q_prime = 0.0;
  double alpha_star = 0.0;
  /// Analytic spectrum of -(q - q')1 - q' J_N, ascending.
  Eigen::VectorXd eigenvalues;
  /// Spectrum of the finite-difference Hessian of Var(J^2) at the symmetric argmax.
  Eigen::VectorXd fd_eigenvalues;
  double max_abs_difference = 0.0;
  bool negative_semidefinite = false;
};

/// Certificate that the symmetric k = 2 stationary point is a local maximum.
HessianCertificate hessian_certificate_k2(int n_qubits);

/// Max eigenvalue of the finite-difference Hessian of Var(J^k) at (alpha, ..., alpha).
double symmetric_hessian_max_eig(int n_qubits, int k, double alpha);

/// C_ent(J^k) = (h_max - h_min)^2.
double cent(int n_qubits, int k);

/// Usefulness ratio C_ent / C_sep from the closed forms (k in {1, 2, 3}).
double s_ratio(int n_qubits, int k);
/// Closed forms for s_2 and s_3 (cross-checked by s_ratio).
double s2_closed(int n_qubits);
double s3_closed(int n_qubits);

struct NumericRatio {
  double value = 0.0;
  bool converged = true;
};
/// C_ent / C_sep with a numeric C_sep; any k.
NumericRatio s_ratio_numeric(int n_qubits, int k, const OptimizerConfig& config = {});

struct STableConfig {
  /// Numeric C_sep even where a closed form exists (reported as csep_numeric).
  bool numeric_cross_check = false;
  OptimizerConfig optimizer{};
};

/// One record per (N, k) with C_sep, C_ent and s_k. Each row whose k + 2 is also
/// in the table carries s_gt_s_k_plus_2; inconclusive rows mark converged = false.
std::vector<SweepRecord> s_table(int n_lo, int n_hi, int k_lo, int k_hi, const STableConfig& config = {});

}  // namespace metrobound
