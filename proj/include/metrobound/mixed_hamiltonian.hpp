#pragma once

#include "metrobound/collective_ops.hpp"
#include "metrobound/records.hpp"
#include "metrobound/separability.hpp"

#include <optional>
#include <span>
#include <vector>

namespace metrobound {

/// H = mu J_a + nu J_b^2.
struct MixedHamiltonianParams {
  double mu = 1.0;
  double nu = 0.0;
  Axis axis_a = Axis::x();
  Axis axis_b = Axis::z();
  int n_qubits = 2;

  /// Same axis for both terms; the separable variance formulas assume a and b orthogonal.
  bool trivial() const;
};

/// Var(H) on the symmetric product state with Bloch components (alpha, beta)
/// along (a, b); requires alpha^2 + beta^2 <= 1.
double hab_symmetric_variance(double alpha, double beta, const MixedHamiltonianParams& params);

/// Var(H) on a general product state; qubit i has Bloch components
/// (alphas[i], betas[i]) along the orthogonal axes (a, b).
double hab_product_variance(std::span<const double> alphas, std::span<const double> betas,
                            const MixedHamiltonianParams& params);

struct HabOptimizerConfig {
  int angle_steps = 721;
  int radius_steps = 361;
  double refine_tol = 1e-10;
  /// Run the per-qubit product optimiser as well (N <= 8 only).
  bool cross_validate = false;
  int cross_validate_starts = 24;
  int cross_validate_max_iter = 4000;
  std::uint64_t seed = kDefaultSeed;
};

/// 4 max over the disk of hab_symmetric_variance. argmax = {alpha, beta};
/// numeric_value holds the per-qubit optimiser's value when cross-validated.
BoundReport csep_hab(const MixedHamiltonianParams& params, const HabOptimizerConfig& config = {});

/// Max of 4 hab_product_variance over independent per-qubit Bloch disks.
BoundReport csep_hab_product(const MixedHamiltonianParams& params, const HabOptimizerConfig& config = {});

OperatorMatrix hab_operator(const MixedHamiltonianParams& params, Basis basis,
                            int full_space_cap = kDefaultFullSpaceCap);

struct CentHabReport {
  double value = 0.0;
  /// (h_max - h_min)^2 in the maximal-spin sector.
  double sector_value = 0.0;
  std::optional<double> full_value;
  /// |full - sector| when the full space was diagonalised.
  std::optional<double> discrepancy;
};

/// (h_max - h_min)^2. Uses the full space for N <= full_space_cap (and records
/// the sector cross-check), the maximal-spin sector beyond.
CentHabReport cent_hab(const MixedHamiltonianParams& params, int full_space_cap = 12);

/// Extreme eigenvalues of H in the maximal-spin sector via Sturm bisection on
/// the real tridiagonal form; O(N) memory.
std::pair<double, double> hab_sector_extremes(const MixedHamiltonianParams& params);

struct HabSweepConfig {
  Axis axis_a = Axis::x();
  Axis axis_b = Axis::z();
  int full_space_cap = 12;
  double max_discrepancy = 1e-9;
  HabOptimizerConfig optimizer{};
  std::uint64_t seed = kDefaultSeed;
};

/// One sweep cell with nu = 1 - mu.
SweepRecord s_hab_record(int n_qubits, double mu, const HabSweepConfig& config = {});

/// Records (N, mu, nu = 1 - mu, C_sep, C_ent, s) for each grid cell. Throws
/// ComputationError when a full-vs-sector cross-check exceeds max_discrepancy.
std::vector<SweepRecord> s_hab_sweep(const std::vector<double>& mu_list, const std::vector<int>& n_list,
                                     const HabSweepConfig& config = {});

}  // namespace metrobound
