#pragma once

#include "metrobound/records.hpp"
#include "metrobound/rng.hpp"
#include "metrobound/states.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace metrobound {

struct SqueezingReport {
  int n_qubits = 0;
  Eigen::Matrix3d c_matrix = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d gamma_matrix = Eigen::Matrix3d::Zero();
  /// (N - 1) Gamma + C.
  Eigen::Matrix3d x_matrix = Eigen::Matrix3d::Zero();
  double trace_gamma = 0.0;
  double chi_min = 0.0;
  double chi_max = 0.0;
  /// One flag per inequality; true means the separable bound is broken.
  std::array<bool, 3> violated{false, false, false};

  bool any_violated() const { return violated[0] || violated[1] || violated[2]; }
};

/// First and second collective moments of rho along x, y, z (either basis).
SqueezingReport correlation_matrices(const QuantumState& rho);

/// Builds the report from given C and Gamma (symmetrised) and applies the three tests.
SqueezingReport squeezing_from_matrices(int n_qubits, const Eigen::Matrix3d& c, const Eigen::Matrix3d& gamma);

/// correlation_matrices followed by the three separable-state tests.
SqueezingReport squeezing_classify(const QuantumState& rho);

/// Diagonal C and Gamma of the noisy optimal-state mixture along z, N >= 3.
SqueezingReport squeezing_noisy_closed(int n_qubits, double eta, double lambda1, double lambda2);

enum class SweepMode {
  /// Uniform (lambda1, lambda2) on the simplex lambda1 + lambda2 <= 1, uniform eta.
  Random,
  /// lambda1 = lambda, lambda2 = 0 on a (lambda, eta) grid.
  GridLambda2Zero,
  /// lambda1 = lambda2 = lambda / 2 on a (lambda, eta) grid.
  GridEqualSplit,
};

struct DetectionSweepConfig {
  int n_qubits = 6;
  SweepMode mode = SweepMode::Random;
  std::size_t samples = 10000;
  int grid_lambda = 201;
  int grid_eta = 201;
  std::uint64_t seed = kDefaultSeed;
};

struct DetectionPoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double eta = 0.0;
  /// QFI of the mixture under J_z^k for k = 1, 2, 3.
  std::array<double, 3> qfi{};
  std::array<double, 3> csep{};
  std::array<bool, 3> detected{};
  std::array<bool, 3> squeezing{};

  bool squeezing_detected() const { return squeezing[0] || squeezing[1] || squeezing[2]; }
  /// both, only_k2, only_k1 or neither (from the k = 1 and k = 2 flags).
  std::string region() const;
};

std::size_t detection_point_count(const DetectionSweepConfig& config);

/// Point `index` of the sweep; random points draw from stream (seed, index).
DetectionPoint detection_point(const DetectionSweepConfig& config, std::size_t index);

/// Closed-form QFI and squeezing for one parameter triple. N must be even
/// unless lambda1 + lambda2 = 1.
DetectionPoint evaluate_detection_point(int n_qubits, double lambda1, double lambda2, double eta);

SweepRecord detection_record(const DetectionPoint& point, int n_qubits, std::uint64_t seed);

/// Records for points [begin, end) in index order.
std::vector<SweepRecord> detection_region_sweep(const DetectionSweepConfig& config, std::size_t begin,
                                                std::size_t end);
/// Records for the whole sweep.
std::vector<SweepRecord> detection_region_sweep(const DetectionSweepConfig& config);

/// Points per region() value over the whole sweep, plus one example point each.
struct RegionSummary {
  std::map<std::string, std::size_t> counts;
  std::map<std::string, DetectionPoint> witnesses;
};
RegionSummary detection_region_summary(const DetectionSweepConfig& config);

}  // namespace metrobound
