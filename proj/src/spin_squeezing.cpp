#include "metrobound/spin_squeezing.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/parallel.hpp"
#include "metrobound/qfi.hpp"
#include "metrobound/separability.hpp"

#include <algorithm>
#include <cmath>

namespace metrobound {

namespace {

constexpr double kSlack = 1e-12;

bool below(double lhs, double rhs) { return lhs < rhs - kSlack * std::max(1.0, std::abs(rhs)); }
bool above(double lhs, double rhs) { return below(rhs, lhs); }

}  // namespace

SqueezingReport squeezing_from_matrices(int n_qubits, const Eigen::Matrix3d& c, const Eigen::Matrix3d& gamma) {
  if (n_qubits < 2) throw DomainError("squeezing inequalities need N >= 2");
  SqueezingReport r;
  r.n_qubits = n_qubits;
  r.c_matrix = 0.5 * (c + c.transpose());
  r.gamma_matrix = 0.5 * (gamma + gamma.transpose());
  const double n = n_qubits;
  r.x_matrix = (n - 1.0) * r.gamma_matrix + r.c_matrix;
  r.trace_gamma = r.gamma_matrix.trace();
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(r.x_matrix, Eigen::EigenvaluesOnly).eigenvalues();
  r.chi_min = ev.minCoeff();
  r.chi_max = ev.maxCoeff();
  r.violated[0] = below(r.trace_gamma, n / 2.0);
  r.violated[1] = below(r.chi_min, r.c_matrix.trace() - n / 2.0);
  r.violated[2] = above(r.chi_max, (n - 1.0) * r.trace_gamma - n * (n - 2.0) / 4.0);
  return r;
}

SqueezingReport correlation_matrices(const QuantumState& rho) {
  const int n = rho.n_qubits();
  if (n < 2) throw DomainError("squeezing inequalities need N >= 2");
  const Representation& repr = rho.repr();
  const std::array<CMatrix, 3> j{build_collective(Axis::x(), n, repr.basis, n).entries(),
                                 build_collective(Axis::y(), n, repr.basis, n).entries(),
                                 build_collective(Axis::z(), n, repr.basis, n).entries()};
  Eigen::Matrix3d c, gamma;
  Eigen::Vector3d mean;
  for (int a = 0; a < 3; ++a) mean[a] = rho.expectation(j[a]);
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const CMatrix anti = 0.5 * (j[a] * j[b] + j[b] * j[a]);
      c(a, b) = c(b, a) = rho.expectation(anti);
      gamma(a, b) = gamma(b, a) = c(a, b) - mean[a] * mean[b];
    }
  }
  SqueezingReport r = squeezing_from_matrices(n, c, gamma);
  r.violated = {false, false, false};
  return r;
}

SqueezingReport squeezing_classify(const QuantumState& rho) {
  const SqueezingReport m = correlation_matrices(rho);
  return squeezing_from_matrices(m.n_qubits, m.c_matrix, m.gamma_matrix);
}

SqueezingReport squeezing_noisy_closed(int n_qubits, double eta, double lambda1, double lambda2) {
  if (n_qubits < 3) throw DomainError("closed-form squeezing matrices need N >= 3");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  OptimalStateParams{lambda1, lambda2, 1.0 - lambda1 - lambda2}.validate();
  const double n = n_qubits;
  const double s = lambda1 + lambda2;
  const double d = lambda1 - lambda2;
  const double f = n / 4.0 * eta * s + n / 4.0 * (1.0 - eta);
  const double czz = n * n / 4.0 * eta * s + n / 4.0 * (1.0 - eta);
  const double gzz = n * n / 4.0 * (eta * s - eta * eta * d * d) + n / 4.0 * (1.0 - eta);
  const Eigen::Matrix3d c = Eigen::Vector3d(f, f, czz).asDiagonal();
  const Eigen::Matrix3d gamma = Eigen::Vector3d(f, f, gzz).asDiagonal();
  return squeezing_from_matrices(n_qubits, c, gamma);
}

std::string DetectionPoint::region() const {
  if (detected[0] && detected[1]) return "both";
  if (detected[1]) return "only_k2";
  if (detected[0]) return "only_k1";
  return "neither";
}

std::size_t detection_point_count(const DetectionSweepConfig& config) {
  if (config.mode == SweepMode::Random) return config.samples;
  if (config.grid_lambda < 2 || config.grid_eta < 2) throw DomainError("grids need at least two points per axis");
  return static_cast<std::size_t>(config.grid_lambda) * static_cast<std::size_t>(config.grid_eta);
}

DetectionPoint evaluate_detection_point(int n_qubits, double lambda1, double lambda2, double eta) {
  const OptimalStateParams params{lambda1, lambda2, std::max(0.0, 1.0 - lambda1 - lambda2)};
  if (n_qubits % 2 == 1 && params.lambda3 > 0.0) throw DomainError("singlet weight requires even N");
  DetectionPoint p;
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.eta = eta;
  for (int k = 1; k <= 3; ++k) {
    p.qfi[k - 1] = qfi_noisy_closed(params, eta, n_qubits, k).value;
    p.csep[k - 1] = csep_analytic_value(n_qubits, k);
    p.detected[k - 1] = above(p.qfi[k - 1], p.csep[k - 1]);
  }
  p.squeezing = squeezing_noisy_closed(n_qubits, eta, lambda1, lambda2).violated;
  return p;
}

DetectionPoint detection_point(const DetectionSweepConfig& config, std::size_t index) {
  double l1 = 0.0, l2 = 0.0, eta = 0.0;
  if (config.mode == SweepMode::Random) {
    auto rng = make_stream(config.seed, index);
    double u = uniform01(rng), v = uniform01(rng);
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    l1 = u;
    l2 = v;
    eta = uniform01(rng);
  } else {
    const auto gl = static_cast<std::size_t>(config.grid_lambda);
    const double lambda = static_cast<double>(index % gl) / (config.grid_lambda - 1);
    eta = static_cast<double>(index / gl) / (config.grid_eta - 1);
    if (config.mode == SweepMode::GridLambda2Zero) {
      l1 = lambda;
    } else {
      l1 = l2 = 0.5 * lambda;
    }
  }
  return evaluate_detection_point(config.n_qubits, l1, l2, eta);
}

SweepRecord detection_record(const DetectionPoint& p, int n_qubits, std::uint64_t seed) {
  SweepRecord r = SweepRecord::with_provenance(seed);
  r.set("N", n_qubits).set("lambda1", p.lambda1).set("lambda2", p.lambda2).set("eta", p.eta);
  for (int k = 1; k <= 3; ++k) {
    const std::string s = std::to_string(k);
    r.set("qfi_k" + s, p.qfi[k - 1]).set("csep_k" + s, p.csep[k - 1]).set("detected_k" + s, p.detected[k - 1]);
  }
  r.set("ss1", p.squeezing[0]).set("ss2", p.squeezing[1]).set("ss3", p.squeezing[2]);
  r.set("ss_detected", p.squeezing_detected());
  r.set("region", FieldValue(p.region()));
  return r;
}

std::vector<SweepRecord> detection_region_sweep(const DetectionSweepConfig& config, std::size_t begin,
                                                std::size_t end) {
  end = std::min(end, detection_point_count(config));
  if (begin >= end) return {};
  std::vector<SweepRecord> out(end - begin);
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = detection_record(detection_point(config, begin + i), config.n_qubits, config.seed);
  });
  return out;
}

std::vector<SweepRecord> detection_region_sweep(const DetectionSweepConfig& config) {
  return detection_region_sweep(config, 0, detection_point_count(config));
}

RegionSummary detection_region_summary(const DetectionSweepConfig& config) {
  const std::size_t total = detection_point_count(config);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(total, 256));
  std::vector<RegionSummary> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) {
      const DetectionPoint p = detection_point(config, i);
      const std::string reg = p.region();
      if (partial[c].counts[reg]++ == 0) partial[c].witnesses.emplace(reg, p);
    }
  });
  RegionSummary out;
  for (const auto& s : partial) {
    for (const auto& [reg, count] : s.counts) out.counts[reg] += count;
    for (const auto& [reg, p] : s.witnesses) out.witnesses.emplace(reg, p);
  }
  return out;
}

}  // namespace metrobound
