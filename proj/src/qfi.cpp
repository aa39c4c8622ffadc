#include "metrobound/qfi.hpp"

#include "metrobound/errors.hpp"

#include <cmath>

namespace metrobound {

namespace {

void require_same_space(const QuantumState& s, const OperatorMatrix& h) {
  if (!(s.repr() == h.repr())) {
    throw DimensionMismatch("state in " + to_string(s.repr()) + " but operator in " + to_string(h.repr()));
  }
}

double clamp_nonnegative(double v) { return v < 0.0 && v > -1e-9 ? 0.0 : v; }

}  // namespace

double variance(const CVector& psi, const CMatrix& h) {
  const CVector hpsi = h * psi;
  const double mean = psi.dot(hpsi).real();
  return hpsi.squaredNorm() - mean * mean;
}

QfiResult qfi_general(const QuantumState& rho, const OperatorMatrix& h) {
  require_same_space(rho, h);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.density_matrix());
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  const CMatrix& vecs = es.eigenvectors();
  const CMatrix hk = vecs.adjoint() * h.entries() * vecs;
  const double cut = 1e-12 * static_cast<double>(rho.dim());
  double sum = 0.0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    for (Eigen::Index l = k + 1; l < lam.size(); ++l) {
      const double s = lam(k) + lam(l);
      if (s <= cut) continue;
      const double d = lam(k) - lam(l);
      sum += d * d / s * std::norm(hk(k, l));
    }
  }
  // Each unordered pair appears twice in the double sum.
  return {clamp_nonnegative(4.0 * sum), QfiMethod::Eigen};
}

QfiResult qfi_pure(const QuantumState& psi, const OperatorMatrix& h) {
  require_same_space(psi, h);
  if (!psi.is_pure_vector()) throw DomainError("qfi_pure requires a pure state vector");
  return {clamp_nonnegative(4.0 * variance(psi.vector(), h.entries())), QfiMethod::PureVariance};
}

QfiResult qfi_phi_closed(const OptimalStateParams& params, int n_qubits, int k) {
  params.validate();
  if (k < 1) throw DomainError("k must be >= 1");
  const double n = n_qubits;
  const double pref = std::pow(n, 2.0 * k) / std::pow(4.0, k - 1);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const double a = params.lambda1 + sign * params.lambda2;
  return {clamp_nonnegative(pref * (params.lambda1 + params.lambda2 - a * a)), QfiMethod::ClosedFormPhi};
}

double noisy_qfi_factor(double eta, int n_qubits) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  if (eta == 0.0) return 0.0;
  // Divide through by 2^(N-1): eta^2 / (eta + (1 - eta) 2^(1-N)).
  const double inv = std::ldexp(1.0, 1 - n_qubits);
  return eta * eta / (eta + (1.0 - eta) * inv);
}

QfiResult qfi_noisy_closed(const OptimalStateParams& params, double eta, int n_qubits, int k) {
  const double pure = qfi_phi_closed(params, n_qubits, k).value;
  return {noisy_qfi_factor(eta, n_qubits) * pure, QfiMethod::ClosedFormNoisy};
}

}  // namespace metrobound
