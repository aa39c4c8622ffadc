#pragma once

#include "metrobound/collective_ops.hpp"
#include "metrobound/states.hpp"

namespace metrobound {

enum class QfiMethod { Eigen, PureVariance, ClosedFormPhi, ClosedFormNoisy };

struct QfiResult {
  double value = 0.0;
  QfiMethod method = QfiMethod::Eigen;
};

/// 2 sum_{k,l} (l_k - l_l)^2 / (l_k + l_l) |<k|H|l>|^2 over the eigenbasis of rho.
/// Pairs with l_k + l_l <= 1e-12 * dim are dropped; negative eigenvalues are
/// clamped to zero first.
QfiResult qfi_general(const QuantumState& rho, const OperatorMatrix& h);

/// 4 Var(H) on a pure vector; throws DomainError for a density matrix.
QfiResult qfi_pure(const QuantumState& psi, const OperatorMatrix& h);

/// Var(H) = <H^2> - <H>^2 on a pure vector.
double variance(const CVector& psi, const CMatrix& h);

/// F_Q(|Phi>, J^k) for the optimal-state family.
QfiResult qfi_phi_closed(const OptimalStateParams& params, int n_qubits, int k);

/// eta^2 2^(N-1) / (1 + eta (2^(N-1) - 1)) times the pure-state value.
QfiResult qfi_noisy_closed(const OptimalStateParams& params, double eta, int n_qubits, int k);

/// Prefactor eta^2 2^(N-1) / (1 + eta (2^(N-1) - 1)); stable for large N.
double noisy_qfi_factor(double eta, int n_qubits);

}  // namespace metrobound
