#pragma once

#include "metrobound/collective_ops.hpp"

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace metrobound {

enum class StateKind { PureVector, DensityMatrix };

/// Normalised pure vector or density matrix in a declared representation.
class QuantumState {
 public:
  /// Validates unit norm (1e-12).
  static QuantumState pure(CVector psi, Representation repr);
  /// Validates Hermiticity, unit trace (1e-10) and min eigenvalue >= -1e-10.
  static QuantumState density(CMatrix rho, Representation repr);

  StateKind kind() const { return std::holds_alternative<CVector>(data_) ? StateKind::PureVector : StateKind::DensityMatrix; }
  bool is_pure_vector() const { return kind() == StateKind::PureVector; }
  const CVector& vector() const;
  const CMatrix& matrix() const;
  /// |psi><psi| for pure vectors, the stored matrix otherwise.
  CMatrix density_matrix() const;
  const Representation& repr() const { return repr_; }
  Eigen::Index dim() const { return repr_.dim(); }
  int n_qubits() const { return repr_.n_qubits; }

  /// tr(rho A) (real part; A Hermitian).
  double expectation(const CMatrix& a) const;

 private:
  QuantumState(std::variant<CVector, CMatrix> data, Representation repr)
      : data_(std::move(data)), repr_(repr) {}
  std::variant<CVector, CMatrix> data_;
  Representation repr_;
};

/// Per-qubit Pauli expectations along a chosen axis; each entry in [-1, 1].
class ProductBloch {
 public:
  explicit ProductBloch(std::vector<double> alphas);
  static ProductBloch uniform(int n_qubits, double alpha) {
    return ProductBloch(std::vector<double>(static_cast<std::size_t>(n_qubits), alpha));
  }
  const std::vector<double>& alphas() const { return alphas_; }
  int size() const { return static_cast<int>(alphas_.size()); }
  double operator[](std::size_t i) const { return alphas_[i]; }

 private:
  std::vector<double> alphas_;
};

/// Weights of |a+^N>, |a-^N> and the singlet; non-negative, summing to one.
struct OptimalStateParams {
  double lambda1 = 0.5;
  double lambda2 = 0.5;
  double lambda3 = 0.0;

  /// Throws DomainError unless the weights are a probability vector (1e-12).
  void validate() const;
  /// (lambda, 1/2 - lambda, 1/2): the even-k optimal family.
  static OptimalStateParams even_family(double lambda) { return {lambda, 0.5 - lambda, 0.5}; }
};

/// Full-repr product state (x)_i [cos t_i |a+> + sin t_i |a->], cos 2t_i = alpha_i.
QuantumState product_state(const ProductBloch& bloch, const Axis& axis,
                           int full_space_cap = kDefaultFullSpaceCap);

QuantumState ghz_state(int n_qubits, int full_space_cap = kDefaultFullSpaceCap);

/// Symmetric state with m excitations (|1> count).
QuantumState dicke_state(int n_qubits, int m, Basis basis, int full_space_cap = kDefaultFullSpaceCap);

/// Canonical member of the N-qubit singlet family (N even).
QuantumState singlet_state(int n_qubits, int full_space_cap = kDefaultFullSpaceCap);

/// sqrt(l1)|a+^N> + sqrt(l2)|a-^N> + sqrt(l3)|S_N>.
QuantumState optimal_state(const OptimalStateParams& params, const Axis& axis, int n_qubits,
                           int full_space_cap = kDefaultFullSpaceCap);

/// eta |phi><phi| + (1 - eta) 1/2^N.
QuantumState noisy_state(const QuantumState& phi, double eta);

/// Haar-random pure state of the symmetric subspace, Dicke representation.
QuantumState random_symmetric_state(int n_qubits, std::uint64_t seed);
/// Same, drawing from a caller-owned generator.
QuantumState random_symmetric_state(int n_qubits, std::mt19937_64& rng);

/// Embeds a Dicke-repr pure state into the full register.
QuantumState dicke_to_full(const QuantumState& dicke, int full_space_cap = kDefaultFullSpaceCap);

}  // namespace metrobound
