#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>

namespace metrobound {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kDefaultFullSpaceCap = 14;

/// Measurement / rotation direction: a labelled Cartesian axis or any unit Bloch vector.
class Axis {
 public:
  static Axis x() { return Axis({1.0, 0.0, 0.0}, 'x'); }
  static Axis y() { return Axis({0.0, 1.0, 0.0}, 'y'); }
  static Axis z() { return Axis({0.0, 0.0, 1.0}, 'z'); }
  static Axis from_label(char label);
  /// Throws DomainError unless |n| = 1 within 1e-12.
  static Axis from_bloch(const Eigen::Vector3d& n);

  const Eigen::Vector3d& direction() const { return dir_; }
  std::optional<char> label() const { return label_; }
  std::string name() const;

  /// 2x2 matrix n . sigma.
  Eigen::Matrix2cd pauli() const;
  /// Eigenvectors of n . sigma with eigenvalues +1 and -1. Labelled axes use the
  /// standard computational / Hadamard / circular bases.
  CVector plus_state() const;
  CVector minus_state() const;

 private:
  Axis(Eigen::Vector3d dir, std::optional<char> label) : dir_(std::move(dir)), label_(label) {}
  Eigen::Vector3d dir_;
  std::optional<char> label_;
};

enum class Basis { Full, Dicke };

struct Representation {
  Basis basis = Basis::Full;
  int n_qubits = 1;

  static Representation full(int n) { return {Basis::Full, n}; }
  static Representation dicke(int n) { return {Basis::Dicke, n}; }

  Eigen::Index dim() const;
  bool operator==(const Representation&) const = default;
};

std::string to_string(const Representation& r);

/// Throws CapacityError when a Full representation of n qubits exceeds the cap.
void check_capacity(const Representation& r, int full_space_cap = kDefaultFullSpaceCap);

/// Dense Hermitian operator in a declared representation. Immutable once built.
class OperatorMatrix {
 public:
  /// Validates dimension against the representation and Hermiticity (1e-10).
  OperatorMatrix(CMatrix entries, Representation repr);

  const CMatrix& entries() const { return m_; }
  const Representation& repr() const { return repr_; }
  Eigen::Index dim() const { return m_.rows(); }
  int n_qubits() const { return repr_.n_qubits; }

  /// Sorted eigenvalues.
  Eigen::VectorXd eigenvalues() const;

  OperatorMatrix operator+(const OperatorMatrix& other) const;
  OperatorMatrix operator*(double s) const;

 private:
  CMatrix m_;
  Representation repr_;
};

/// J_a = (1/2) sum_i n.sigma^(i) in either the 2^N or the (N+1)-dim Dicke representation.
OperatorMatrix build_collective(const Axis& axis, int n_qubits, Basis basis,
                                int full_space_cap = kDefaultFullSpaceCap);

/// op^k by repeated squaring; re-symmetrised to stay exactly Hermitian.
OperatorMatrix operator_power(const OperatorMatrix& op, int k);

/// Single-site operator embedded at `site` (0 = most significant qubit) of an
/// n-qubit register.
CMatrix embed_site(const Eigen::Matrix2cd& single, int site, int n_qubits);

/// Max-abs entry difference between J_a^k (matrix power) and the expansion of
/// J_a^k into sums of distinct-site Pauli strings, k = 1..6.
double pauli_expansion_check(const Axis& axis, int n_qubits, int k,
                             int full_space_cap = kDefaultFullSpaceCap);

/// Coefficients of the distinct-site expansion J^k = 2^-k sum_r a_{k,r} E_r, where
/// E_r = sum over ordered r-tuples of distinct sites of sigma...sigma. Only
/// r = k, k-2, ... are non-zero.
double pauli_expansion_coefficient(int n_qubits, int k, int r);

/// Isometry (2^N x (N+1)) whose columns are the Dicke states |D_{N,m}> in the
/// full register, m = number of |1> excitations.
CMatrix dicke_embedding(int n_qubits, int full_space_cap = kDefaultFullSpaceCap);

}  // namespace metrobound
