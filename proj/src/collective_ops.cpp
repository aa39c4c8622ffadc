#include "metrobound/collective_ops.hpp"

#include "metrobound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace metrobound {

Axis Axis::from_label(char label) {
  switch (label) {
    case 'x': case 'X': return x();
    case 'y': case 'Y': return y();
    case 'z': case 'Z': return z();
    default: throw DomainError(std::string("unknown axis label '") + label + "'");
  }
}

Axis Axis::from_bloch(const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > 1e-12) {
    throw DomainError("axis Bloch vector must have unit norm");
  }
  return Axis(n, std::nullopt);
}

std::string Axis::name() const {
  if (label_) return std::string(1, *label_);
  return "(" + std::to_string(dir_.x()) + "," + std::to_string(dir_.y()) + "," +
         std::to_string(dir_.z()) + ")";
}

Eigen::Matrix2cd Axis::pauli() const {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd s;
  s << dir_.z(), dir_.x() - i * dir_.y(),
       dir_.x() + i * dir_.y(), -dir_.z();
  return s;
}

CVector Axis::plus_state() const {
  CVector v(2);
  const double r = 1.0 / std::sqrt(2.0);
  if (label_ == 'z') { v << 1.0, 0.0; return v; }
  if (label_ == 'x') { v << r, r; return v; }
  if (label_ == 'y') { v << r, cplx(0.0, r); return v; }
  const double theta = std::acos(std::clamp(dir_.z(), -1.0, 1.0));
  const double phi = std::atan2(dir_.y(), dir_.x());
  v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return v;
}

CVector Axis::minus_state() const {
  CVector v(2);
  const double r = 1.0 / std::sqrt(2.0);
  if (label_ == 'z') { v << 0.0, 1.0; return v; }
  if (label_ == 'x') { v << r, -r; return v; }
  if (label_ == 'y') { v << r, cplx(0.0, -r); return v; }
  const double theta = std::acos(std::clamp(dir_.z(), -1.0, 1.0));
  const double phi = std::atan2(dir_.y(), dir_.x());
  v << -std::polar(std::sin(theta / 2), -phi), std::cos(theta / 2);
  return v;
}

Eigen::Index Representation::dim() const {
  return basis == Basis::Full ? (Eigen::Index{1} << n_qubits) : Eigen::Index{n_qubits} + 1;
}

std::string to_string(const Representation& r) {
  return (r.basis == Basis::Full ? "Full(" : "Dicke(") + std::to_string(r.n_qubits) + ")";
}

void check_capacity(const Representation& r, int full_space_cap) {
  if (r.n_qubits < 1) throw DomainError("number of qubits must be >= 1");
  if (r.basis == Basis::Full && r.n_qubits > full_space_cap) {
    throw CapacityError("N = " + std::to_string(r.n_qubits) +
                        " exceeds the full-space cap of " + std::to_string(full_space_cap));
  }
}

OperatorMatrix::OperatorMatrix(CMatrix entries, Representation repr)
    : m_(std::move(entries)), repr_(repr) {
  if (m_.rows() != m_.cols() || m_.rows() != repr_.dim()) {
    throw DimensionMismatch("operator dimension does not match " + to_string(repr_));
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DomainError("operator is not Hermitian");
  }
}

Eigen::VectorXd OperatorMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
  if (!(repr_ == other.repr_)) throw DimensionMismatch("adding operators in different spaces");
  return OperatorMatrix(m_ + other.m_, repr_);
}

OperatorMatrix OperatorMatrix::operator*(double s) const { return OperatorMatrix(m_ * s, repr_); }

CMatrix embed_site(const Eigen::Matrix2cd& single, int site, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const int shift = n_qubits - 1 - site;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int in_bit = static_cast<int>((col >> shift) & 1);
    for (int out_bit = 0; out_bit < 2; ++out_bit) {
      const cplx a = single(out_bit, in_bit);
      if (a == cplx(0.0)) continue;
      const Eigen::Index row = (col & ~(Eigen::Index{1} << shift)) | (Eigen::Index{out_bit} << shift);
      out(row, col) += a;
    }
  }
  return out;
}

namespace {

CMatrix dicke_collective(const Eigen::Vector3d& n, int n_qubits) {
  const Eigen::Index dim = n_qubits + 1;
  const double j = n_qubits / 2.0;
  CMatrix jz = CMatrix::Zero(dim, dim);
  CMatrix jplus = CMatrix::Zero(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m) {
    const double mz = j - static_cast<double>(m);
    jz(m, m) = mz;
    // J+ raises the J_z eigenvalue, i.e. lowers the excitation count m.
    if (m > 0) jplus(m - 1, m) = std::sqrt((j - mz) * (j + mz + 1.0));
  }
  const CMatrix jminus = jplus.adjoint();
  const CMatrix jx = 0.5 * (jplus + jminus);
  const CMatrix jy = cplx(0.0, -0.5) * (jplus - jminus);
  return n.x() * jx + n.y() * jy + n.z() * jz;
}

}  // namespace

OperatorMatrix build_collective(const Axis& axis, int n_qubits, Basis basis, int full_space_cap) {
  const Representation repr{basis, n_qubits};
  check_capacity(repr, full_space_cap);
  if (basis == Basis::Dicke) {
    return OperatorMatrix(dicke_collective(axis.direction(), n_qubits), repr);
  }
  const Eigen::Matrix2cd half_sigma = 0.5 * axis.pauli();
  CMatrix total = CMatrix::Zero(repr.dim(), repr.dim());
  for (int site = 0; site < n_qubits; ++site) total += embed_site(half_sigma, site, n_qubits);
  return OperatorMatrix(std::move(total), repr);
}

namespace {

template <class M>
M matrix_power(M base, int k) {
  M result;
  bool have = false;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) {
      result = have ? M(result * base) : base;
      have = true;
    }
    if (e > 1) base = base * base;
  }
  return result;
}

}  // namespace

OperatorMatrix operator_power(const OperatorMatrix& op, int k) {
  if (k < 1) throw DomainError("operator power requires k >= 1");
  CMatrix result;
  if (op.entries().imag().cwiseAbs().maxCoeff() == 0.0) {
    result = matrix_power<Eigen::MatrixXd>(op.entries().real(), k).cast<cplx>();
  } else {
    result = matrix_power<CMatrix>(op.entries(), k);
  }
  // Powers of a Hermitian matrix are Hermitian; remove rounding asymmetry.
  CMatrix sym = 0.5 * (result + result.adjoint());
  return OperatorMatrix(std::move(sym), op.repr());
}

double pauli_expansion_coefficient(int n_qubits, int k, int r) {
  const double n = n_qubits;
  if (k < 1 || k > 6) throw DomainError("Pauli expansion available for 1 <= k <= 6 only");
  if (r < 0 || r > k || (k - r) % 2 != 0) return 0.0;
  switch (k) {
    case 1: return 1.0;
    case 2: return r == 2 ? 1.0 : n;
    case 3: return r == 3 ? 1.0 : 3.0 * n - 2.0;
    case 4:
      if (r == 4) return 1.0;
      if (r == 2) return 2.0 * (3.0 * n - 4.0);
      return (3.0 * n - 2.0) * n;
    case 5:
      if (r == 5) return 1.0;
      if (r == 3) return 10.0 * (n - 2.0);
      return 15.0 * n * (n - 2.0) + 16.0;
    default:
      if (r == 6) return 1.0;
      if (r == 4) return 5.0 * (3.0 * n - 8.0);
      if (r == 2) return 15.0 * n * (3.0 * n - 10.0) + 136.0;
      return n * (15.0 * n * (n - 2.0) + 16.0);
  }
}

double pauli_expansion_check(const Axis& axis, int n_qubits, int k, int full_space_cap) {
  if (k < 1 || k > 6) throw DomainError("Pauli expansion available for 1 <= k <= 6 only");
  check_capacity(Representation::full(n_qubits), full_space_cap);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;

  // Ordered distinct-site sums E_r = r! e_r(sigma^(1), ..., sigma^(N)); the site
  // operators commute, so the elementary symmetric recurrence applies.
  std::vector<CMatrix> elem(static_cast<std::size_t>(k) + 1, CMatrix::Zero(dim, dim));
  elem[0] = CMatrix::Identity(dim, dim);
  for (int site = 0; site < n_qubits; ++site) {
    const CMatrix s = embed_site(axis.pauli(), site, n_qubits);
    for (int r = std::min(k, site + 1); r >= 1; --r) elem[r] += s * elem[r - 1];
  }
  CMatrix expansion = CMatrix::Zero(dim, dim);
  double factorial = 1.0;
  for (int r = 0; r <= k; ++r) {
    if (r > 0) factorial *= r;
    const double a = pauli_expansion_coefficient(n_qubits, k, r);
    if (a != 0.0) expansion += (a * factorial) * elem[r];
  }
  expansion /= std::pow(2.0, k);

  const OperatorMatrix power =
      operator_power(build_collective(axis, n_qubits, Basis::Full, full_space_cap), k);
  return (power.entries() - expansion).cwiseAbs().maxCoeff();
}

CMatrix dicke_embedding(int n_qubits, int full_space_cap) {
  check_capacity(Representation::full(n_qubits), full_space_cap);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  CMatrix iso = CMatrix::Zero(dim, n_qubits + 1);
  std::vector<double> count(static_cast<std::size_t>(n_qubits) + 1, 0.0);
  for (Eigen::Index b = 0; b < dim; ++b) count[__builtin_popcountll(static_cast<unsigned long long>(b))] += 1.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int m = __builtin_popcountll(static_cast<unsigned long long>(b));
    iso(b, m) = 1.0 / std::sqrt(count[m]);
  }
  return iso;
}

}  // namespace metrobound
