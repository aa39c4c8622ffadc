#include "metrobound/states.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/rng.hpp"

#include <cmath>
#include <numbers>

namespace metrobound {

QuantumState QuantumState::pure(CVector psi, Representation repr) {
  if (psi.size() != repr.dim()) throw DimensionMismatch("state vector does not match " + to_string(repr));
  if (std::abs(psi.norm() - 1.0) > 1e-12) throw DomainError("pure state must have unit norm");
  return QuantumState(std::move(psi), repr);
}

QuantumState QuantumState::density(CMatrix rho, Representation repr) {
  if (rho.rows() != repr.dim() || rho.cols() != repr.dim()) {
    throw DimensionMismatch("density matrix does not match " + to_string(repr));
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10) throw DomainError("density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw DomainError("density matrix is not positive semidefinite");
  return QuantumState(std::move(rho), repr);
}

const CVector& QuantumState::vector() const {
  if (!is_pure_vector()) throw DomainError("state is not a pure vector");
  return std::get<CVector>(data_);
}

const CMatrix& QuantumState::matrix() const {
  if (is_pure_vector()) throw DomainError("state is a pure vector");
  return std::get<CMatrix>(data_);
}

CMatrix QuantumState::density_matrix() const {
  if (is_pure_vector()) {
    const CVector& v = std::get<CVector>(data_);
    return v * v.adjoint();
  }
  return std::get<CMatrix>(data_);
}

double QuantumState::expectation(const CMatrix& a) const {
  if (a.rows() != dim()) throw DimensionMismatch("operator and state dimensions differ");
  if (is_pure_vector()) {
    const CVector& v = std::get<CVector>(data_);
    return v.dot(a * v).real();
  }
  return (std::get<CMatrix>(data_) * a).trace().real();
}

ProductBloch::ProductBloch(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw DomainError("product Bloch vector must be non-empty");
  for (double a : alphas_) {
    if (!(a >= -1.0 && a <= 1.0)) throw DomainError("Bloch component outside [-1, 1]");
  }
}

void OptimalStateParams::validate() const {
  if (lambda1 < 0.0 || lambda2 < 0.0 || lambda3 < 0.0) throw DomainError("weights must be non-negative");
  if (std::abs(lambda1 + lambda2 + lambda3 - 1.0) > 1e-12) throw DomainError("weights must sum to one");
}

namespace {

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CVector power_state(const CVector& single, int n) {
  CVector v = single;
  for (int i = 1; i < n; ++i) v = kron_vec(v, single);
  return v;
}

CVector singlet_vector(int n_qubits) {
  const int half = n_qubits / 2;
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  std::vector<double> fact(static_cast<std::size_t>(half) + 1, 1.0);
  for (int i = 1; i <= half; ++i) fact[i] = fact[i - 1] * i;
  CVector v = CVector::Zero(dim);
  const unsigned long long first_half_mask = ((1ULL << half) - 1ULL) << (n_qubits - half);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto bits = static_cast<unsigned long long>(b);
    if (__builtin_popcountll(bits) != half) continue;
    const int ones_first = __builtin_popcountll(bits & first_half_mask);
    const int z = half - ones_first;
    const double sign = ((half - z) % 2 == 0) ? 1.0 : -1.0;
    v(b) = sign * fact[z] * fact[half - z];
  }
  return v / (fact[half] * std::sqrt(half + 1.0));
}

}  // namespace

QuantumState product_state(const ProductBloch& bloch, const Axis& axis, int full_space_cap) {
  const Representation repr = Representation::full(bloch.size());
  check_capacity(repr, full_space_cap);
  const CVector plus = axis.plus_state();
  const CVector minus = axis.minus_state();
  CVector v = CVector::Ones(1);
  for (double a : bloch.alphas()) {
    const double c = std::sqrt(std::max(0.0, (1.0 + a) / 2.0));
    const double s = std::sqrt(std::max(0.0, (1.0 - a) / 2.0));
    CVector q = c * plus + s * minus;
    v = kron_vec(v, q);
  }
  v.normalize();
  return QuantumState::pure(std::move(v), repr);
}

QuantumState ghz_state(int n_qubits, int full_space_cap) {
  const Representation repr = Representation::full(n_qubits);
  check_capacity(repr, full_space_cap);
  CVector v = CVector::Zero(repr.dim());
  v(0) = v(repr.dim() - 1) = 1.0 / std::numbers::sqrt2;
  return QuantumState::pure(std::move(v), repr);
}

QuantumState dicke_state(int n_qubits, int m, Basis basis, int full_space_cap) {
  if (m < 0 || m > n_qubits) throw DomainError("Dicke excitation number out of range");
  const Representation repr{basis, n_qubits};
  check_capacity(repr, full_space_cap);
  if (basis == Basis::Dicke) {
    CVector v = CVector::Zero(repr.dim());
    v(m) = 1.0;
    return QuantumState::pure(std::move(v), repr);
  }
  return QuantumState::pure(dicke_embedding(n_qubits, full_space_cap).col(m), repr);
}

QuantumState singlet_state(int n_qubits, int full_space_cap) {
  if (n_qubits < 2 || n_qubits % 2 != 0) throw DomainError("singlet states exist only for even N");
  const Representation repr = Representation::full(n_qubits);
  check_capacity(repr, full_space_cap);
  return QuantumState::pure(singlet_vector(n_qubits), repr);
}

QuantumState optimal_state(const OptimalStateParams& params, const Axis& axis, int n_qubits,
                           int full_space_cap) {
  params.validate();
  const Representation repr = Representation::full(n_qubits);
  check_capacity(repr, full_space_cap);
  if (params.lambda3 > 0.0 && n_qubits % 2 != 0) {
    throw DomainError("singlet component requires even N");
  }
  CVector v = std::sqrt(params.lambda1) * power_state(axis.plus_state(), n_qubits) +
              std::sqrt(params.lambda2) * power_state(axis.minus_state(), n_qubits);
  if (params.lambda3 > 0.0) v += std::sqrt(params.lambda3) * singlet_vector(n_qubits);
  v.normalize();
  return QuantumState::pure(std::move(v), repr);
}

QuantumState noisy_state(const QuantumState& phi, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  if (!phi.is_pure_vector()) throw DomainError("noisy_state expects a pure state");
  if (phi.repr().basis != Basis::Full) throw DomainError("noisy_state expects a Full-repr state");
  const Eigen::Index dim = phi.dim();
  CMatrix rho = eta * (phi.vector() * phi.vector().adjoint());
  rho.diagonal().array() += (1.0 - eta) / static_cast<double>(dim);
  return QuantumState::density(std::move(rho), phi.repr());
}

QuantumState random_symmetric_state(int n_qubits, std::mt19937_64& rng) {
  if (n_qubits < 1) throw DomainError("number of qubits must be >= 1");
  const Representation repr = Representation::dicke(n_qubits);
  CVector v(repr.dim());
  // Box-Muller on 53-bit uniforms: standard complex Gaussian per amplitude.
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    v(i) = cplx(r * std::cos(t), r * std::sin(t));
  }
  v.normalize();
  return QuantumState::pure(std::move(v), repr);
}

QuantumState random_symmetric_state(int n_qubits, std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  return random_symmetric_state(n_qubits, rng);
}

QuantumState dicke_to_full(const QuantumState& dicke, int full_space_cap) {
  if (dicke.repr().basis != Basis::Dicke) throw DomainError("expected a Dicke-repr state");
  const int n = dicke.n_qubits();
  return QuantumState::pure(dicke_embedding(n, full_space_cap) * dicke.vector(), Representation::full(n));
}

}  // namespace metrobound
