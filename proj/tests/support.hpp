#pragma once

#include "metrobound/collective_ops.hpp"
#include "metrobound/rng.hpp"
#include "metrobound/states.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace testsupport {

using metrobound::CMatrix;
using metrobound::CVector;
using metrobound::cplx;

inline double gauss(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(rng);
}

inline CVector random_vector(Eigen::Index dim, std::mt19937_64& rng) {
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  return v / v.norm();
}

/// Haar-ish random unitary via QR of a complex Gaussian matrix.
inline CMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  return q;
}

inline CMatrix kron_power(const CMatrix& u, int n) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    CMatrix next(out.rows() * u.rows(), out.cols() * u.cols());
    for (Eigen::Index a = 0; a < out.rows(); ++a)
      for (Eigen::Index b = 0; b < out.cols(); ++b)
        next.block(a * u.rows(), b * u.cols(), u.rows(), u.cols()) = out(a, b) * u;
    out = std::move(next);
  }
  return out;
}

inline Eigen::Vector3d random_direction(std::mt19937_64& rng) {
  Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
  return v.normalized();
}

inline double var(const CVector& psi, const CMatrix& h) {
  const cplx m1 = psi.dot(h * psi);
  const cplx m2 = (h * psi).squaredNorm();
  return m2.real() - m1.real() * m1.real();
}

}  // namespace testsupport
