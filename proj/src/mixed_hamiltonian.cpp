#include "metrobound/mixed_hamiltonian.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace metrobound {

bool MixedHamiltonianParams::trivial() const {
  return (axis_a.direction() - axis_b.direction()).norm() < 1e-12 ||
         (axis_a.direction() + axis_b.direction()).norm() < 1e-12;
}

double hab_symmetric_variance(double alpha, double beta, const MixedHamiltonianParams& p) {
  if (alpha * alpha + beta * beta > 1.0 + 1e-12) throw DomainError("alpha^2 + beta^2 must not exceed 1");
  const double n = p.n_qubits;
  return n / 8.0 *
         (2.0 * (1.0 - alpha * alpha) * p.mu * p.mu - 4.0 * alpha * beta * beta * p.mu * p.nu * (n - 1.0) +
          (1.0 - beta) * (1.0 + beta) * p.nu * p.nu * (n - 1.0) * (beta * beta * (2.0 * n - 3.0) + 1.0));
}

double hab_product_variance(std::span<const double> alphas, std::span<const double> betas,
                            const MixedHamiltonianParams& p) {
  if (alphas.size() != betas.size()) throw DimensionMismatch("alpha and beta lengths differ");
  const auto n = static_cast<double>(alphas.size());
  const auto dist = product_distribution(betas);
  double b2 = 0.0, b4 = 0.0;
  for (std::size_t m = 0; m < dist.size(); ++m) {
    const double x = 0.5 * n - static_cast<double>(m);
    b2 += dist[m] * x * x;
    b4 += dist[m] * x * x * x * x;
  }
  double sa = 0.0, sa2 = 0.0, sb = 0.0, sb2 = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    sa += alphas[i];
    sa2 += alphas[i] * alphas[i];
    sb += betas[i];
    sb2 += betas[i] * betas[i];
  }
  const double mean_a = 0.5 * sa;
  const double a2 = 0.25 * (n + sa * sa - sa2);
  // <{A, B^2}>: only site-disjoint b-pairs and the identity part of B^2 survive,
  // since sigma_a and sigma_b anticommute on a shared site.
  double anti = 0.25 * n * sa;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double rest = sb - betas[i];
    const double rest2 = sb2 - betas[i] * betas[i];
    anti += 0.25 * alphas[i] * (rest * rest - rest2);
  }
  const double mean = p.mu * mean_a + p.nu * b2;
  const double second = p.mu * p.mu * a2 + p.nu * p.nu * b4 + p.mu * p.nu * anti;
  return second - mean * mean;
}

namespace {

std::array<double, 2> project_disk(std::array<double, 2> v) {
  const double r = std::hypot(v[0], v[1]);
  if (r > 1.0) {
    v[0] /= r;
    v[1] /= r;
  }
  return v;
}

// Nelder-Mead maximisation in the plane; points are projected onto the unit disk.
std::array<double, 2> nelder_mead_disk(const std::function<double(double, double)>& f,
                                       std::array<double, 2> start, double scale, double tol) {
  auto eval = [&](const std::array<double, 2>& v) {
    const auto q = project_disk(v);
    return f(q[0], q[1]);
  };
  std::array<std::array<double, 2>, 3> s{start, {start[0] + scale, start[1]}, {start[0], start[1] + scale}};
  std::array<double, 3> fv{eval(s[0]), eval(s[1]), eval(s[2])};
  for (int iter = 0; iter < 5000; ++iter) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] > fv[b]; });
    const auto best = s[idx[0]], mid = s[idx[1]], worst = s[idx[2]];
    const double fb = fv[idx[0]], fm = fv[idx[1]], fw = fv[idx[2]];
    const double size = std::max(std::hypot(mid[0] - best[0], mid[1] - best[1]),
                                 std::hypot(worst[0] - best[0], worst[1] - best[1]));
    if (size < tol && std::abs(fb - fw) <= tol * std::max(1.0, std::abs(fb))) break;
    const std::array<double, 2> c{0.5 * (best[0] + mid[0]), 0.5 * (best[1] + mid[1])};
    auto along = [&](double t) { return std::array<double, 2>{c[0] + t * (worst[0] - c[0]), c[1] + t * (worst[1] - c[1])}; };
    const auto r = along(-1.0);
    const double fr = eval(r);
    auto replace = [&](const std::array<double, 2>& v, double fvv) {
      s[idx[2]] = v;
      fv[idx[2]] = fvv;
    };
    if (fr > fb) {
      const auto e = along(-2.0);
      const double fe = eval(e);
      fe > fr ? replace(e, fe) : replace(r, fr);
    } else if (fr > fm) {
      replace(r, fr);
    } else {
      const auto k = fr > fw ? along(-0.5) : along(0.5);
      const double fk = eval(k);
      if (fk > std::max(fr, fw)) {
        replace(k, fk);
      } else {
        for (int j : {idx[1], idx[2]}) {
          s[j] = {best[0] + 0.5 * (s[j][0] - best[0]), best[1] + 0.5 * (s[j][1] - best[1])};
          fv[j] = eval(s[j]);
        }
      }
    }
  }
  const int b = static_cast<int>(std::max_element(fv.begin(), fv.end()) - fv.begin());
  return project_disk(s[b]);
}

void require_orthogonal(const MixedHamiltonianParams& p) {
  if (std::abs(p.axis_a.direction().dot(p.axis_b.direction())) > 1e-12) {
    throw DomainError("separable variance of mu J_a + nu J_b^2 implemented for orthogonal a, b");
  }
}

}  // namespace

BoundReport csep_hab(const MixedHamiltonianParams& params, const HabOptimizerConfig& config) {
  require_orthogonal(params);
  if (params.n_qubits < 1) throw DomainError("N must be >= 1");
  auto f = [&](double a, double b) { return 4.0 * hab_symmetric_variance(a, b, params); };
  double best = -1.0;
  std::array<double, 2> arg{0.0, 0.0};
  for (int ir = 0; ir < config.radius_steps; ++ir) {
    const double r = config.radius_steps > 1 ? static_cast<double>(ir) / (config.radius_steps - 1) : 0.0;
    for (int ia = 0; ia < config.angle_steps; ++ia) {
      const double phi = 2.0 * std::numbers::pi * ia / std::max(1, config.angle_steps - 1);
      const double a = r * std::cos(phi), b = r * std::sin(phi);
      const double v = f(a, b);
      if (v > best) {
        best = v;
        arg = {a, b};
      }
    }
  }
  const double cell = 2.0 / std::max(1, config.radius_steps - 1);
  const auto refined = nelder_mead_disk(f, arg, cell, config.refine_tol);
  const double refined_value = f(refined[0], refined[1]);
  BoundReport r;
  r.method = BoundMethod::NumericSymmetric;
  r.n_starts = 1;
  r.converged = true;
  if (refined_value >= best) {
    r.value = refined_value;
    r.argmax = {refined[0], refined[1]};
  } else {
    r.value = best;
    r.argmax = {arg[0], arg[1]};
  }
  r.value = std::max(0.0, r.value);
  if (config.cross_validate) r.numeric_value = csep_hab_product(params, config).value;
  return r;
}

BoundReport csep_hab_product(const MixedHamiltonianParams& params, const HabOptimizerConfig& config) {
  require_orthogonal(params);
  const int n = params.n_qubits;
  if (n < 1 || n > 8) throw CapacityError("per-qubit product optimiser limited to 1 <= N <= 8");
  const auto dim = static_cast<std::size_t>(2 * n);
  auto objective = [&](const std::vector<double>& x) {
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      a[i] = x[2 * i];
      b[i] = x[2 * i + 1];
    }
    return 4.0 * hab_product_variance(a, b, params);
  };
  auto project = [&](std::vector<double>& x) {
    for (int i = 0; i < n; ++i) {
      const auto q = project_disk({x[2 * i], x[2 * i + 1]});
      x[2 * i] = q[0];
      x[2 * i + 1] = q[1];
    }
  };
  auto gradient = [&](std::vector<double> x, std::vector<double>& g) {
    const double h = 1e-6;
    for (std::size_t i = 0; i < dim; ++i) {
      const double x0 = x[i];
      x[i] = x0 + h;
      const double fp = objective(x);
      x[i] = x0 - h;
      const double fm = objective(x);
      x[i] = x0;
      g[i] = (fp - fm) / (2.0 * h);
    }
  };
  const auto starts = static_cast<std::size_t>(std::max(1, config.cross_validate_starts));
  std::vector<std::pair<double, std::vector<double>>> results(starts);
  parallel_for(starts, [&](std::size_t s) {
    auto rng = make_stream(config.seed, 1000 + s);
    std::vector<double> x(dim), g(dim), xn(dim);
    for (int i = 0; i < n; ++i) {
      const double r = std::sqrt(uniform01(rng));
      const double phi = 2.0 * std::numbers::pi * uniform01(rng);
      x[2 * i] = r * std::cos(phi);
      x[2 * i + 1] = r * std::sin(phi);
    }
    double f = objective(x);
    double t = 1e-2;
    for (int iter = 0; iter < config.cross_validate_max_iter; ++iter) {
      gradient(x, g);
      bool moved = false;
      while (t > 1e-16) {
        for (std::size_t i = 0; i < dim; ++i) xn[i] = x[i] + t * g[i];
        project(xn);
        const double fn = objective(xn);
        if (fn > f) {
          double step = 0.0;
          for (std::size_t i = 0; i < dim; ++i) step = std::max(step, std::abs(xn[i] - x[i]));
          x.swap(xn);
          f = fn;
          moved = step > 1e-13;
          t *= 2.0;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
    results[s] = {f, x};
  });
  const auto best = std::max_element(results.begin(), results.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
  BoundReport r;
  r.value = std::max(0.0, best->first);
  r.argmax = best->second;
  r.method = BoundMethod::NumericFull;
  r.n_starts = static_cast<int>(starts);
  r.converged = true;
  return r;
}

OperatorMatrix hab_operator(const MixedHamiltonianParams& params, Basis basis, int full_space_cap) {
  const OperatorMatrix ja = build_collective(params.axis_a, params.n_qubits, basis, full_space_cap);
  const OperatorMatrix jb = build_collective(params.axis_b, params.n_qubits, basis, full_space_cap);
  return ja * params.mu + operator_power(jb, 2) * params.nu;
}

namespace {

// Eigenvalue count below x for the symmetric tridiagonal (d, e).
std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e2, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = d[i] - x - (i > 0 ? e2[i - 1] / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

double bisect_eigenvalue(const std::vector<double>& d, const std::vector<double>& e2, std::size_t index,
                         double lo, double hi) {
  // Finds the index-th smallest eigenvalue (0-based) in [lo, hi].
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(d, e2, mid) > index) hi = mid;
    else lo = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> hab_sector_extremes(const MixedHamiltonianParams& params) {
  // Rotate so that b -> z and a lies in the x-z plane; the spectrum is invariant.
  const double cos_g = std::clamp(params.axis_a.direction().dot(params.axis_b.direction()), -1.0, 1.0);
  const double sin_g = std::sqrt(std::max(0.0, 1.0 - cos_g * cos_g));
  const int n = params.n_qubits;
  const double j = 0.5 * n;
  std::vector<double> d(static_cast<std::size_t>(n) + 1), e2(static_cast<std::size_t>(n));
  double radius = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double mz = j - m;
    d[m] = params.mu * cos_g * mz + params.nu * mz * mz;
  }
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double mz = j - m - 1.0;  // lower state of the pair (m, m+1)
    e[m] = params.mu * sin_g * 0.5 * std::sqrt((j - mz) * (j + mz + 1.0));
    e2[m] = e[m] * e[m];
  }
  double lo = d[0], hi = d[0];
  for (int m = 0; m <= n; ++m) {
    radius = (m > 0 ? std::abs(e[m - 1]) : 0.0) + (m < n ? std::abs(e[m]) : 0.0);
    lo = std::min(lo, d[m] - radius);
    hi = std::max(hi, d[m] + radius);
  }
  const double pad = 1e-12 * std::max(1.0, hi - lo);
  lo -= pad;
  hi += pad;
  return {bisect_eigenvalue(d, e2, 0, lo, hi), bisect_eigenvalue(d, e2, static_cast<std::size_t>(n), lo, hi)};
}

CentHabReport cent_hab(const MixedHamiltonianParams& params, int full_space_cap) {
  if (params.n_qubits < 1) throw DomainError("N must be >= 1");
  CentHabReport out;
  const auto [smin, smax] = hab_sector_extremes(params);
  out.sector_value = (smax - smin) * (smax - smin);
  out.value = out.sector_value;
  if (params.n_qubits <= full_space_cap) {
    const OperatorMatrix h = hab_operator(params, Basis::Full, full_space_cap);
    Eigen::VectorXd ev;
    if (h.entries().imag().cwiseAbs().maxCoeff() == 0.0) {
      const Eigen::MatrixXd real = h.entries().real();
      ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(real, Eigen::EigenvaluesOnly).eigenvalues();
    } else {
      ev = h.eigenvalues();
    }
    const double spread = ev.maxCoeff() - ev.minCoeff();
    out.full_value = spread * spread;
    out.discrepancy = std::abs(*out.full_value - out.sector_value);
    out.value = *out.full_value;
  }
  return out;
}

SweepRecord s_hab_record(int n_qubits, double mu, const HabSweepConfig& config) {
  const MixedHamiltonianParams p{mu, 1.0 - mu, config.axis_a, config.axis_b, n_qubits};
  const BoundReport sep = csep_hab(p, config.optimizer);
  const CentHabReport ent = cent_hab(p, config.full_space_cap);
  if (ent.discrepancy && *ent.discrepancy > config.max_discrepancy * std::max(1.0, ent.value)) {
    throw ComputationError("maximal-spin sector disagrees with full space at N = " + std::to_string(n_qubits));
  }
  SweepRecord r = SweepRecord::with_provenance(config.seed);
  r.set("N", n_qubits).set("mu", mu).set("nu", 1.0 - mu);
  r.set("csep", sep.value).set("cent", ent.value).set("s", ent.value / sep.value);
  r.set("alpha_star", sep.argmax[0]).set("beta_star", sep.argmax[1]);
  r.set("cent_method", FieldValue(std::string(ent.full_value ? "full" : "dicke_sector")));
  r.set("sector_discrepancy", ent.discrepancy.value_or(0.0));
  return r;
}

std::vector<SweepRecord> s_hab_sweep(const std::vector<double>& mu_list, const std::vector<int>& n_list,
                                     const HabSweepConfig& config) {
  std::vector<std::pair<int, double>> cells;
  for (int n : n_list)
    for (double mu : mu_list) cells.emplace_back(n, mu);
  std::vector<SweepRecord> out(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) { out[i] = s_hab_record(cells[i].first, cells[i].second, config); });
  return out;
}

}  // namespace metrobound
