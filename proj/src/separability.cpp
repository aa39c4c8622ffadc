#include "metrobound/separability.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace metrobound {

namespace {

void convolve_qubit(std::vector<double>& p, double alpha) {
  const double up = 0.5 * (1.0 + alpha);
  const double down = 0.5 * (1.0 - alpha);
  p.push_back(0.0);
  for (std::size_t m = p.size() - 1; m > 0; --m) p[m] = p[m] * up + p[m - 1] * down;
  p[0] *= up;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Outcome powers x_m^k, x_m = N/2 - m.
std::vector<double> outcome_powers(int n, int k) {
  std::vector<double> xs(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) xs[m] = std::pow(0.5 * n - m, k);
  return xs;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

std::vector<double> product_distribution(std::span<const double> alphas) {
  std::vector<double> p{1.0};
  p.reserve(alphas.size() + 1);
  for (double a : alphas) convolve_qubit(p, a);
  return p;
}

double product_variance_poly(std::span<const double> alphas, int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  const int n = static_cast<int>(alphas.size());
  const auto p = product_distribution(alphas);
  const double m1 = dot(p, outcome_powers(n, k));
  const double m2 = dot(p, outcome_powers(n, 2 * k));
  return m2 - m1 * m1;
}

double product_variance(const ProductBloch& bloch, int k) {
  return product_variance_poly(bloch.alphas(), k);
}

double product_variance_with_gradient(std::span<const double> alphas, int k, std::span<double> grad) {
  const std::size_t n = alphas.size();
  if (grad.size() != n) throw DimensionMismatch("gradient buffer size differs from N");
  const auto xk = outcome_powers(static_cast<int>(n), k);
  const auto x2k = outcome_powers(static_cast<int>(n), 2 * k);
  // prefix[i]: distribution of qubits [0, i); suffix[i]: of qubits [i, n).
  std::vector<std::vector<double>> prefix(n + 1), suffix(n + 1);
  prefix[0] = {1.0};
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i];
    convolve_qubit(prefix[i + 1], alphas[i]);
  }
  suffix[n] = {1.0};
  for (std::size_t i = n; i-- > 0;) {
    suffix[i] = suffix[i + 1];
    convolve_qubit(suffix[i], alphas[i]);
  }
  const auto& p = prefix[n];
  const double m1 = dot(p, xk);
  const double m2 = dot(p, x2k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto rest = convolve(prefix[i], suffix[i + 1]);
    // d/d alpha_i of the distribution: rest convolved with (1/2, -1/2).
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t m = 0; m < rest.size(); ++m) {
      d1 += 0.5 * rest[m] * (xk[m] - xk[m + 1]);
      d2 += 0.5 * rest[m] * (x2k[m] - x2k[m + 1]);
    }
    grad[i] = d2 - 2.0 * m1 * d1;
  }
  return m2 - m1 * m1;
}

double csep_analytic_value(int n_qubits, int k) {
  const double n = n_qubits;
  switch (k) {
    case 1:
      if (n_qubits < 1) throw DomainError("N must be >= 1");
      return n;
    case 2:
    case 3:
      if (n_qubits < 3) throw DomainError("closed-form C_sep(J^k), k >= 2, requires N >= 3");
      break;
    default:
      throw DomainError("closed-form C_sep available for k in {1, 2, 3} only");
  }
  if (k == 2) return (n - 1) * (n - 1) * (n - 1) * n / (2.0 * (2.0 * n - 3.0));
  const double d = 3.0 * (n - 5.0) * n + 20.0;
  const double c3 = 3.0 * n * (n * (3.0 * (n - 9.0) * n + 128.0) - 360.0) + 1720.0;
  const double c1 = 380.0 * (164.0 - 71.0 * n) / d + 12800.0 * (n - 1.0) / (d * d) - 3084.0;
  const double inner = n * (n * c3 - 1440.0) + 480.0;
  double radicand = n * n * inner * inner * inner / ((n - 2.0) * (n - 1.0) * d * d * d * d);
  if (radicand < 0.0 && radicand > -1e-9) radicand = 0.0;
  const double c2 = 3.0 * std::sqrt(radicand);
  const double b = 120.0 * n * n * n + 180.0 * n * n + 1020.0 * n;
  const double poly = ((9.0 * n - 18.0) * n) * n * n * n;
  return (poly - b + c1 + c2) / 216.0;
}

BoundReport csep_analytic(int n_qubits, int k) {
  BoundReport r;
  r.value = csep_analytic_value(n_qubits, k);
  r.method = BoundMethod::Analytic;
  r.n_starts = 0;
  r.converged = true;
  if (k == 1) {
    r.argmax.assign(static_cast<std::size_t>(n_qubits), 0.0);
  } else if (k == 2) {
    r.argmax.assign(static_cast<std::size_t>(n_qubits),
                    std::sqrt((n_qubits - 2.0) / (2.0 * n_qubits - 3.0)));
  } else {
    r.argmax.assign(static_cast<std::size_t>(n_qubits), csep_symmetric(n_qubits, 3).alpha);
  }
  return r;
}

SymmetricOptimum csep_symmetric(int n_qubits, int k) {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  std::vector<double> buf(static_cast<std::size_t>(n_qubits));
  auto f = [&](double a) {
    std::fill(buf.begin(), buf.end(), a);
    return 4.0 * product_variance_poly(buf, k);
  };
  constexpr int kGrid = 4000;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = f(-1.0 + 2.0 * i / kGrid);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = -1.0 + 2.0 * std::max(0, best - 1) / kGrid;
  double hi = -1.0 + 2.0 * std::min(kGrid, best + 1) / kGrid;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo), d = lo + ratio * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-13) {
    if (fc > fd) {
      hi = d; d = c; fd = fc;
      c = hi - ratio * (hi - lo); fc = f(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + ratio * (hi - lo); fd = f(d);
    }
  }
  SymmetricOptimum out{best_val, -1.0 + 2.0 * best / kGrid};
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  if (fm >= out.value) out = {fm, mid};
  return out;
}

namespace {

struct LocalResult {
  double value = 0.0;
  std::vector<double> x;
  bool converged = false;
  bool symmetric_start = false;
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double objective(const std::vector<double>& x, int k, std::vector<double>& grad) {
  const double v = product_variance_with_gradient(x, k, grad);
  for (double& g : grad) g *= 4.0;
  return 4.0 * v;
}

// Projected gradient ascent on [-1, 1]^N with Barzilai-Borwein steps and
// Armijo backtracking.
LocalResult ascend(std::vector<double> x, int k, const OptimizerConfig& cfg) {
  const std::size_t n = x.size();
  auto project = [](double v) { return std::clamp(v, -1.0, 1.0); };
  for (double& v : x) v = project(v);
  std::vector<double> g(n), gn(n), xn(n), pg(n);
  double f = objective(x, k, g);
  double t = 1.0 / std::max(1e-12, inf_norm(g));
  LocalResult res;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) pg[i] = project(x[i] + g[i]) - x[i];
    if (inf_norm(pg) < cfg.tol * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }
    double fn = f;
    bool accepted = false;
    while (t > 1e-30) {
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        xn[i] = project(x[i] + t * g[i]);
        decrease += g[i] * (xn[i] - x[i]);
      }
      fn = objective(xn, k, gn);
      if (fn >= f + 1e-4 * decrease) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      res.converged = true;
      break;
    }
    double ss = 0.0, sy = 0.0, step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = xn[i] - x[i];
      const double y = g[i] - gn[i];
      ss += s * s;
      sy += s * y;
      step = std::max(step, std::abs(s));
    }
    x.swap(xn);
    g.swap(gn);
    f = fn;
    if (step < 1e-12) {
      res.converged = true;
      break;
    }
    t = sy > 0.0 ? ss / sy : 4.0 * t;
    t = std::min(t, 1e6 / std::max(1e-12, inf_norm(g)));
  }
  res.value = f;
  res.x = std::move(x);
  return res;
}

double spread(const std::vector<double>& x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

// True when a should replace b as the reported optimum.
bool better(const LocalResult& a, const LocalResult& b) {
  const double tie = 1e-9 * std::max(1.0, std::abs(b.value));
  if (a.value > b.value + tie) return true;
  if (a.value < b.value - tie) return false;
  const double sa = spread(a.x), sb = spread(b.x);
  if (sa < sb - 1e-9) return true;
  if (sa > sb + 1e-9) return false;
  return a.x > b.x;
}

}  // namespace

Eigen::MatrixXd finite_difference_hessian(const std::function<double(std::span<const double>)>& f,
                                          std::span<const double> x, double step) {
  const auto n = static_cast<Eigen::Index>(x.size());
  std::vector<double> p(x.begin(), x.end());
  auto eval = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
    p[i] += di;
    p[j] += dj;
    const double v = f(p);
    p[i] -= di;
    p[j] -= dj;
    return v;
  };
  const double f0 = f(p);
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = (eval(i, step, i, 0.0) - 2.0 * f0 + eval(i, -step, i, 0.0)) / (step * step);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      h(i, j) = h(j, i) = (eval(i, step, j, step) - eval(i, step, j, -step) -
                           eval(i, -step, j, step) + eval(i, -step, j, -step)) /
                          (4.0 * step * step);
    }
  }
  return h;
}

BoundReport csep_numeric(int n_qubits, int k, const OptimizerConfig& config) {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  if (k < 1) throw DomainError("k must be >= 1");
  if (config.n_starts < 0) throw DomainError("n_starts must be >= 0");
  const auto n = static_cast<std::size_t>(n_qubits);
  const auto total = static_cast<std::size_t>(config.n_starts) + 1;
  std::vector<LocalResult> results(total);
  parallel_for(total, [&](std::size_t i) {
    std::vector<double> x0(n);
    if (i == 0) {
      std::fill(x0.begin(), x0.end(), csep_symmetric(n_qubits, k).alpha);
    } else {
      auto rng = make_stream(config.seed, i);
      for (double& v : x0) v = -1.0 + 2.0 * uniform01(rng);
    }
    results[i] = ascend(std::move(x0), k, config);
    results[i].symmetric_start = (i == 0);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (better(results[i], results[best])) best = i;

  BoundReport r;
  r.value = results[best].value;
  r.argmax = results[best].x;
  r.method = results[best].symmetric_start ? BoundMethod::NumericSymmetric : BoundMethod::NumericFull;
  r.n_starts = static_cast<int>(total);
  r.converged = results[best].converged;
  auto obj = [k](std::span<const double> a) { return 4.0 * product_variance_poly(a, k); };
  const Eigen::MatrixXd h = finite_difference_hessian(obj, r.argmax, 1e-2);
  r.hessian_max_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  return r;
}

double symmetric_hessian_max_eig(int n_qubits, int k, double alpha) {
  const std::vector<double> x(static_cast<std::size_t>(n_qubits), alpha);
  auto var = [k](std::span<const double> a) { return product_variance_poly(a, k); };
  // Var is at most quadratic in each alpha_i, so central differences are exact
  // up to rounding and a large step is safe.
  const Eigen::MatrixXd h = finite_difference_hessian(var, x, 1e-2);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

HessianCertificate hessian_certificate_k2(int n_qubits) {
  if (n_qubits < 3) throw DomainError("Hessian certificate requires N >= 3");
  const double n = n_qubits;
  HessianCertificate c;
  c.n_qubits = n_qubits;
  c.q = (n - 2.0) * (n - 1.0) * (n - 1.0) / (2.0 * (2.0 * n - 3.0));
  c.q_prime = (n - 2.0) * (3.0 * n - 5.0) / (2.0 * (2.0 * n - 3.0));
  c.alpha_star = std::sqrt((n - 2.0) / (2.0 * n - 3.0));
  c.eigenvalues.setConstant(n_qubits, -(c.q - c.q_prime));
  c.eigenvalues(0) = -(c.q - c.q_prime) - n * c.q_prime;

  const std::vector<double> x(static_cast<std::size_t>(n_qubits), c.alpha_star);
  auto var = [](std::span<const double> a) { return product_variance_poly(a, 2); };
  const Eigen::MatrixXd h = finite_difference_hessian(var, x, 1e-2);
  c.fd_eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues();
  c.max_abs_difference = (c.fd_eigenvalues - c.eigenvalues).cwiseAbs().maxCoeff();
  c.negative_semidefinite = c.eigenvalues.maxCoeff() <= 1e-12;
  return c;
}

double cent(int n_qubits, int k) {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  if (k < 1) throw DomainError("k must be >= 1");
  const double n = n_qubits;
  if (k % 2 == 1) return std::pow(n, 2.0 * k) / std::pow(4.0, k - 1);
  if (n_qubits % 2 == 0) return std::pow(n, 2.0 * k) / std::pow(4.0, k);
  const double a = std::pow(n, k) - 1.0;
  return a * a / std::pow(4.0, k);
}

double s2_closed(int n_qubits) {
  if (n_qubits < 3) throw DomainError("s_2 requires N >= 3");
  const double n = n_qubits;
  const double top = n_qubits % 2 == 0 ? n * n * n * n : (n * n - 1.0) * (n * n - 1.0);
  return (2.0 * n - 3.0) * top / (8.0 * (n - 1.0) * (n - 1.0) * (n - 1.0) * n);
}

double s3_closed(int n_qubits) {
  if (n_qubits < 3) throw DomainError("s_3 requires N >= 3");
  const double n = n_qubits;
  const double d = 3.0 * (n - 5.0) * n + 20.0;
  const double c3 = 3.0 * n * (n * (3.0 * (n - 9.0) * n + 128.0) - 360.0) + 1720.0;
  const double c1 = 380.0 * (164.0 - 71.0 * n) / d + 12800.0 * (n - 1.0) / (d * d) - 3084.0;
  const double inner = n * (n * c3 - 1440.0) + 480.0;
  double radicand = n * n * inner * inner * inner / ((n - 2.0) * (n - 1.0) * d * d * d * d);
  if (radicand < 0.0 && radicand > -1e-9) radicand = 0.0;
  const double c2 = 3.0 * std::sqrt(radicand);
  return 13.5 * std::pow(n, 6) /
         (c1 + c2 + 3.0 * n * (n * (3.0 * n * n * n - 6.0 * n * n - 40.0 * n - 60.0) - 340.0));
}

double s_ratio(int n_qubits, int k) {
  double closed = 0.0;
  switch (k) {
    case 1: closed = n_qubits; break;
    case 2: closed = s2_closed(n_qubits); break;
    case 3: closed = s3_closed(n_qubits); break;
    default: throw DomainError("closed-form s_k available for k in {1, 2, 3} only");
  }
  const double direct = cent(n_qubits, k) / csep_analytic_value(n_qubits, k);
  if (std::abs(direct - closed) > 1e-9 * std::abs(direct)) {
    throw ComputationError("s_k closed form disagrees with C_ent / C_sep");
  }
  return closed;
}

NumericRatio s_ratio_numeric(int n_qubits, int k, const OptimizerConfig& config) {
  const BoundReport r = csep_numeric(n_qubits, k, config);
  return {cent(n_qubits, k) / r.value, r.converged};
}

std::vector<SweepRecord> s_table(int n_lo, int n_hi, int k_lo, int k_hi, const STableConfig& config) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("invalid N range");
  if (k_lo < 1 || k_hi < k_lo) throw DomainError("invalid k range");
  std::vector<SweepRecord> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    std::vector<double> s_values;
    std::vector<bool> ok;
    const std::size_t first = out.size();
    for (int k = k_lo; k <= k_hi; ++k) {
      SweepRecord r = SweepRecord::with_provenance(config.optimizer.seed);
      r.set("N", n).set("k", k);
      const bool closed = k <= 3 && (k == 1 || n >= 3);
      double csep = 0.0;
      bool converged = true;
      if (closed) {
        csep = csep_analytic_value(n, k);
        r.set("csep_method", FieldValue(std::string("analytic")));
        if (config.numeric_cross_check) {
          const BoundReport num = csep_numeric(n, k, config.optimizer);
          r.set("csep_numeric", num.value);
          converged = num.converged;
        }
      } else {
        const BoundReport num = csep_numeric(n, k, config.optimizer);
        csep = num.value;
        converged = num.converged;
        r.set("csep_method", FieldValue(std::string("numeric")));
      }
      const double ce = cent(n, k);
      r.set("csep", csep).set("cent", ce).set("s", ce / csep).set("converged", converged);
      s_values.push_back(ce / csep);
      ok.push_back(converged);
      out.push_back(std::move(r));
    }
    for (std::size_t i = 0; i + 2 < s_values.size(); ++i) {
      auto& r = out[first + i];
      r.set("s_gt_s_k_plus_2", s_values[i] > s_values[i + 2]);
      r.set("conjecture_conclusive", ok[i] && ok[i + 2]);
    }
  }
  return out;
}

}  // namespace metrobound
