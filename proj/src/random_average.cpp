#include "metrobound/random_average.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/parallel.hpp"
#include "metrobound/qfi.hpp"
#include "metrobound/separability.hpp"
#include "metrobound/states.hpp"

#include <algorithm>
#include <cmath>

namespace metrobound {

using boost::multiprecision::cpp_int;

namespace {

cpp_int binomial(int n, int r) {
  cpp_int b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

Rational rpow(const Rational& x, int p) {
  Rational out = 1;
  for (int i = 0; i < p; ++i) out *= x;
  return out;
}

void check_tau_args(int n_qubits, int k) {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  if (k < 0) throw DomainError("k must be >= 0");
}

}  // namespace

std::vector<Rational> bernoulli_plus(int n) {
  if (n < 0) throw DomainError("Bernoulli index must be >= 0");
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * b[j];
    b[m] = -s / (m + 1);
  }
  if (n >= 1) b[1] = Rational(1, 2);
  return b;
}

Rational tau_direct(int n_qubits, int k) {
  check_tau_args(n_qubits, k);
  cpp_int sum = 0;
  for (int m = 0; m <= n_qubits; ++m) sum += boost::multiprecision::pow(cpp_int(n_qubits - 2 * m), k);
  return Rational(sum) / boost::multiprecision::pow(cpp_int(2), k);
}

Rational tau_faulhaber(int n_qubits, int k) {
  check_tau_args(n_qubits, k);
  const auto b = bernoulli_plus(k);
  const Rational half_n(n_qubits, 2);
  const cpp_int n = n_qubits;
  Rational total = rpow(half_n, k);
  for (int p = 0; p <= k; ++p) {
    Rational power_sum = 0;
    for (int r = 0; r <= p; ++r) power_sum += Rational(binomial(p + 1, r)) * b[r] * Rational(boost::multiprecision::pow(n, p - r + 1));
    power_sum /= p + 1;
    const Rational term = Rational(binomial(k, p)) * rpow(half_n, k - p) * power_sum;
    total += (p % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

Rational tau(int n_qubits, int k) {
  const Rational f = tau_faulhaber(n_qubits, k);
  if (n_qubits > kTauDirectLimit) return f;
  const Rational d = tau_direct(n_qubits, k);
  if (d != f) throw ComputationError("tau: direct sum and Faulhaber expansion disagree");
  return d;
}

double tau_value(int n_qubits, int k) { return static_cast<double>(tau(n_qubits, k)); }

Rational avg_qfi_exact(int n_qubits, int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  const Rational tk = tau(n_qubits, k);
  const Rational t2k = tau(n_qubits, 2 * k);
  return Rational(4, n_qubits + 1) * (t2k - (tk * tk + t2k) / (n_qubits + 2));
}

Rational avg_qfi_closed(int n_qubits, int k) {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  const cpp_int n = n_qubits;
  switch (k) {
    case 1:
      return Rational(n * (n + 1), 3);
    case 2:
      return Rational(n * (n - 1) * (n + 1) * (n + 3), 45);
    case 3:
      return Rational(n * (n + 1) * (3 * n * (n * n * n + 4 * n * n - 8) + 16), 336);
    default:
      throw DomainError("closed-form average QFI available for k in {1, 2, 3} only");
  }
}

double avg_qfi_analytic(int n_qubits, int k) {
  const Rational exact = avg_qfi_exact(n_qubits, k);
  if (k <= 3 && exact != avg_qfi_closed(n_qubits, k)) {
    throw ComputationError("average QFI: master formula and closed form disagree");
  }
  return static_cast<double>(exact);
}

bool AverageQfiResult::consistent(double sigmas) const {
  if (!analytic) return true;
  return std::abs(mc_mean - *analytic) <= sigmas * mc_stderr;
}

namespace {

struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }
};

struct SampleContext {
  int n;
  int k;
  bool diagonal;
  std::vector<double> zk;
  std::optional<OperatorMatrix> op;
};

SampleContext make_context(int n_qubits, int k, const Axis& axis) {
  SampleContext ctx{n_qubits, k, axis.label() == 'z', {}, std::nullopt};
  if (ctx.diagonal) {
    ctx.zk.resize(static_cast<std::size_t>(n_qubits) + 1);
    for (int m = 0; m <= n_qubits; ++m) ctx.zk[m] = std::pow(0.5 * n_qubits - m, k);
  } else {
    ctx.op = operator_power(build_collective(axis, n_qubits, Basis::Dicke), k);
  }
  return ctx;
}

double sample_qfi(const SampleContext& ctx, std::mt19937_64& rng) {
  const QuantumState psi = random_symmetric_state(ctx.n, rng);
  if (!ctx.diagonal) return qfi_pure(psi, *ctx.op).value;
  double m1 = 0.0, m2 = 0.0;
  const CVector& v = psi.vector();
  for (Eigen::Index m = 0; m < v.size(); ++m) {
    const double p = std::norm(v[m]);
    m1 += p * ctx.zk[m];
    m2 += p * ctx.zk[m] * ctx.zk[m];
  }
  return std::max(0.0, 4.0 * (m2 - m1 * m1));
}

template <class Sink>
void run_batches(int n_qubits, int k, const MonteCarloConfig& config, Sink&& sink) {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  if (k < 1) throw DomainError("k must be >= 1");
  if (config.batch_size < 1) throw DomainError("batch size must be >= 1");
  const SampleContext ctx = make_context(n_qubits, k, config.axis);
  const auto batches = static_cast<std::size_t>((config.n_samples + config.batch_size - 1) / config.batch_size);
  parallel_for(batches, [&](std::size_t b) {
    auto rng = make_stream(config.seed, b);
    const std::int64_t lo = static_cast<std::int64_t>(b) * config.batch_size;
    const std::int64_t hi = std::min(config.n_samples, lo + config.batch_size);
    sink(b, lo, hi, [&] { return sample_qfi(ctx, rng); });
  });
}

}  // namespace

AverageQfiResult avg_qfi_mc(int n_qubits, int k, const MonteCarloConfig& config) {
  if (config.n_samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  const auto batches = static_cast<std::size_t>((config.n_samples + config.batch_size - 1) / std::max<std::int64_t>(1, config.batch_size));
  std::vector<Moments> partial(batches);
  run_batches(n_qubits, k, config, [&](std::size_t b, std::int64_t lo, std::int64_t hi, auto draw) {
    for (std::int64_t i = lo; i < hi; ++i) partial[b].add(draw());
  });
  Moments total;
  for (const auto& m : partial) total.merge(m);
  AverageQfiResult r;
  r.mc_mean = total.mean;
  const double var = total.m2 / static_cast<double>(total.count - 1);
  r.mc_stderr = std::sqrt(std::max(0.0, var) / static_cast<double>(total.count));
  r.n_samples = total.count;
  r.seed = config.seed;
  r.analytic = avg_qfi_analytic(n_qubits, k);
  return r;
}

std::vector<double> qfi_samples(int n_qubits, int k, const MonteCarloConfig& config) {
  if (config.n_samples < 1) throw DomainError("need at least one sample");
  std::vector<double> out(static_cast<std::size_t>(config.n_samples));
  run_batches(n_qubits, k, config, [&](std::size_t, std::int64_t lo, std::int64_t hi, auto draw) {
    for (std::int64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = draw();
  });
  return out;
}

double t_ratio(int n_qubits, int k) {
  const double n = n_qubits;
  double closed = 0.0;
  switch (k) {
    case 1:
      if (n_qubits < 1) throw DomainError("N must be >= 1");
      closed = (n + 1.0) / 3.0;
      break;
    case 2:
      if (n_qubits < 3) throw DomainError("t_2 requires N >= 3");
      closed = 2.0 * (n + 1.0) * (n + 3.0) * (2.0 * n - 3.0) / (45.0 * (n - 1.0) * (n - 1.0));
      break;
    case 3: {
      if (n_qubits < 3) throw DomainError("t_3 requires N >= 3");
      const double d = 3.0 * (n - 5.0) * n + 20.0;
      const double c3 = 3.0 * n * (n * (3.0 * (n - 9.0) * n + 128.0) - 360.0) + 1720.0;
      const double c1 = 380.0 * (164.0 - 71.0 * n) / d + 12800.0 * (n - 1.0) / (d * d) - 3084.0;
      const double inner = n * (n * c3 - 1440.0) + 480.0;
      double radicand = n * n * inner * inner * inner / ((n - 2.0) * (n - 1.0) * d * d * d * d);
      if (radicand < 0.0 && radicand > -1e-9) radicand = 0.0;
      const double c2 = 3.0 * std::sqrt(radicand);
      closed = 9.0 / 14.0 * n * (1.0 + n) * (16.0 + 3.0 * n * (-8.0 + n * n * n + 4.0 * n * n)) /
                (3.0 * n * (-340.0 + n * (-60.0 + n * (-40.0 + 3.0 * n * n - 6.0 * n))) + c1 + c2);
      break;
    }
    default:
      throw DomainError("t_k available for k in {1, 2, 3} only");
  }
  const double derived = avg_qfi_analytic(n_qubits, k) / csep_analytic_value(n_qubits, k);
  if (std::abs(closed - derived) > 1e-9 * std::abs(derived)) {
    throw ComputationError("t_k closed form disagrees with average QFI over C_sep");
  }
  return closed;
}

double concentration_confidence(int n_qubits, int k) {
  if (n_qubits < 1) throw DomainError("N must be >= 1");
  const double eps = avg_qfi_analytic(n_qubits, k) - csep_analytic_value(n_qubits, k);
  if (!(eps > 0.0)) return 0.0;
  const double scaled = eps / std::pow(0.5 * n_qubits, 2.0 * k);
  const double exponent = (n_qubits + 1.0) * scaled * scaled / 4096.0;
  return std::clamp(-std::expm1(-exponent), 0.0, 1.0);
}

}  // namespace metrobound
