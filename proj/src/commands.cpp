#include "metrobound/commands.hpp"

#include "metrobound/errors.hpp"
#include "metrobound/mixed_hamiltonian.hpp"
#include "metrobound/parallel.hpp"
#include "metrobound/random_average.hpp"
#include "metrobound/separability.hpp"
#include "metrobound/spin_squeezing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <set>

namespace metrobound {

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> table{
      {"bounds", Command::Bounds}, {"fig2a", Command::Fig2a}, {"fig2b", Command::Fig2b}, {"fig3", Command::Fig3},
      {"fig4", Command::Fig4},     {"fig5", Command::Fig5},   {"fig6", Command::Fig6},   {"fig7", Command::Fig7}};
  const auto it = table.find(name);
  if (it == table.end()) throw DomainError("unknown command: " + name);
  return it->second;
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Bounds: return "bounds";
    case Command::Fig2a: return "fig2a";
    case Command::Fig2b: return "fig2b";
    case Command::Fig3: return "fig3";
    case Command::Fig4: return "fig4";
    case Command::Fig5: return "fig5";
    case Command::Fig6: return "fig6";
    case Command::Fig7: return "fig7";
  }
  return "?";
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw DomainError("format must be csv or json");
}

namespace {

int parse_int(std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("not an integer: " + std::string(text));
  }
  return v;
}

}  // namespace

std::vector<int> parse_int_grid(const std::string& text) {
  if (text.empty()) throw DomainError("empty integer grid");
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
    } else {
      const std::size_t at = item.find('@');
      const int lo = parse_int(std::string_view(item).substr(0, dots));
      const int hi = parse_int(std::string_view(item).substr(dots + 2, at == std::string::npos ? std::string::npos : at - dots - 2));
      if (hi < lo) throw DomainError("empty range: " + item);
      if (at == std::string::npos) {
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      } else {
        const int count = parse_int(std::string_view(item).substr(at + 1));
        if (count < 2 || lo < 1) throw DomainError("log grid needs count >= 2 and a positive start: " + item);
        const double step = std::log(static_cast<double>(hi) / lo) / (count - 1);
        for (int i = 0; i < count; ++i) {
          const int v = i == count - 1 ? hi : static_cast<int>(std::llround(lo * std::exp(step * i)));
          if (out.empty() || out.back() != v) out.push_back(v);
        }
      }
    }
    pos = comma + 1;
  }
  return out;
}

const std::vector<std::string>& command_header(Command command) {
  static const std::vector<std::string> bounds{"seed", "version", "N", "k", "axis", "csep_analytic", "csep_numeric",
                                               "numeric_converged", "cent", "s", "error"};
  static const std::vector<std::string> detection{
      "seed",     "version", "N",      "lambda1",     "lambda2", "eta",         "qfi_k1",      "csep_k1",
      "detected_k1", "qfi_k2", "csep_k2", "detected_k2", "qfi_k3", "csep_k3", "detected_k3", "ss1",
      "ss2",      "ss3",     "ss_detected", "region"};
  static const std::vector<std::string> fig2b{"seed", "version", "N", "k", "axis", "sample", "qfi", "csep", "ratio", "t_k", "error"};
  static const std::vector<std::string> fig3{"seed",       "version",   "N",           "mu",
                                             "nu",         "csep",      "cent",        "s",
                                             "alpha_star", "beta_star", "cent_method", "sector_discrepancy",
                                             "error"};
  static const std::vector<std::string> fig6{"seed", "version", "N", "k", "avg_qfi", "csep", "epsilon", "gamma", "error"};
  static const std::vector<std::string> fig7{"seed",        "version", "N", "k", "csep_method", "csep", "csep_numeric",
                                             "cent",        "s",       "converged", "s_gt_s_k_plus_2",
                                             "conjecture_conclusive", "error"};
  switch (command) {
    case Command::Bounds: return bounds;
    case Command::Fig2a:
    case Command::Fig4:
    case Command::Fig5: return detection;
    case Command::Fig2b: return fig2b;
    case Command::Fig3: return fig3;
    case Command::Fig6: return fig6;
    case Command::Fig7: return fig7;
  }
  return bounds;
}

namespace {

using Emit = std::function<void(std::vector<SweepRecord>&&)>;

std::vector<int> grid_or(const std::string& text, const std::string& fallback) {
  return parse_int_grid(text.empty() ? fallback : text);
}

SweepRecord error_record(const RunConfig& cfg, std::initializer_list<std::pair<const char*, FieldValue>> knobs,
                         const std::exception& e) {
  SweepRecord r = SweepRecord::with_provenance(cfg.seed);
  for (const auto& [name, value] : knobs) r.set(name, value);
  r.set("error", FieldValue(std::string(e.what())));
  return r;
}

void run_bounds(const RunConfig& cfg, const Emit& emit, CommandOutcome& outcome) {
  const auto ns = grid_or(cfg.n, "3..9");
  const auto ks = grid_or(cfg.k, "1..3");
  std::vector<std::pair<int, int>> cells;
  for (int n : ns)
    for (int k : ks) cells.emplace_back(n, k);
  std::vector<SweepRecord> rows(cells.size());
  std::vector<char> failed(cells.size(), 0);
  OptimizerConfig opt;
  opt.n_starts = cfg.starts;
  opt.seed = cfg.seed;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto [n, k] = cells[i];
    const FieldValue fn = std::int64_t{n}, fk = std::int64_t{k}, fa = FieldValue(cfg.axis.name());
    try {
      SweepRecord r = SweepRecord::with_provenance(cfg.seed);
      r.set("N", fn).set("k", fk).set("axis", fa);
      std::optional<double> analytic;
      if (k <= 3) {
        analytic = csep_analytic_value(n, k);
        r.set("csep_analytic", *analytic);
      } else if (n < 3) {
        throw DomainError("C_sep(J^k), k >= 2, requires N >= 3");
      }
      const BoundReport num = csep_numeric(n, k, opt);
      const double ce = cent(n, k);
      r.set("csep_numeric", num.value).set("numeric_converged", num.converged);
      r.set("cent", ce).set("s", ce / analytic.value_or(num.value)).set("error", FieldValue(std::string()));
      rows[i] = std::move(r);
    } catch (const std::exception& e) {
      rows[i] = error_record(cfg, {{"N", fn}, {"k", fk}, {"axis", fa}}, e);
      failed[i] = 1;
    }
  }
  outcome.failed_rows += static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  emit(std::move(rows));
}

void run_detection(const RunConfig& cfg, const Emit& emit, CommandOutcome& outcome) {
  std::vector<DetectionSweepConfig> sweeps;
  const std::string default_n = cfg.command == Command::Fig2a ? "6" : "10";
  for (int n : grid_or(cfg.n, default_n)) {
    DetectionSweepConfig d;
    d.n_qubits = n;
    d.seed = cfg.seed;
    d.samples = static_cast<std::size_t>(cfg.samples);
    d.grid_lambda = d.grid_eta = cfg.grid;
    if (cfg.command == Command::Fig5) {
      if (cfg.split == "zero") d.mode = SweepMode::GridLambda2Zero;
      else if (cfg.split == "equal") d.mode = SweepMode::GridEqualSplit;
      else throw DomainError("split must be zero or equal");
    }
    sweeps.push_back(d);
  }
  const bool single = cfg.eta && cfg.lambda1 && cfg.lambda2;
  for (const auto& d : sweeps) {
    if (single) {
      const DetectionPoint p = evaluate_detection_point(d.n_qubits, *cfg.lambda1, *cfg.lambda2, *cfg.eta);
      ++outcome.region_counts[p.region()];
      emit({detection_record(p, d.n_qubits, cfg.seed)});
      continue;
    }
    const std::size_t total = detection_point_count(d);
    constexpr std::size_t kChunk = 20000;
    for (std::size_t lo = 0; lo < total; lo += kChunk) {
      auto rows = detection_region_sweep(d, lo, lo + kChunk);
      for (const auto& r : rows) ++outcome.region_counts[std::get<std::string>(r.get("region"))];
      emit(std::move(rows));
    }
  }
}

void run_fig2b(const RunConfig& cfg, const Emit& emit, CommandOutcome& outcome) {
  const auto ns = grid_or(cfg.n, "100");
  const auto ks = grid_or(cfg.k, "1..3");
  for (int n : ns) {
    for (int k : ks) {
      const FieldValue fn = std::int64_t{n}, fk = std::int64_t{k}, fa = FieldValue(cfg.axis.name());
      try {
        const double csep = csep_analytic_value(n, k);
        const double tk = t_ratio(n, k);
        MonteCarloConfig mc;
        mc.n_samples = cfg.samples;
        mc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n) * 64 + static_cast<std::uint64_t>(k));
        mc.axis = cfg.axis;
        const auto values = qfi_samples(n, k, mc);
        std::vector<SweepRecord> rows;
        rows.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
          SweepRecord r = SweepRecord::with_provenance(cfg.seed);
          r.set("N", fn).set("k", fk).set("axis", fa).set("sample", FieldValue(static_cast<std::int64_t>(i)));
          r.set("qfi", values[i]).set("csep", csep).set("ratio", values[i] / csep).set("t_k", tk);
          r.set("error", FieldValue(std::string()));
          rows.push_back(std::move(r));
        }
        emit(std::move(rows));
      } catch (const std::exception& e) {
        ++outcome.failed_rows;
        emit({error_record(cfg, {{"N", fn}, {"k", fk}, {"axis", fa}}, e)});
      }
    }
  }
}

void run_fig3(const RunConfig& cfg, const Emit& emit, CommandOutcome& outcome) {
  const auto ns = grid_or(cfg.n, "4..11");
  const std::vector<double> mus =
      cfg.mu.empty() ? std::vector<double>{0.0, 0.4, 0.6, 0.7, 0.8, 0.9, 0.99, 1.0} : cfg.mu;
  HabSweepConfig hc;
  hc.axis_a = cfg.axis.label() == 'z' && !cfg.axis_b ? Axis::x() : cfg.axis;
  hc.axis_b = cfg.axis_b.value_or(hc.axis_a.label() == 'z' ? Axis::x() : Axis::z());
  hc.full_space_cap = cfg.full_space_cap;
  hc.seed = cfg.seed;
  std::vector<std::pair<int, double>> cells;
  for (int n : ns)
    for (double mu : mus) cells.emplace_back(n, mu);
  std::vector<SweepRecord> rows(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto [n, mu] = cells[i];
    try {
      rows[i] = s_hab_record(n, mu, hc);
      rows[i].set("error", FieldValue(std::string()));
    } catch (const std::exception& e) {
      rows[i] = error_record(cfg, {{"N", FieldValue(std::int64_t{n})}, {"mu", mu}, {"nu", 1.0 - mu}}, e);
      ++outcome.failed_rows;
    }
  }
  emit(std::move(rows));
}

void run_fig6(const RunConfig& cfg, const Emit& emit, CommandOutcome& outcome) {
  const auto ns = grid_or(cfg.n, "10..100000000@29");
  const auto ks = grid_or(cfg.k, "1..3");
  std::vector<SweepRecord> rows;
  for (int k : ks) {
    for (int n : ns) {
      const FieldValue fn = std::int64_t{n}, fk = std::int64_t{k};
      try {
        const double avg = avg_qfi_analytic(n, k);
        const double csep = csep_analytic_value(n, k);
        SweepRecord r = SweepRecord::with_provenance(cfg.seed);
        r.set("N", fn).set("k", fk).set("avg_qfi", avg).set("csep", csep).set("epsilon", avg - csep);
        r.set("gamma", concentration_confidence(n, k)).set("error", FieldValue(std::string()));
        rows.push_back(std::move(r));
      } catch (const std::exception& e) {
        ++outcome.failed_rows;
        rows.push_back(error_record(cfg, {{"N", fn}, {"k", fk}}, e));
      }
    }
  }
  emit(std::move(rows));
}

void run_fig7(const RunConfig& cfg, const Emit& emit, CommandOutcome& outcome) {
  const auto ns = grid_or(cfg.n, "3..9");
  const auto ks = grid_or(cfg.k, "1..9");
  STableConfig sc;
  sc.optimizer.n_starts = cfg.starts;
  sc.optimizer.seed = cfg.seed;
  std::vector<SweepRecord> rows;
  const auto [klo, khi] = std::minmax_element(ks.begin(), ks.end());
  for (int n : ns) {
    try {
      auto table = s_table(n, n, *klo, *khi, sc);
      for (auto& r : table) {
        r.set("error", FieldValue(std::string()));
        if (std::find(ks.begin(), ks.end(), static_cast<int>(r.number("k"))) != ks.end()) rows.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      ++outcome.failed_rows;
      rows.push_back(error_record(cfg, {{"N", FieldValue(std::int64_t{n})}}, e));
    }
  }
  emit(std::move(rows));
}

void dispatch(const RunConfig& cfg, const Emit& emit, CommandOutcome& outcome) {
  if (cfg.samples < 1) throw DomainError("samples must be >= 1");
  switch (cfg.command) {
    case Command::Bounds: return run_bounds(cfg, emit, outcome);
    case Command::Fig2a:
    case Command::Fig4:
    case Command::Fig5: return run_detection(cfg, emit, outcome);
    case Command::Fig2b: return run_fig2b(cfg, emit, outcome);
    case Command::Fig3: return run_fig3(cfg, emit, outcome);
    case Command::Fig6: return run_fig6(cfg, emit, outcome);
    case Command::Fig7: return run_fig7(cfg, emit, outcome);
  }
}

}  // namespace

CommandOutcome run_command(const RunConfig& config, std::ostream& os) {
  CommandOutcome outcome;
  const auto& header = command_header(config.command);
  bool first = true;
  if (config.format == OutputFormat::Csv) {
    write_csv_header(os, header);
  } else {
    os << "[";
  }
  dispatch(config, [&](std::vector<SweepRecord>&& rows) {
    outcome.rows += rows.size();
    if (config.format == OutputFormat::Csv) {
      write_csv_rows(os, rows, header);
      return;
    }
    for (const auto& r : rows) {
      os << (first ? "\n" : ",\n") << to_json(r).dump();
      first = false;
    }
  }, outcome);
  if (config.format == OutputFormat::Json) os << (first ? "]\n" : "\n]\n");
  return outcome;
}

std::vector<SweepRecord> command_records(const RunConfig& config) {
  std::vector<SweepRecord> out;
  CommandOutcome outcome;
  dispatch(config, [&](std::vector<SweepRecord>&& rows) {
    for (auto& r : rows) out.push_back(std::move(r));
  }, outcome);
  return out;
}

}  // namespace metrobound
