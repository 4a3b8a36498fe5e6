#pragma once

// Seeded multi-trial experiments, summaries, convergence tables and the
// CSV / JSON writers behind the satlab CLI.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "satlab/edgecover.hpp"
#include "satlab/goodness.hpp"
#include "satlab/graph.hpp"
#include "satlab/layered.hpp"
#include "satlab/oracle.hpp"
#include "satlab/rng.hpp"
#include "satlab/saturation.hpp"
#include "satlab/weak_saturation.hpp"

namespace satlab {

enum class Mode { kStrong, kWeak, kOracleSweep, kGoodness, kEdgecover, kNaiveCompare };
enum class OutputFormat { kCsv, kJson };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kStrong: return "strong";
    case Mode::kWeak: return "weak";
    case Mode::kOracleSweep: return "oracle-sweep";
    case Mode::kGoodness: return "goodness";
    case Mode::kEdgecover: return "edgecover";
    case Mode::kNaiveCompare: return "naive-compare";
  }
  return "?";
}

inline Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::kStrong, Mode::kWeak, Mode::kOracleSweep, Mode::kGoodness, Mode::kEdgecover,
                 Mode::kNaiveCompare})
    if (s == mode_name(m)) return m;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw std::invalid_argument("unknown format '" + s + "' (expected csv or json)");
}

/// Layer sizes for the layered construction: a preset, optionally with some
/// of a1, a2, a3 pinned.
struct ParamsSpec {
  enum class Preset { kDefault, kCompact };
  Preset preset = Preset::kDefault;
  std::optional<std::size_t> a1, a2, a3;

  ConstructionParams resolve(std::size_t n, double p, std::size_t s) const {
    ConstructionParams base;
    if (a1 && a2 && a3) {
      base = make_params(p, *a1, *a2, *a3);
    } else {
      base = preset == Preset::kCompact ? compact_params(n, p, s) : default_params(n, p, s);
      if (a1) base.a1 = *a1;
      if (a2) base.a2 = *a2;
      if (a3) base.a3 = *a3;
    }
    validate_params(base, n);
    return base;
  }
};

/// Parses "a1=..,a2=..,a3=..", "default" or "compact", or a preset followed
/// by overrides ("compact,a1=30").
inline ParamsSpec parse_params_spec(const std::string& text) {
  ParamsSpec spec;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item == "default") {
      spec.preset = ParamsSpec::Preset::kDefault;
      continue;
    }
    if (item == "compact") {
      spec.preset = ParamsSpec::Preset::kCompact;
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--params: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty() || val[0] == '-')
      throw std::invalid_argument("--params: value for " + key + " is not a non-negative integer");
    if (key == "a1") spec.a1 = v;
    else if (key == "a2") spec.a2 = v;
    else if (key == "a3") spec.a3 = v;
    else throw std::invalid_argument("--params: unknown key '" + key + "'");
  }
  return spec;
}

struct ExperimentConfig {
  Mode mode = Mode::kStrong;
  std::vector<std::size_t> n_values;
  double p = 0.5;
  std::vector<std::size_t> s_values{3};
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t jobs = 1;
  ParamsSpec params;
  // goodness
  std::size_t t = 2;
  double gamma = 0.05;
  std::size_t samples = 200;
  // edgecover (n is the layer size a)
  std::size_t pairs = 10'000;
  // oracle-sweep; the wsat budget admits K_7
  OracleOptions oracle{24, 21, 0};
  bool timing = false;
  std::string out_path;
  OutputFormat out_format = OutputFormat::kCsv;
};

/// One trial. Fields a mode does not produce stay empty (CSV) / null (JSON).
struct ExperimentRecord {
  std::string mode;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t s = 0;
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> edge_count;
  std::optional<double> formula_baseline;
  std::optional<double> ratio;
  bool verified = false;
  // strong, naive-compare
  std::optional<std::size_t> b2_size, f_size, fprime_size, glued_edges, k;
  std::optional<std::size_t> a1, a2, a3;
  // naive-compare
  std::optional<std::size_t> naive_edge_count, naive_picked;
  std::optional<double> naive_ratio;  // naive_edge_count / edge_count
  // weak
  std::optional<bool> weak_construct_ok, strongly_saturated;
  // oracle-sweep
  std::optional<std::size_t> oracle_sat, oracle_wsat;
  // goodness
  std::optional<std::size_t> p1_failures, p2_failures;
  // edgecover
  std::optional<double> measured_fraction, bound;
  std::optional<double> wall_time_ms;
};

/// Fixed CSV column order; JSON objects use the same keys.
inline const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols{
      "mode",          "n",                 "p",          "s",           "trial_index",  "seed",
      "edge_count",    "formula_baseline",  "ratio",      "verified",    "b2_size",      "f_size",
      "fprime_size",   "glued_edges",       "k",          "a1",          "a2",           "a3",
      "naive_edge_count", "naive_picked",   "naive_ratio", "weak_construct_ok", "strongly_saturated",
      "oracle_sat",    "oracle_wsat",       "p1_failures", "p2_failures", "measured_fraction", "bound",
      "wall_time_ms"};
  return cols;
}

namespace detail {

inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

using Cell = std::optional<nlohmann::ordered_json>;

inline std::vector<std::pair<std::string, Cell>> record_cells(const ExperimentRecord& r) {
  auto opt = [](const auto& o) -> Cell {
    if (!o) return std::nullopt;
    return nlohmann::ordered_json(*o);
  };
  return {{"mode", nlohmann::ordered_json(r.mode)},
          {"n", nlohmann::ordered_json(r.n)},
          {"p", nlohmann::ordered_json(r.p)},
          {"s", nlohmann::ordered_json(r.s)},
          {"trial_index", nlohmann::ordered_json(r.trial_index)},
          {"seed", nlohmann::ordered_json(r.seed)},
          {"edge_count", opt(r.edge_count)},
          {"formula_baseline", opt(r.formula_baseline)},
          {"ratio", opt(r.ratio)},
          {"verified", nlohmann::ordered_json(r.verified)},
          {"b2_size", opt(r.b2_size)},
          {"f_size", opt(r.f_size)},
          {"fprime_size", opt(r.fprime_size)},
          {"glued_edges", opt(r.glued_edges)},
          {"k", opt(r.k)},
          {"a1", opt(r.a1)},
          {"a2", opt(r.a2)},
          {"a3", opt(r.a3)},
          {"naive_edge_count", opt(r.naive_edge_count)},
          {"naive_picked", opt(r.naive_picked)},
          {"naive_ratio", opt(r.naive_ratio)},
          {"weak_construct_ok", opt(r.weak_construct_ok)},
          {"strongly_saturated", opt(r.strongly_saturated)},
          {"oracle_sat", opt(r.oracle_sat)},
          {"oracle_wsat", opt(r.oracle_wsat)},
          {"p1_failures", opt(r.p1_failures)},
          {"p2_failures", opt(r.p2_failures)},
          {"measured_fraction", opt(r.measured_fraction)},
          {"bound", opt(r.bound)},
          {"wall_time_ms", opt(r.wall_time_ms)}};
}

inline std::string csv_cell(const Cell& c) {
  if (!c) return "";
  const auto& j = *c;
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_float()) return fmt_double(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  const auto& cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const ExperimentRecord& r : records) {
    const auto cells = detail::record_cells(r);
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << detail::csv_cell(cells[i].second);
    out << '\n';
  }
}

inline void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ExperimentRecord& r : records) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (auto& [key, cell] : detail::record_cells(r)) obj[key] = cell ? *cell : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

inline void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records, OutputFormat format) {
  if (format == OutputFormat::kJson) write_json(out, records);
  else write_csv(out, records);
}

inline void write_records_file(const std::string& path, const std::vector<ExperimentRecord>& records,
                               OutputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_records(out, records, format);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct SummaryRow {
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t trials = 0;
  std::size_t verified = 0;
  std::optional<double> mean_ratio, min_ratio, max_ratio;

  double pass_rate() const { return trials ? static_cast<double>(verified) / static_cast<double>(trials) : 0.0; }
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<SummaryRow> summary;  // keyed by (n, s), ascending

  bool all_verified() const {
    return std::all_of(records.begin(), records.end(), [](const ExperimentRecord& r) { return r.verified; });
  }
};

inline std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  std::map<std::pair<std::size_t, std::size_t>, SummaryRow> rows;
  std::map<std::pair<std::size_t, std::size_t>, double> sums;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  for (const ExperimentRecord& r : records) {
    const auto key = std::pair{r.n, r.s};
    SummaryRow& row = rows[key];
    row.n = r.n;
    row.s = r.s;
    ++row.trials;
    if (r.verified) ++row.verified;
    if (r.ratio) {
      sums[key] += *r.ratio;
      ++counts[key];
      row.min_ratio = row.min_ratio ? std::min(*row.min_ratio, *r.ratio) : *r.ratio;
      row.max_ratio = row.max_ratio ? std::max(*row.max_ratio, *r.ratio) : *r.ratio;
    }
  }
  std::vector<SummaryRow> out;
  for (auto& [key, row] : rows) {
    if (counts[key]) row.mean_ratio = sums[key] / static_cast<double>(counts[key]);
    out.push_back(row);
  }
  return out;
}

inline void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "n,s,trials,verified,pass_rate,mean_ratio,min_ratio,max_ratio\n";
  auto cell = [](const std::optional<double>& x) { return x ? detail::fmt_double(*x) : std::string(); };
  for (const SummaryRow& r : rows)
    out << r.n << ',' << r.s << ',' << r.trials << ',' << r.verified << ',' << detail::fmt_double(r.pass_rate())
        << ',' << cell(r.mean_ratio) << ',' << cell(r.min_ratio) << ',' << cell(r.max_ratio) << '\n';
}

struct ConvergenceRow {
  std::size_t n = 0;
  double mean_ratio = 0.0;
  std::size_t trials = 0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // ascending n
  bool trend = false;                // mean ratio non-increasing in n
  double spearman = 0.0;             // rank correlation of n against mean ratio
};

namespace detail {

inline std::vector<double> ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> idx(xs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const auto m = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= m;
  mb /= m;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace detail

/// Mean ratio per n over records that carry a ratio. Needs at least two
/// distinct n.
inline ConvergenceTable convergence_table(const std::vector<ExperimentRecord>& records) {
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  for (const ExperimentRecord& r : records) {
    if (!r.ratio) continue;
    auto& [sum, count] = acc[r.n];
    sum += *r.ratio;
    ++count;
  }
  if (acc.size() < 2) throw std::invalid_argument("convergence_table: need records for at least two distinct n");
  ConvergenceTable table;
  for (const auto& [n, sc] : acc) table.rows.push_back({n, sc.first / static_cast<double>(sc.second), sc.second});
  table.trend = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (table.rows[i].mean_ratio > table.rows[i - 1].mean_ratio) table.trend = false;
  std::vector<double> ns, ms;
  for (const auto& row : table.rows) {
    ns.push_back(static_cast<double>(row.n));
    ms.push_back(row.mean_ratio);
  }
  table.spearman = detail::pearson(detail::ranks(ns), detail::ranks(ms));
  return table;
}

inline void write_convergence(std::ostream& out, const ConvergenceTable& table) {
  out << "n,trials,mean_ratio\n";
  for (const auto& r : table.rows) out << r.n << ',' << r.trials << ',' << detail::fmt_double(r.mean_ratio) << '\n';
  out << "trend," << (table.trend ? "true" : "false") << ",spearman=" << detail::fmt_double(table.spearman) << '\n';
}

/// Rejects configurations before any work is done.
inline void validate_config(const ExperimentConfig& c) {
  if (c.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (c.n_values.empty()) throw std::invalid_argument("experiment: at least one n is required");
  if (c.s_values.empty()) throw std::invalid_argument("experiment: at least one s is required");
  for (std::size_t s : c.s_values)
    if (s < 3) throw std::invalid_argument("experiment: s must be >= 3");
  if (c.mode != Mode::kOracleSweep && !(c.p > 0.0 && c.p < 1.0))
    throw std::invalid_argument("experiment: p must lie in (0, 1)");
  switch (c.mode) {
    case Mode::kStrong:
    case Mode::kNaiveCompare:
      for (std::size_t n : c.n_values)
        for (std::size_t s : c.s_values) {
          if (c.mode == Mode::kNaiveCompare && s != 3)
            throw std::invalid_argument("experiment: naive-compare supports s = 3 only");
          c.params.resolve(n, c.p, s);
        }
      break;
    case Mode::kWeak:
      for (std::size_t n : c.n_values)
        for (std::size_t s : c.s_values)
          if (n < s) throw std::invalid_argument("experiment: weak mode needs n >= s");
      break;
    case Mode::kOracleSweep:
      for (std::size_t n : c.n_values)
        if (n * (n - 1) / 2 > std::min(c.oracle.max_edges_sat, c.oracle.max_edges_wsat))
          throw std::invalid_argument("experiment: oracle-sweep host K_" + std::to_string(n) +
                                      " exceeds the oracle edge budget");
      break;
    case Mode::kGoodness:
      if (c.t < 1) throw std::invalid_argument("experiment: t must be >= 1");
      if (!(c.gamma > 0.0 && c.gamma <= 1.0)) throw std::invalid_argument("experiment: gamma must lie in (0, 1]");
      for (std::size_t n : c.n_values) {
        if (c.t > n) throw std::invalid_argument("experiment: t exceeds n");
        const auto size = static_cast<std::size_t>(std::ceil(c.gamma / 2.0 * static_cast<double>(n) - 1e-12));
        if (size < c.t || 2 * size > n)
          throw std::invalid_argument("experiment: ceil(gamma n / 2) must lie in [t, n / 2]");
      }
      break;
    case Mode::kEdgecover:
      if (c.pairs < 1) throw std::invalid_argument("experiment: pairs must be >= 1");
      for (std::size_t n : c.n_values)
        if (n < 3) throw std::invalid_argument("experiment: edgecover layer size must be >= 3");
      break;
  }
}

namespace detail {

struct Task {
  std::size_t n;
  std::size_t s;
  std::size_t trial;
};

inline double strong_baseline(std::size_t n, double p) {
  return static_cast<double>(n) * std::log(static_cast<double>(n)) / std::log(1.0 / (1.0 - p));
}

inline ExperimentRecord run_task(const ExperimentConfig& c, const Task& task) {
  const OracleOptions& oracle = c.oracle;
  ExperimentRecord r;
  r.mode = mode_name(c.mode);
  r.n = task.n;
  r.p = c.p;
  r.s = task.s;
  r.trial_index = task.trial;
  r.seed = derive_seed(c.master_seed, task.trial);
  Rng rng(c.master_seed, task.trial);
  const auto start = std::chrono::steady_clock::now();

  switch (c.mode) {
    case Mode::kStrong: {
      const Graph g = gnp_generate(task.n, c.p, rng);
      const ConstructionParams params = c.params.resolve(task.n, c.p, task.s);
      const LayeredResult res = layered_construction(g, c.p, task.s, params, rng);
      r.edge_count = res.graph.edge_count();
      r.formula_baseline = strong_baseline(task.n, c.p);
      r.ratio = static_cast<double>(*r.edge_count) / *r.formula_baseline;
      r.verified = res.report.is_saturated();
      r.b2_size = res.partition.b2.size();
      r.f_size = res.diagnostics.f_size;
      r.fprime_size = res.diagnostics.fprime_size;
      r.glued_edges = res.diagnostics.glued_edges;
      r.k = res.diagnostics.params.k;
      r.a1 = params.a1;
      r.a2 = params.a2;
      r.a3 = params.a3;
      break;
    }
    case Mode::kNaiveCompare: {
      const Graph g = gnp_generate(task.n, c.p, rng);
      const ConstructionParams params = c.params.resolve(task.n, c.p, task.s);
      Rng layered_rng = rng.child(1);
      Rng naive_rng = rng.child(2);
      const LayeredResult res = layered_construction(g, c.p, task.s, params, layered_rng);
      const NaiveConstruction naive = naive_sequential_construction(g, naive_rng);
      const SaturationReport naive_report = is_ks_saturated(naive.graph, g, 3);
      r.edge_count = res.graph.edge_count();
      r.formula_baseline = strong_baseline(task.n, c.p);
      r.ratio = static_cast<double>(*r.edge_count) / *r.formula_baseline;
      r.verified = res.report.is_saturated() && naive_report.is_saturated();
      r.b2_size = res.partition.b2.size();
      r.glued_edges = res.diagnostics.glued_edges;
      r.k = res.diagnostics.params.k;
      r.a1 = params.a1;
      r.a2 = params.a2;
      r.a3 = params.a3;
      r.naive_edge_count = naive.graph.edge_count();
      r.naive_picked = naive.picked.size();
      r.naive_ratio = static_cast<double>(*r.naive_edge_count) / static_cast<double>(*r.edge_count);
      break;
    }
    case Mode::kWeak: {
      const Graph g = gnp_generate(task.n, c.p, rng);
      const WeakSatOutcome out = construct_weak_sat(g, task.s, rng);
      const auto formula = wsat_formula(static_cast<std::int64_t>(task.n), static_cast<std::int64_t>(task.s));
      r.formula_baseline = static_cast<double>(formula);
      r.weak_construct_ok = out.succeeded();
      r.strongly_saturated = strongly_saturated_in_kn(g, task.s);
      if (out.succeeded()) {
        r.edge_count = out.graph.edge_count();
        r.ratio = static_cast<double>(*r.edge_count) / *r.formula_baseline;
        r.verified = static_cast<std::int64_t>(*r.edge_count) == formula && is_weakly_saturated(out.graph, g, task.s);
      }
      break;
    }
    case Mode::kOracleSweep: {
      const Graph g = complete_graph(task.n);
      const OracleResult sat = exact_sat(g, task.s, oracle);
      const OracleResult wsat = exact_wsat(g, task.s, oracle);
      const auto formula = wsat_formula(static_cast<std::int64_t>(task.n), static_cast<std::int64_t>(task.s));
      r.p = 1.0;
      r.edge_count = sat.value;
      r.formula_baseline = static_cast<double>(formula);
      r.ratio = static_cast<double>(sat.value) / *r.formula_baseline;
      r.oracle_sat = sat.value;
      r.oracle_wsat = wsat.value;
      r.verified = sat.exhausted && wsat.exhausted && static_cast<std::int64_t>(sat.value) == formula &&
                   static_cast<std::int64_t>(wsat.value) == formula &&
                   is_ks_saturated(sat.witness, g, task.s).is_saturated() &&
                   is_weakly_saturated(wsat.witness, g, task.s);
      break;
    }
    case Mode::kGoodness: {
      const Graph g = gnp_generate(task.n, c.p, rng);
      Rng p1_rng = rng.child(1);
      Rng p2_rng = rng.child(2);
      const GoodnessReport p1 = check_p1(g, c.t, c.gamma, CheckMode::kSampled, p1_rng, c.samples);
      const GoodnessReport p2 = check_p2(g, c.t, c.gamma, c.samples, p2_rng);
      r.edge_count = g.edge_count();
      r.p1_failures = p1.failures;
      r.p2_failures = p2.failures;
      r.verified = p1.passed && p2.passed;
      break;
    }
    case Mode::kEdgecover: {
      const EdgecoverResult res = edgecover_experiment(task.n, c.p, task.s, c.pairs, rng);
      r.measured_fraction = res.measured;
      r.bound = res.bound;
      r.edge_count = res.inner_edges;
      r.verified = res.measured <= res.bound;
      break;
    }
  }
  if (c.timing)
    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace detail

/// Runs every (n, s, trial) task on up to `jobs` threads. Trial i of every
/// (n, s) uses the stream derive_seed(master_seed, i); records come back
/// ordered by n, then s, then trial_index.
inline ExperimentResult run(const ExperimentConfig& config) {
  validate_config(config);
  std::vector<detail::Task> tasks;
  for (std::size_t n : config.n_values)
    for (std::size_t s : config.s_values) {
      if (config.mode == Mode::kOracleSweep) {
        if (s <= n) tasks.push_back({n, s, 0});
        continue;
      }
      for (std::size_t t = 0; t < config.trials; ++t) tasks.push_back({n, s, t});
    }
  std::sort(tasks.begin(), tasks.end(), [](const detail::Task& a, const detail::Task& b) {
    return std::tie(a.n, a.s, a.trial) < std::tie(b.n, b.s, b.trial);
  });

  ExperimentResult result;
  result.records.resize(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        result.records[i] = detail::run_task(config, tasks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  result.summary = summarize(result.records);
  return result;
}

}  // namespace satlab
