// satlab: command-line front end.
//
//   satlab gen        --n N --p P --seed S [--out PATH]
//   satlab saturate   (--in PATH | --n N --p P --seed S) --s S [--method layered|naive] [--params ...] [--out PATH]
//   satlab weaksat    (--in PATH | --n N --p P --seed S) --s S [--certificate] [--out PATH]
//   satlab closure    --host PATH --in PATH --s S [--require-full] [--out PATH]
//   satlab oracle     (--in PATH | --complete N | --cycle N) --s S [--kind sat|wsat|both] [--out PATH]
//   satlab experiment --mode M --n LIST [--s LIST] --p P --trials T --seed S --jobs J [--format csv|json] [--out PATH]
//
// Exit status is 0 iff every verification the command performs passed.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "satlab/satlab.hpp"

namespace {

using namespace satlab;

constexpr int kVerifyFailed = 1;
constexpr int kUsageError = 2;

struct HostOptions {
  std::string in;
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
};

void add_host_options(CLI::App* cmd, HostOptions& h) {
  cmd->add_option("--in", h.in, "host graph in edge-list format");
  cmd->add_option("--n", h.n, "vertices of a generated G(n, p) host");
  cmd->add_option("--p", h.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", h.seed, "master seed");
}

Graph load_host(const HostOptions& h) {
  if (!h.in.empty()) return read_graph_file(h.in);
  if (h.n == 0) throw std::invalid_argument("either --in or --n is required");
  return gnp_generate(h.n, h.p, RngHandle{h.seed, 0});
}

void emit_graph(const Graph& g, const std::string& path) {
  if (path.empty() || path == "-") std::cout << serialize_graph(g);
  else write_graph_file(path, g);
}

// A single flat report object, rendered as a one-row CSV or a JSON object.
class Report {
 public:
  template <class T>
  void set(const std::string& key, const T& value) {
    obj_[key] = value;
  }

  void write(std::ostream& out, OutputFormat format) const {
    if (format == OutputFormat::kJson) {
      out << obj_.dump(2) << '\n';
      return;
    }
    bool first = true;
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      out << (first ? "" : ",") << it.key();
      first = false;
    }
    out << '\n';
    first = true;
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      out << (first ? "" : ",");
      first = false;
      const auto& v = it.value();
      if (v.is_string()) out << v.get<std::string>();
      else if (v.is_number_float()) out << detail::fmt_double(v.get<double>());
      else out << v.dump();
    }
    out << '\n';
  }

 private:
  nlohmann::ordered_json obj_ = nlohmann::ordered_json::object();
};

std::vector<std::size_t> parse_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots != std::string::npos) {
        const std::size_t lo = std::stoull(item.substr(0, dots));
        const std::size_t hi = std::stoull(item.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument("empty range");
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
      } else {
        out.push_back(std::stoull(item));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(flag) + ": empty list");
  return out;
}

int cmd_gen(const HostOptions& h, const std::string& out) {
  if (h.n == 0) throw std::invalid_argument("gen: --n is required");
  emit_graph(gnp_generate(h.n, h.p, RngHandle{h.seed, 0}), out);
  return 0;
}

int cmd_saturate(const HostOptions& h, std::size_t s, const std::string& method, const std::string& params_text,
                 const std::string& out, OutputFormat format) {
  const Graph g = load_host(h);
  Rng rng(h.seed, 1);
  Report report;
  report.set("method", method);
  report.set("n", g.vertex_count());
  report.set("host_edges", g.edge_count());
  report.set("s", s);
  Graph result;
  if (method == "layered") {
    const ConstructionParams params = parse_params_spec(params_text).resolve(g.vertex_count(), h.p, s);
    const LayeredResult res = layered_construction(g, h.p, s, params, rng);
    result = res.graph;
    report.set("a1", params.a1);
    report.set("a2", params.a2);
    report.set("a3", params.a3);
    report.set("k", res.diagnostics.params.k);
    report.set("b2_size", res.partition.b2.size());
    report.set("f_size", res.diagnostics.f_size);
    report.set("fprime_size", res.diagnostics.fprime_size);
    report.set("glued_edges", res.diagnostics.glued_edges);
  } else if (method == "naive") {
    if (s != 3) throw std::invalid_argument("saturate: the naive method supports s = 3 only");
    const NaiveConstruction res = naive_sequential_construction(g, rng);
    result = res.graph;
    report.set("picked", res.picked.size());
  } else {
    throw std::invalid_argument("saturate: unknown method '" + method + "'");
  }
  const SaturationReport check = is_ks_saturated(result, g, s);
  report.set("edge_count", result.edge_count());
  report.set("ks_free", check.is_ks_free);
  report.set("incomplete", check.incomplete_edges.size());
  report.set("verified", check.is_saturated());
  if (!out.empty()) emit_graph(result, out);
  report.write(std::cout, format);
  return check.is_saturated() ? 0 : kVerifyFailed;
}

int cmd_weaksat(const HostOptions& h, std::size_t s, bool certificate, const std::string& out, OutputFormat format) {
  const Graph g = load_host(h);
  Rng rng(h.seed, 1);
  const WeakSatOutcome res = construct_weak_sat(g, s, rng);
  const auto formula = wsat_formula(static_cast<std::int64_t>(g.vertex_count()), static_cast<std::int64_t>(s));
  Report report;
  report.set("n", g.vertex_count());
  report.set("s", s);
  report.set("formula", formula);
  report.set("constructed", res.succeeded());
  report.set("base_attempts", res.trace.base_attempts);
  bool ok = res.succeeded();
  if (res.succeeded()) {
    const bool weak = is_weakly_saturated(res.graph, g, s);
    report.set("edge_count", res.graph.edge_count());
    report.set("weakly_saturated", weak);
    ok = ok && weak && static_cast<std::int64_t>(res.graph.edge_count()) == formula;
  } else {
    report.set("failure", res.failure->message);
  }
  if (certificate) {
    const bool cert = strongly_saturated_in_kn(g, s);
    report.set("strongly_saturated", cert);
    ok = ok && cert;
  }
  report.set("verified", ok);
  if (!out.empty() && res.succeeded()) emit_graph(res.graph, out);
  report.write(std::cout, format);
  return ok ? 0 : kVerifyFailed;
}

int cmd_closure(const std::string& host_path, const std::string& in, std::size_t s, bool require_full,
                const std::string& out, OutputFormat format) {
  if (host_path.empty() || in.empty()) throw std::invalid_argument("closure: --host and --in are required");
  const Graph g = read_graph_file(host_path);
  const Graph h = read_graph_file(in);
  const ClosureResult res = bootstrap_closure(h, g, s);
  const bool trace_ok = verify_closure_trace(h, g, s, res.trace);
  const bool full = res.graph == g;
  Report report;
  report.set("n", g.vertex_count());
  report.set("s", s);
  report.set("start_edges", h.edge_count());
  report.set("closure_edges", res.graph.edge_count());
  report.set("host_edges", g.edge_count());
  report.set("steps", res.trace.size());
  report.set("trace_verified", trace_ok);
  report.set("percolates", full);
  if (!out.empty()) emit_graph(res.graph, out);
  report.write(std::cout, format);
  return trace_ok && (!require_full || full) ? 0 : kVerifyFailed;
}

int cmd_oracle(const std::string& in, std::size_t complete, std::size_t cycle, std::size_t s, const std::string& kind,
               std::size_t max_sat, std::size_t max_wsat, const std::string& out, OutputFormat format) {
  Graph g;
  if (!in.empty()) g = read_graph_file(in);
  else if (complete) g = complete_graph(complete);
  else if (cycle) g = cycle_graph(cycle);
  else throw std::invalid_argument("oracle: one of --in, --complete, --cycle is required");
  if (kind != "sat" && kind != "wsat" && kind != "both")
    throw std::invalid_argument("oracle: --kind must be sat, wsat or both");
  OracleOptions options;
  options.max_edges_sat = max_sat;
  options.max_edges_wsat = max_wsat;
  Report report;
  report.set("n", g.vertex_count());
  report.set("host_edges", g.edge_count());
  report.set("s", s);
  bool ok = true;
  std::optional<Graph> witness;
  if (kind != "wsat") {
    const OracleResult r = exact_sat(g, s, options);
    const bool good = r.exhausted && is_ks_saturated(r.witness, g, s).is_saturated();
    report.set("sat", r.value);
    report.set("sat_nodes", r.nodes_explored);
    report.set("sat_verified", good);
    ok = ok && good;
    witness = r.witness;
  }
  if (kind != "sat") {
    const OracleResult r = exact_wsat(g, s, options);
    const bool good = r.exhausted && is_weakly_saturated(r.witness, g, s);
    report.set("wsat", r.value);
    report.set("wsat_nodes", r.nodes_explored);
    report.set("wsat_verified", good);
    ok = ok && good;
    if (!witness) witness = r.witness;
  }
  report.set("verified", ok);
  if (!out.empty() && witness) emit_graph(*witness, out);
  report.write(std::cout, format);
  return ok ? 0 : kVerifyFailed;
}

int cmd_experiment(ExperimentConfig config, const std::string& n_text, const std::string& s_text,
                   const std::string& params_text, const std::string& summary_path, bool convergence) {
  config.n_values = parse_list(n_text, "--n");
  config.s_values = parse_list(s_text, "--s");
  config.params = parse_params_spec(params_text);
  const ExperimentResult result = run(config);
  if (config.out_path.empty() || config.out_path == "-") write_records(std::cout, result.records, config.out_format);
  else write_records_file(config.out_path, result.records, config.out_format);

  std::ostringstream summary;
  write_summary(summary, result.summary);
  if (convergence) {
    std::vector<ExperimentRecord> verified;
    for (const auto& r : result.records)
      if (r.verified) verified.push_back(r);
    write_convergence(summary, convergence_table(verified));
  }
  if (summary_path.empty()) {
    std::cerr << summary.str();
  } else {
    std::ofstream f(summary_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + summary_path + "' for writing");
    f << summary.str();
  }
  return result.all_verified() ? 0 : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satlab: saturation experiments on random graphs"};
  app.require_subcommand(1);
  std::string format_text = "csv";
  std::string out;

  HostOptions gen_host;
  auto* gen = app.add_subcommand("gen", "sample G(n, p) and print it as an edge list");
  gen->add_option("--n", gen_host.n, "vertices")->required();
  gen->add_option("--p", gen_host.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_host.seed, "master seed");
  gen->add_option("--out", out, "output path (default stdout)");

  HostOptions sat_host;
  std::size_t sat_s = 3;
  std::string method = "layered";
  std::string params_text = "default";
  auto* sat = app.add_subcommand("saturate", "build and verify a K_s-saturated subgraph");
  add_host_options(sat, sat_host);
  sat->add_option("--s", sat_s, "clique size")->check(CLI::PositiveNumber);
  sat->add_option("--method", method, "layered or naive");
  sat->add_option("--params", params_text, "default | compact | a1=..,a2=..,a3=..");
  sat->add_option("--out", out, "write the subgraph here");
  sat->add_option("--format", format_text, "csv or json");

  HostOptions weak_host;
  std::size_t weak_s = 3;
  bool certificate = false;
  auto* weak = app.add_subcommand("weaksat", "build and verify a weakly K_s-saturated subgraph");
  add_host_options(weak, weak_host);
  weak->add_option("--s", weak_s, "clique size")->check(CLI::PositiveNumber);
  weak->add_flag("--certificate", certificate, "also check the lower-bound certificate");
  weak->add_option("--out", out, "write the subgraph here");
  weak->add_option("--format", format_text, "csv or json");

  std::string closure_host, closure_in;
  std::size_t closure_s = 3;
  bool require_full = false;
  auto* clo = app.add_subcommand("closure", "K_s-bootstrap closure of a subgraph inside a host");
  clo->add_option("--host", closure_host, "host graph")->required();
  clo->add_option("--in", closure_in, "starting subgraph")->required();
  clo->add_option("--s", closure_s, "clique size")->check(CLI::PositiveNumber);
  clo->add_flag("--require-full", require_full, "fail unless the closure is the whole host");
  clo->add_option("--out", out, "write the closure here");
  clo->add_option("--format", format_text, "csv or json");

  std::string oracle_in, kind = "both";
  std::size_t complete = 0, cycle = 0, oracle_s = 3;
  OracleOptions budgets;
  auto* orc = app.add_subcommand("oracle", "exact sat and w-sat on a tiny host");
  orc->add_option("--in", oracle_in, "host graph");
  orc->add_option("--complete", complete, "use K_n");
  orc->add_option("--cycle", cycle, "use C_n");
  orc->add_option("--s", oracle_s, "clique size")->check(CLI::PositiveNumber);
  orc->add_option("--kind", kind, "sat, wsat or both");
  orc->add_option("--max-edges-sat", budgets.max_edges_sat, "edge budget of exact_sat");
  orc->add_option("--max-edges-wsat", budgets.max_edges_wsat, "edge budget of exact_wsat");
  orc->add_option("--out", out, "write a witness here");
  orc->add_option("--format", format_text, "csv or json");

  ExperimentConfig config;
  std::string mode_text = "strong", n_text, s_text = "3", exp_params = "default", summary_path;
  bool convergence = false;
  auto* exp = app.add_subcommand("experiment", "seeded multi-trial experiment");
  exp->add_option("--mode", mode_text, "strong | weak | oracle-sweep | goodness | edgecover | naive-compare");
  exp->add_option("--n", n_text, "list of n, e.g. 2000,4000 or 4..7")->required();
  exp->add_option("--s", s_text, "list of s");
  exp->add_option("--p", config.p, "edge probability");
  exp->add_option("--trials", config.trials, "trials per (n, s)");
  exp->add_option("--seed", config.master_seed, "master seed");
  exp->add_option("--jobs", config.jobs, "worker threads");
  exp->add_option("--params", exp_params, "default | compact | a1=..,a2=..,a3=..");
  exp->add_option("--t", config.t, "goodness: t");
  exp->add_option("--gamma", config.gamma, "goodness: gamma");
  exp->add_option("--samples", config.samples, "goodness: samples per property");
  exp->add_option("--pairs", config.pairs, "edgecover: sampled pairs");
  exp->add_flag("--timing", config.timing, "fill wall_time_ms (output is then not reproducible)");
  exp->add_option("--summary", summary_path, "write the summary here instead of stderr");
  exp->add_flag("--convergence", convergence, "append the convergence table to the summary");
  exp->add_option("--out", config.out_path, "records file (default stdout)");
  exp->add_option("--format", format_text, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    const OutputFormat format = parse_format(format_text);
    if (*gen) return cmd_gen(gen_host, out);
    if (*sat) return cmd_saturate(sat_host, sat_s, method, params_text, out, format);
    if (*weak) return cmd_weaksat(weak_host, weak_s, certificate, out, format);
    if (*clo) return cmd_closure(closure_host, closure_in, closure_s, require_full, out, format);
    if (*orc) return cmd_oracle(oracle_in, complete, cycle, oracle_s, kind, budgets.max_edges_sat,
                                budgets.max_edges_wsat, out, format);
    if (*exp) {
      config.mode = parse_mode(mode_text);
      config.out_format = format;
      return cmd_experiment(config, n_text, s_text, exp_params, summary_path, convergence);
    }
  } catch (const std::exception& e) {
    std::cerr << "satlab: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
