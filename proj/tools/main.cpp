// spreadnet command-line interface. Thin wrappers over the C API: every
// subcommand reads a JSON config, runs one pipeline stage, writes CSV/JSON and
// a sidecar holding the fully resolved config.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spreadnet.h"

using nlohmann::json;

namespace {

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

int status_exit_code(sn_status s) {
  switch (s) {
    case SN_OK:
      return 0;
    case SN_ERR_NUMERIC:
      return 3;
    case SN_ERR_IO:
      return 4;
    default:
      return 2;
  }
}

void check(sn_status s) {
  if (s != SN_OK)
    fail(status_exit_code(s), sn_last_error());
}

// ----- config plumbing ------------------------------------------------

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(4, "cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    fail(2, std::string("config is not valid JSON: ") + e.what());
  }
  // A sidecar is itself a valid config: unwrap the resolved block.
  if (cfg.is_object() && cfg.contains("config"))
    return cfg["config"];
  return cfg;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object())
    fail(2, where + ": expected a JSON object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      fail(2, where + ": unknown key \"" + item.key() + "\"");
}

double get_num(const json& obj, const std::string& key, double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required)
      fail(2, "missing required key \"" + key + "\"");
    return fallback;
  }
  if (!obj[key].is_number())
    fail(2, "key \"" + key + "\" must be a number");
  return obj[key].get<double>();
}

std::string get_str(const json& obj, const std::string& key, const std::string& fallback,
                    bool required = false) {
  if (!obj.contains(key)) {
    if (required)
      fail(2, "missing required key \"" + key + "\"");
    return fallback;
  }
  if (!obj[key].is_string())
    fail(2, "key \"" + key + "\" must be a string");
  return obj[key].get<std::string>();
}

std::vector<double> parse_grid(const json& node, const std::string& where) {
  std::vector<double> values;
  if (node.is_number()) {
    values.push_back(node.get<double>());
  } else if (node.is_array()) {
    for (const auto& v : node) {
      if (!v.is_number())
        fail(2, where + ": grid entries must be numbers");
      values.push_back(v.get<double>());
    }
  } else if (node.is_object()) {
    reject_unknown(node, {"from", "to", "step"}, where);
    const double from = get_num(node, "from", 0.0, true);
    const double to = get_num(node, "to", 0.0, true);
    const double step = get_num(node, "step", 0.0, true);
    if (!(step > 0.0) || to < from)
      fail(2, where + ": need from <= to and step > 0");
    for (double x = from; x <= to + 0.5 * step; x += step) values.push_back(x);
  } else {
    fail(2, where + ": expected number, array or {from,to,step}");
  }
  if (values.empty())
    fail(2, where + ": empty grid");
  return values;
}

struct KernelHandle {
  sn_kernel* ptr = nullptr;
  ~KernelHandle() { sn_kernel_free(ptr); }
};

struct GraphHandle {
  sn_graph* ptr = nullptr;
  ~GraphHandle() { sn_graph_free(ptr); }
};

struct TableHandle {
  sn_table* ptr = nullptr;
  ~TableHandle() { sn_table_free(ptr); }
};

// Kernel JSON: {"gamma": 2.5, "m": 1, "k_cut": 473, "theta": 0.0}; theta is
// optional, theta_override (when >= 0) replaces it.
void make_kernel(const json& node, KernelHandle& out, double theta_override = -1.0) {
  reject_unknown(node, {"gamma", "m", "k_cut", "theta"}, "kernel");
  const double gamma = get_num(node, "gamma", 0.0, true);
  const int m = static_cast<int>(get_num(node, "m", 1.0));
  const int k_cut = static_cast<int>(get_num(node, "k_cut", 0.0, true));
  double theta = get_num(node, "theta", 0.0);
  if (theta_override >= 0.0)
    theta = theta_override;
  check(sn_kernel_create_power_law(gamma, m, k_cut, theta, &out.ptr));
}

sn_model_params make_params(const json& cfg) {
  return sn_model_params{get_num(cfg, "alpha", 0.0, true), get_num(cfg, "lambda", 0.0, true),
                         get_num(cfg, "beta", 0.0, true)};
}

// ----- I/O helpers ----------------------------------------------------

struct Options {
  std::string config_path;
  std::string out_path;
  std::string sidecar_path;
  long long jobs = 0;
  bool has_seed = false;
  unsigned long long seed = 0;
};

uint64_t resolve_seed(const Options& opt, json& cfg) {
  if (opt.has_seed) {
    cfg["seed"] = opt.seed;
    return opt.seed;
  }
  if (cfg.contains("seed")) {
    if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
      fail(2, "seed must be an integer");
    return cfg["seed"].get<uint64_t>();
  }
  // Stochastic command without an explicit seed: draw one and record it in
  // the sidecar so the run can be replayed.
  std::random_device rd;
  const uint64_t seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
  cfg["seed"] = seed;
  return seed;
}

void write_sidecar(const std::string& command, const Options& opt, const json& resolved) {
  json sidecar;
  sidecar["command"] = command;
  sidecar["version"] = sn_version();
  sidecar["config"] = resolved;
  std::string path = opt.sidecar_path;
  if (path.empty())
    path = opt.out_path.empty() ? "spreadnet.sidecar.json" : opt.out_path + ".sidecar.json";
  std::ofstream out(path);
  if (!out)
    fail(4, "cannot write sidecar: " + path);
  out << sidecar.dump(2) << "\n";
}

std::ostream& open_output(const Options& opt, std::ofstream& file) {
  if (opt.out_path.empty() || opt.out_path == "-")
    return std::cout;
  file.open(opt.out_path);
  if (!file)
    fail(4, "cannot open output file: " + opt.out_path);
  return file;
}

std::string format_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_table_csv(const sn_table* table, std::ostream& out) {
  const int cols = sn_table_column_count(table);
  const long long rows = sn_table_row_count(table);
  for (int c = 0; c < cols; ++c) out << (c ? "," : "") << sn_table_column_name(table, c);
  out << "\n";
  for (long long r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c)
      out << (c ? "," : "") << format_num(sn_table_column(table, c)[r]);
    out << "\n";
  }
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

Csv read_csv_stream(std::istream& in, const std::string& name) {
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.empty())
      continue;
    if (first) {
      first = false;
      char* end = nullptr;
      std::strtod(cells[0].c_str(), &end);
      const bool numeric = end && *end == '\0' && end != cells[0].c_str();
      if (!numeric) {
        csv.header = cells;
        csv.columns.resize(cells.size());
        continue;
      }
      csv.columns.resize(cells.size());
      for (std::size_t c = 0; c < cells.size(); ++c)
        csv.header.push_back("col" + std::to_string(c));
    }
    if (cells.size() != csv.columns.size())
      fail(4, name + ": ragged CSV row");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      char* end = nullptr;
      const double v = std::strtod(cells[c].c_str(), &end);
      if (end == cells[c].c_str())
        fail(4, name + ": non-numeric cell \"" + cells[c] + "\"");
      csv.columns[c].push_back(v);
    }
  }
  if (csv.columns.empty() || csv.columns[0].empty())
    fail(4, name + ": no data rows");
  return csv;
}

Csv read_csv(const std::string& path) {
  if (path == "-")
    return read_csv_stream(std::cin, "stdin");
  std::ifstream in(path);
  if (!in)
    fail(4, "cannot open series file: " + path);
  return read_csv_stream(in, path);
}

// Series input: "t,count"-style CSV; `column` selects by header name, the
// default is the last column.
std::vector<double> read_series(const std::string& path, const std::string& column) {
  const Csv csv = read_csv(path);
  std::size_t idx = csv.columns.size() - 1;
  if (!column.empty()) {
    const auto it = std::find(csv.header.begin(), csv.header.end(), column);
    if (it == csv.header.end())
      fail(4, path + ": no column named \"" + column + "\"");
    idx = static_cast<std::size_t>(it - csv.header.begin());
  }
  return csv.columns[idx];
}

json theta_to_json(const sn_tv_params& t) {
  return json{{"p", t.p},   {"eta", t.eta}, {"z", t.z},
              {"vartheta", t.vartheta}, {"c_p", t.c_p}, {"c", t.c}};
}

sn_tv_params theta_from_json(const json& node) {
  reject_unknown(node, {"p", "eta", "z", "vartheta", "c_p", "c"}, "theta");
  return sn_tv_params{get_num(node, "p", 0.0, true),   get_num(node, "eta", 0.0, true),
                      get_num(node, "z", 0.0, true),   get_num(node, "vartheta", 0.0, true),
                      get_num(node, "c_p", 0.0, true), get_num(node, "c", 0.0, true)};
}

json fit_report_json(const sn_fit_report& fit) {
  json out;
  out["theta"] = theta_to_json(fit.theta);
  out["stderr"] = std::vector<double>(fit.stderr_, fit.stderr_ + 6);
  out["cost"] = fit.cost;
  out["iterations"] = fit.iterations;
  out["converged"] = fit.converged != 0;
  out["degenerate"] = fit.degenerate != 0;
  out["period_unidentifiable"] = fit.period_unidentifiable != 0;
  out["restarts_used"] = fit.restarts_used;
  return out;
}

// ----- subcommands ----------------------------------------------------

int cmd_ensemble(json cfg, const Options& opt) {
  reject_unknown(cfg, {"kernel", "alpha", "lambda", "beta", "seed"}, "ensemble");
  if (!cfg.contains("kernel"))
    fail(2, "ensemble: missing kernel");
  KernelHandle kernel;
  make_kernel(cfg["kernel"], kernel);

  json report;
  double mean_k = 0, mean_k2 = 0, het = 0;
  check(sn_kernel_moments(kernel.ptr, &mean_k, &mean_k2, &het));
  report["mean_k"] = mean_k;
  report["mean_k2"] = mean_k2;
  report["heterogeneity"] = het;
  double rho_c_unc = 0, lambda_m = 0, rho_c_corr = 0;
  check(sn_kernel_threshold_uncorrelated(kernel.ptr, &rho_c_unc));
  check(sn_kernel_largest_eigenvalue(kernel.ptr, &lambda_m));
  check(sn_kernel_threshold_correlated(kernel.ptr, &rho_c_corr));
  report["rho_c_uncorrelated"] = rho_c_unc;
  report["lambda_max"] = lambda_m;
  report["rho_c"] = rho_c_corr;

  int k_min = 0, k_max = 0;
  check(sn_kernel_degree_range(kernel.ptr, &k_min, &k_max));
  json annd_table = json::array();
  for (int k = k_min; k <= k_max; ++k) {
    double a = 0;
    if (sn_kernel_annd(kernel.ptr, k, &a) == SN_OK)
      annd_table.push_back(json{{"k", k}, {"annd", a}});
  }
  report["annd"] = annd_table;

  if (cfg.contains("alpha")) {
    const sn_model_params p = make_params(cfg);
    double bound = 0;
    check(sn_kernel_eigen_lower_bound(kernel.ptr, p.alpha, p.lambda, p.beta, &bound));
    report["jacobian_sq_lower_bound"] = bound;
    double tau = 0;
    if (sn_predict_tau(p, rho_c_corr, &tau) == SN_OK)
      report["tau"] = tau;
  }

  std::ofstream file;
  open_output(opt, file) << report.dump(2) << "\n";
  write_sidecar("ensemble", opt, cfg);
  return 0;
}

int cmd_sweep(json cfg, const Options& opt) {
  reject_unknown(cfg,
                 {"kernel", "alphas", "thetas", "lambda", "beta", "runs", "n", "dt", "tol",
                  "seed"},
                 "sweep");
  if (!cfg.contains("kernel") || !cfg.contains("alphas"))
    fail(2, "sweep: missing kernel or alphas");
  const std::vector<double> alphas = parse_grid(cfg["alphas"], "alphas");
  std::vector<double> thetas{get_num(cfg["kernel"], "theta", 0.0)};
  if (cfg.contains("thetas"))
    thetas = parse_grid(cfg["thetas"], "thetas");
  const double lambda = get_num(cfg, "lambda", 0.0, true);
  const double beta = get_num(cfg, "beta", 0.0, true);
  const int runs = static_cast<int>(get_num(cfg, "runs", 100));
  const double n = get_num(cfg, "n", 10000);
  const double dt = get_num(cfg, "dt", 0.01);
  const double tol = get_num(cfg, "tol", 1e-7);
  const uint64_t seed = resolve_seed(opt, cfg);

  std::ofstream file;
  std::ostream& out = open_output(opt, file);
  out << "theta,alpha,prevalence,prevalence_stderr,efficiency,efficiency_stderr\n";
  for (double theta : thetas) {
    KernelHandle kernel;
    make_kernel(cfg["kernel"], kernel, theta);
    for (double alpha : alphas) {
      const sn_model_params p{alpha, lambda, beta};
      double pm = 0, ps = 0, em = 0, es = 0;
      check(sn_meanfield_ensemble(kernel.ptr, p, 1.0 / n, runs, seed, static_cast<int>(opt.jobs),
                                  dt, tol, &pm, &ps, &em, &es));
      out << format_num(theta) << "," << format_num(alpha) << "," << format_num(pm) << ","
          << format_num(ps) << "," << format_num(em) << "," << format_num(es) << "\n";
    }
  }
  write_sidecar("sweep", opt, cfg);
  return 0;
}

void build_graph(const json& cfg, uint64_t seed, GraphHandle& graph, json* report) {
  const json& node = cfg.contains("graph") ? cfg["graph"] : cfg;
  if (node.is_string()) {
    check(sn_graph_read_edge_list(node.get<std::string>().c_str(), &graph.ptr));
    return;
  }
  reject_unknown(node, {"model", "n", "m_edges", "gamma", "m", "k_cut", "theta"}, "graph");
  const std::string model = get_str(node, "model", "", true);
  const int n = static_cast<int>(get_num(node, "n", 0.0, true));
  if (model == "ba") {
    const int m_edges = static_cast<int>(get_num(node, "m_edges", 1.0));
    check(sn_graph_generate_ba(n, m_edges, seed, &graph.ptr));
  } else if (model == "config") {
    const double gamma = get_num(node, "gamma", 0.0, true);
    const int m = static_cast<int>(get_num(node, "m", 1.0));
    int k_cut = static_cast<int>(get_num(node, "k_cut", 0.0));
    if (k_cut <= 0)
      check(sn_natural_cutoff(gamma, n, &k_cut));
    KernelHandle kernel;
    check(sn_kernel_create_power_law(gamma, m, k_cut, 0.0, &kernel.ptr));
    double gap = 0;
    check(sn_graph_configuration_model(kernel.ptr, n, seed, &gap, &graph.ptr));
    if (report)
      (*report)["degree_gap_fraction"] = gap;
  } else {
    fail(2, "graph: model must be \"ba\" or \"config\"");
  }
}

int cmd_gen_graph(json cfg, const Options& opt) {
  reject_unknown(cfg, {"graph", "model", "n", "m_edges", "gamma", "m", "k_cut", "seed"},
                 "gen-graph");
  const uint64_t seed = resolve_seed(opt, cfg);
  GraphHandle graph;
  json report;
  build_graph(cfg, seed, graph, &report);
  int n = 0;
  long long edges = 0;
  check(sn_graph_vertex_count(graph.ptr, &n));
  check(sn_graph_edge_count(graph.ptr, &edges));
  report["vertices"] = n;
  report["edges"] = edges;
  if (opt.out_path.empty())
    fail(2, "gen-graph: --out <edge list path> is required");
  check(sn_graph_write_edge_list(graph.ptr, opt.out_path.c_str()));
  std::cout << report.dump(2) << "\n";
  write_sidecar("gen-graph", opt, cfg);
  return 0;
}

int cmd_simulate(json cfg, const Options& opt) {
  reject_unknown(cfg, {"graph", "alpha", "lambda", "beta", "dt", "initial_active", "seed"},
                 "simulate");
  const uint64_t seed = resolve_seed(opt, cfg);
  GraphHandle graph;
  build_graph(cfg, seed ^ 0x5eedull, graph, nullptr);
  int n = 0;
  check(sn_graph_vertex_count(graph.ptr, &n));
  int start = 0;
  if (cfg.contains("initial_active") && cfg["initial_active"].is_number())
    start = cfg["initial_active"].get<int>();
  else
    start = static_cast<int>(seed % static_cast<uint64_t>(n));
  const double dt = get_num(cfg, "dt", 1.0);
  TableHandle trace;
  check(sn_mc_simulate(graph.ptr, make_params(cfg), dt, seed, start, &trace.ptr));
  std::ofstream file;
  write_table_csv(trace.ptr, open_output(opt, file));
  write_sidecar("simulate", opt, cfg);
  return 0;
}

int cmd_solve(json cfg, const Options& opt) {
  reject_unknown(cfg,
                 {"kernel", "alpha", "lambda", "beta", "dt", "tol", "n", "seed_degree",
                  "sample_stride", "seed"},
                 "solve");
  if (!cfg.contains("kernel"))
    fail(2, "solve: missing kernel");
  KernelHandle kernel;
  make_kernel(cfg["kernel"], kernel);
  const double n = get_num(cfg, "n", 10000);
  const int seed_degree = static_cast<int>(get_num(cfg, "seed_degree", -1));
  const double dt = get_num(cfg, "dt", 0.01);
  const double tol = get_num(cfg, "tol", 1e-7);
  const int stride = static_cast<int>(get_num(cfg, "sample_stride", 10));

  sn_solve_report report;
  TableHandle trajectory;
  check(sn_meanfield_solve(kernel.ptr, make_params(cfg), 1.0 / n, seed_degree, dt, tol, stride,
                           &report, &trajectory.ptr));
  std::ofstream file;
  write_table_csv(trajectory.ptr, open_output(opt, file));
  json summary{{"prevalence", report.prevalence},
               {"iterations", report.iterations},
               {"efficiency", report.efficiency},
               {"seed_mass", report.seed_mass}};
  std::cout << summary.dump(2) << "\n";
  write_sidecar("solve", opt, cfg);
  return 0;
}

int cmd_tv_series(json cfg, const Options& opt) {
  reject_unknown(cfg, {"theta", "count", "bin_hours", "time_scale", "seed"}, "tv-series");
  if (!cfg.contains("theta"))
    fail(2, "tv-series: missing theta");
  const sn_tv_params theta = theta_from_json(cfg["theta"]);
  const int count = static_cast<int>(get_num(cfg, "count", 336));
  const double bin_hours = get_num(cfg, "bin_hours", 0.5);
  const double time_scale = get_num(cfg, "time_scale", 500.0);
  const double step = bin_hours / time_scale;
  TableHandle curve;
  check(sn_tv_rate_curve(theta, 0.5 * step, step, count, &curve.ptr));
  std::ofstream file;
  std::ostream& out = open_output(opt, file);
  out << "t,rate\n";
  const double* t = sn_table_column(curve.ptr, 0);
  const double* rate = sn_table_column(curve.ptr, 1);
  for (long long i = 0; i < sn_table_row_count(curve.ptr); ++i)
    out << format_num(t[i]) << "," << format_num(rate[i]) << "\n";
  write_sidecar("tv-series", opt, cfg);
  return 0;
}

int cmd_fit(json cfg, const Options& opt) {
  reject_unknown(cfg,
                 {"series", "column", "bin_hours", "time_scale", "restarts", "init", "seed"},
                 "fit");
  const std::string path = get_str(cfg, "series", "", true);
  const std::vector<double> values = read_series(path, get_str(cfg, "column", ""));
  const double bin_hours = get_num(cfg, "bin_hours", 0.5);
  const double time_scale = get_num(cfg, "time_scale", 500.0);
  const int restarts = static_cast<int>(get_num(cfg, "restarts", 32));
  const uint64_t seed = resolve_seed(opt, cfg);

  sn_tv_params init{};
  const bool has_init = cfg.contains("init") && !cfg["init"].is_null();
  if (has_init)
    init = theta_from_json(cfg["init"]);
  sn_fit_report fit;
  check(sn_fit_theta(values.data(), static_cast<int>(values.size()), bin_hours, time_scale,
                     has_init ? &init : nullptr, restarts, seed, static_cast<int>(opt.jobs),
                     &fit));
  std::ofstream file;
  open_output(opt, file) << fit_report_json(fit).dump(2) << "\n";
  write_sidecar("fit", opt, cfg);
  return fit.converged ? 0 : 3;
}

int cmd_smooth(json cfg, const Options& opt) {
  reject_unknown(cfg, {"series", "column", "sigma", "seed"}, "smooth");
  const std::string path = get_str(cfg, "series", "", true);
  const std::vector<double> values = read_series(path, get_str(cfg, "column", ""));
  const double sigma = get_num(cfg, "sigma", 2.0);
  std::vector<double> smoothed(values.size());
  check(sn_smooth_gaussian(values.data(), static_cast<int>(values.size()), sigma,
                           smoothed.data()));
  std::ofstream file;
  std::ostream& out = open_output(opt, file);
  out << "t,count\n";
  for (std::size_t i = 0; i < smoothed.size(); ++i)
    out << i << "," << format_num(smoothed[i]) << "\n";
  write_sidecar("smooth", opt, cfg);
  return 0;
}

int cmd_cluster(json cfg, const Options& opt) {
  reject_unknown(cfg, {"corpus", "column", "k", "k_max", "hartigan_threshold", "smooth_sigma",
                       "max_iter", "seed"},
                 "cluster");
  const std::string corpus_path = get_str(cfg, "corpus", "", true);
  const std::string column = get_str(cfg, "column", "");
  const uint64_t seed = resolve_seed(opt, cfg);

  std::vector<std::vector<double>> corpus;
  std::vector<std::string> names;
  if (std::filesystem::is_directory(corpus_path)) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_path))
      if (entry.path().extension() == ".csv")
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      corpus.push_back(read_series(f, column));
      names.push_back(f);
    }
  } else {
    // Wide CSV: first column is time, every other column is one series.
    const Csv csv = read_csv(corpus_path);
    for (std::size_t c = 1; c < csv.columns.size(); ++c) {
      corpus.push_back(csv.columns[c]);
      names.push_back(csv.header[c]);
    }
  }
  if (corpus.empty())
    fail(2, "cluster: empty corpus");
  const std::size_t len = corpus.front().size();
  for (const auto& s : corpus)
    if (s.size() != len)
      fail(2, "cluster: series lengths differ");

  const double sigma = get_num(cfg, "smooth_sigma", 0.0);
  if (sigma > 0.0)
    for (auto& s : corpus)
      check(sn_smooth_gaussian(s.data(), static_cast<int>(s.size()), sigma, s.data()));

  std::vector<double> flat;
  flat.reserve(corpus.size() * len);
  for (const auto& s : corpus) flat.insert(flat.end(), s.begin(), s.end());
  const int count = static_cast<int>(corpus.size());
  const int length = static_cast<int>(len);

  json report;
  const double threshold = get_num(cfg, "hartigan_threshold", 200.0);
  int k = static_cast<int>(get_num(cfg, "k", 0.0));
  const int k_max = static_cast<int>(get_num(cfg, "k_max", 0.0));
  if (k_max > 0) {
    json table = json::array();
    for (int kk = 1; kk <= k_max; ++kk) {
      double h = 0;
      check(sn_hartigan_index(flat.data(), count, length, kk, seed, &h));
      table.push_back(json{{"k", kk}, {"hartigan", h}});
    }
    report["hartigan"] = table;
    int selected = 0;
    check(sn_select_cluster_count(flat.data(), count, length, k_max, seed, threshold, &selected));
    report["selected_k"] = selected;
    if (k <= 0)
      k = selected;
  }
  if (k <= 0)
    fail(2, "cluster: provide k or k_max");

  std::vector<int> assignments(corpus.size());
  std::vector<double> centroids(static_cast<std::size_t>(k) * len);
  double within = 0;
  const int max_iter = static_cast<int>(get_num(cfg, "max_iter", 100));
  check(sn_ksc_cluster(flat.data(), count, length, k, seed, max_iter, assignments.data(),
                       centroids.data(), &within));
  report["k"] = k;
  report["within_cost"] = within;
  report["assignments"] = assignments;
  report["series"] = names;
  if (k >= 2) {
    double sil = 0;
    check(sn_silhouette(flat.data(), count, length, k, seed, &sil));
    report["silhouette"] = sil;
  }
  json cents = json::array();
  for (int c = 0; c < k; ++c)
    cents.push_back(std::vector<double>(centroids.begin() + static_cast<std::ptrdiff_t>(c) * length,
                                        centroids.begin() + static_cast<std::ptrdiff_t>(c + 1) * length));
  report["centroids"] = cents;

  std::ofstream file;
  open_output(opt, file) << report.dump(2) << "\n";
  write_sidecar("cluster", opt, cfg);
  return 0;
}

int cmd_predict(json cfg, const Options& opt) {
  reject_unknown(cfg,
                 {"series", "column", "train_fraction", "bin_hours", "time_scale", "restarts",
                  "seed"},
                 "predict");
  const std::string path = get_str(cfg, "series", "", true);
  const std::vector<double> values = read_series(path, get_str(cfg, "column", ""));
  const double fraction = get_num(cfg, "train_fraction", 1.0 / 3.0);
  const double bin_hours = get_num(cfg, "bin_hours", 0.5);
  const double time_scale = get_num(cfg, "time_scale", 500.0);
  const int restarts = static_cast<int>(get_num(cfg, "restarts", 32));
  const uint64_t seed = resolve_seed(opt, cfg);

  sn_predict_report report;
  check(sn_predict_experiment(values.data(), static_cast<int>(values.size()), bin_hours, fraction,
                              time_scale, restarts, seed, static_cast<int>(opt.jobs), &report));
  json out;
  out["train_length"] = report.train_length;
  out["horizon"] = report.horizon;
  out["model"] = json{{"failed", report.model_failed != 0},
                      {"relative_error", report.model_error}};
  out["ar6"] = json{{"failed", report.ar6_failed != 0}, {"relative_error", report.ar6_error}};
  out["ar39"] = json{{"failed", report.ar39_failed != 0}, {"relative_error", report.ar39_error}};
  out["fit"] = fit_report_json(report.fit);
  std::ofstream file;
  open_output(opt, file) << out.dump(2) << "\n";
  write_sidecar("predict", opt, cfg);
  return report.model_failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spreadnet: information-spreading models on heterogeneous networks"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file (or a sidecar)")->required();
  app.add_option("--seed", opt.seed, "RNG seed (overrides the config)")
      ->each([&](const std::string&) { opt.has_seed = true; });
  app.add_option("--out", opt.out_path, "output path (default stdout)");
  app.add_option("--sidecar", opt.sidecar_path, "sidecar path override");
  app.add_option("--jobs", opt.jobs, "parallel worker limit (0 = hardware)");

  const std::vector<std::pair<std::string, int (*)(json, const Options&)>> commands = {
      {"ensemble", cmd_ensemble}, {"sweep", cmd_sweep},     {"gen-graph", cmd_gen_graph},
      {"simulate", cmd_simulate}, {"solve", cmd_solve},     {"tv-series", cmd_tv_series},
      {"fit", cmd_fit},           {"cluster", cmd_cluster}, {"predict", cmd_predict},
      {"smooth", cmd_smooth}};
  for (const auto& [name, fn] : commands) {
    (void)fn;
    app.add_subcommand(name, "");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    json cfg = load_config(opt.config_path);
    for (const auto& [name, fn] : commands)
      if (app.got_subcommand(name))
        return fn(std::move(cfg), opt);
    std::cerr << "unknown subcommand\n";
    return 2;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
