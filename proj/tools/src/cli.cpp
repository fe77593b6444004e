#include "tprodlab_cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "tprodlab/algebra.hpp"
#include "tprodlab/bounds.hpp"
#include "tprodlab/generators.hpp"
#include "tprodlab/io.hpp"
#include "tprodlab/parallel.hpp"
#include "tprodlab/spectral.hpp"
#include "tprodlab/suite.hpp"

namespace tprod::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<Index> m, p;
  std::vector<Index> n;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 7;
  std::optional<double> tol;
  double scale = 1.0;
  double t_min = 1e-2, t_max = 1e2;
  std::size_t t_points = 50;
  std::vector<std::string> checks;
  std::string suite;
  std::string config;
  std::string out;
  std::string csv;
  // bound
  std::vector<std::string> ensembles;
  std::optional<double> theta;
  std::vector<double> b;
  std::string majorant = "linear";
  // spectrum
  std::string tensor;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void emit(const Options& o, const json& report, std::ostream& out) {
  if (o.out.empty()) {
    out << report.dump(2) << '\n';
  } else {
    write_json_file(o.out, report);
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error(path + ": cannot open file for writing");
  f << text;
}

// ---- verify ---------------------------------------------------------------

struct Planned {
  const CheckEntry* entry;
  CheckConfig cfg;
};

std::vector<Planned> plan_verify(const Options& o) {
  std::vector<Planned> plan;
  if (!o.config.empty()) {
    const json j = read_json_file(o.config);
    std::vector<json> items;
    if (j.is_array()) {
      items.assign(j.begin(), j.end());
    } else if (j.is_object() && j.contains("checks")) {
      if (!j["checks"].is_array()) throw FormatError(o.config + ".checks: expected an array");
      items.assign(j["checks"].begin(), j["checks"].end());
    } else {
      items.push_back(j);
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string where = o.config + "[" + std::to_string(i) + "]";
      CheckConfig cfg = config_from_json(items[i], where);
      if (cfg.name.empty()) throw FormatError(where + ".name: missing field");
      plan.push_back({&find_check(cfg.name), cfg});
    }
    if (plan.empty()) throw FormatError(o.config + ": no checks configured");
    return plan;
  }
  const std::string suite = o.suite.empty() && o.checks.empty() ? "all" : o.suite;
  for (const auto* e : select_checks(suite, o.checks)) {
    CheckConfig cfg;
    cfg.name = e->name;
    if (o.m) cfg.m = *o.m;
    if (o.p) cfg.p = *o.p;
    if (!o.n.empty()) cfg.n_family = o.n;
    cfg.trials = o.trials.value_or(e->default_trials);
    cfg.seed = o.seed;
    cfg.scale = o.scale;
    if (o.tol) cfg.tol = *o.tol;
    plan.push_back({e, cfg});
  }
  return plan;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.m && *o.m < 1) throw UsageError("--m must be >= 1");
  if (o.p && *o.p < 1) throw UsageError("--p must be >= 1");
  for (Index n : o.n)
    if (n < 1) throw UsageError("--n values must be >= 1");
  if (o.tol && *o.tol < 0.0) throw UsageError("--tol must be >= 0");
  if (!(o.scale > 0.0)) throw UsageError("--scale must be > 0");
  const auto plan = plan_verify(o);

  json checks = json::array();
  json failed = json::array();
  std::ostringstream csv;
  csv << "name,suite,pass,worst_margin,max_equality_gap,trials\n";
  bool all_pass = true;
  for (const auto& [entry, cfg] : plan) {
    const CheckReport r = run_check(*entry, cfg);
    json jr = check_report_to_json(r);
    jr["suite"] = entry->suite;
    jr["informational"] = entry->informational;
    jr["config"] = config_to_json(cfg);
    checks.push_back(std::move(jr));
    if (!r.pass) {
      all_pass = false;
      failed.push_back(r.name);
    }
    csv << r.name << ',' << entry->suite << ',' << (r.pass ? "true" : "false") << ',' << fmt(r.worst_margin) << ','
        << fmt(r.max_equality_gap) << ',' << r.trials << '\n';
    err << (r.pass ? "PASS " : "FAIL ") << r.name << " worst_margin=" << fmt(r.worst_margin)
        << " equality_gap=" << fmt(r.max_equality_gap) << '\n';
  }
  json report = report_envelope("verify");
  report["settings"] = json{{"suite", o.config.empty() ? (o.suite.empty() && o.checks.empty() ? "all" : o.suite) : ""},
                            {"checks", o.checks},
                            {"config_file", o.config},
                            {"seed", o.seed}};
  report["checks"] = std::move(checks);
  report["summary"] = json{{"total", plan.size()}, {"failed", std::move(failed)}};
  report["pass"] = all_pass;
  emit(o, report, out);
  if (!o.csv.empty()) write_text(o.csv, csv.str());
  return all_pass ? kPass : kInequalityFailure;
}

// ---- bound ----------------------------------------------------------------

Majorant pick_majorant(const std::string& name, const std::vector<Ensemble>& ens) {
  if (name == "linear") return default_majorant(ens);
  if (name == "subgaussian") {
    try {
      return rademacher_majorant(ens);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--majorant subgaussian: ") + e.what());
    }
  }
  throw UsageError("--majorant must be 'linear' or 'subgaussian'");
}

int cmd_bound(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.ensembles.empty()) throw UsageError("bound needs at least one --ensemble file");
  if (!o.theta && o.b.empty()) throw UsageError("bound needs --theta, --b, or both");
  if (!(o.t_min > 0.0) || !(o.t_max >= o.t_min) || o.t_points < 1)
    throw UsageError("need 0 < --t-min <= --t-max and --t-points >= 1");
  const std::size_t copies = o.n.empty() ? 1 : static_cast<std::size_t>(o.n.front());
  if (o.n.size() > 1 || (!o.n.empty() && o.n.front() < 1)) throw UsageError("bound takes a single --n >= 1");

  BoundQuery q;
  std::vector<Ensemble> files;
  for (const auto& path : o.ensembles) files.push_back(read_ensemble(path));
  for (std::size_t c = 0; c < copies; ++c)
    for (const auto& e : files) q.ensembles.push_back(e);
  for (const auto& e : q.ensembles)
    if (e.m != q.ensembles.front().m || e.p != q.ensembles.front().p)
      throw FormatError(o.ensembles.back() + ": ensembles differ in shape");
  const Index m = q.ensembles.front().m, p = q.ensembles.front().p;
  q.t_grid = log_grid(o.t_min, o.t_max, o.t_points);
  q.trials = o.trials.value_or(100000);
  q.seed = o.seed;
  const double tol = o.tol.value_or(kMarginTol);
  const bool enumerable = outcome_count(q.ensembles) <= kMaxEnumerated;

  json report = report_envelope("bound");
  report["settings"] = json{{"ensembles", o.ensembles}, {"copies", copies}, {"m", m}, {"p", p}, {"seed", o.seed},
                            {"trials", q.trials}, {"tol", tol}, {"majorant", o.majorant}};
  bool ok = true;
  std::vector<BoundTrace> csv_traces;

  if (o.theta) {
    q.theta = *o.theta;
    json sec;
    sec["theta"] = q.theta;
    std::vector<BoundTrace> traces{master_bound_eig(q), majorant_bound(q, pick_majorant(o.majorant, q.ensembles)),
                                   mean_mgf_bound(q)};
    if (q.ensembles.size() == 1) traces.push_back(laplace_bound_eig(q.ensembles.front(), q.theta, q.t_grid));
    json tj = json::array();
    for (const auto& t : traces) tj.push_back(bound_trace_to_json(t));
    sec["traces"] = std::move(tj);
    const double bound = traces.front().bound;
    if (enumerable) {
      const double exact = exact_tail_eig(enumerate_sum(q.ensembles), q.theta);
      sec["exact_probability"] = exact;
      for (const auto& t : traces)
        if (t.defined_points > 0 && exact > t.bound + tol) ok = false;
    }
    if (q.trials > 0) {
      const TailEstimate mc = monte_carlo_tail(q, TailEvent::Eigenvalue);
      sec["monte_carlo"] = json{{"frequency", mc.frequency}, {"ci_halfwidth", mc.ci_halfwidth}, {"trials", mc.trials}};
      if (mc.frequency > bound + mc.ci_halfwidth + tol) ok = false;
    }
    report["eigenvalue"] = std::move(sec);
    csv_traces.insert(csv_traces.end(), traces.begin(), traces.end());
  }

  if (!o.b.empty()) {
    if (static_cast<Index>(o.b.size()) != p) throw UsageError("--b needs exactly p = " + std::to_string(p) + " values");
    q.b = Tube(p);
    for (Index k = 0; k < p; ++k) q.b[k] = o.b[static_cast<std::size_t>(k)];
    json sec;
    sec["b"] = o.b;
    try {
      std::vector<BoundTrace> traces{master_bound_eigentuple(q),
                                     majorant_bound_eigentuple(q, pick_majorant(o.majorant, q.ensembles)),
                                     mean_mgf_bound_eigentuple(q)};
      json tj = json::array();
      for (const auto& t : traces) tj.push_back(bound_trace_to_json(t));
      sec["traces"] = std::move(tj);
      sec["defined"] = true;
      const double exact = exact_tail_eigentuple(enumerate_sum(q.ensembles), q.b);
      sec["exact_probability"] = exact;
      for (const auto& t : traces)
        if (t.defined_points > 0 && exact > t.bound + tol) ok = false;
      if (q.trials > 0) {
        const TailEstimate mc = monte_carlo_tail(q, TailEvent::Eigentuple);
        sec["monte_carlo"] = json{{"frequency", mc.frequency}, {"ci_halfwidth", mc.ci_halfwidth}, {"trials", mc.trials}};
        if (mc.frequency > traces.front().bound + mc.ci_halfwidth + tol) ok = false;
      }
      csv_traces.insert(csv_traces.end(), traces.begin(), traces.end());
    } catch (const PreconditionError& e) {
      sec["defined"] = false;
      sec["reason"] = e.what();
      err << "eigentuple bound undefined: " << e.what() << '\n';
    }
    report["eigentuple"] = std::move(sec);
  }
  report["pass"] = ok;
  emit(o, report, out);

  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << 't';
    for (const auto& t : csv_traces) csv << ',' << t.name;
    csv << '\n';
    for (std::size_t i = 0; i < q.t_grid.size(); ++i) {
      csv << fmt(q.t_grid[i]);
      for (const auto& t : csv_traces) csv << ',' << fmt(std::exp(t.log_values[i]));
      csv << '\n';
    }
    write_text(o.csv, csv.str());
  }
  if (!ok) err << "bound violated by the exact or Monte Carlo tail\n";
  return ok ? kPass : kInequalityFailure;
}

// ---- spectrum -------------------------------------------------------------

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream&) {
  if (o.tensor.empty()) throw UsageError("spectrum needs --tensor FILE");
  const Tensor3 c = read_tensor(o.tensor);
  if (c.m() != c.n()) throw NotHermitianError(o.tensor + ": tensor is not square (m != n)");
  const Spectrum s = herm_spectrum(c);
  json report = report_envelope("spectrum");
  report["tensor"] = o.tensor;
  report["spectrum"] = spectrum_to_json(c, s);
  emit(o, report, out);
  return kPass;
}

// ---- bench ----------------------------------------------------------------

template <typename F>
double time_per_call(std::size_t reps, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / static_cast<double>(reps);
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream&) {
  const Index m = o.m.value_or(4), p = o.p.value_or(4);
  if (m < 1 || p < 1) throw UsageError("--m and --p must be >= 1");
  const std::size_t reps = o.trials.value_or(200);
  if (reps < 1) throw UsageError("--trials must be >= 1");
  const Tensor3 a = gen_tensor(m, m, p, derive_seed(o.seed, 1));
  const Tensor3 b = gen_tensor(m, m, p, derive_seed(o.seed, 2));
  const Tensor3 h = gen_hermitian(m, p, derive_seed(o.seed, 3));
  volatile double sink = 0.0;
  json timings = json::object();
  timings["tprod_fft"] = time_per_call(reps, [&] { sink = sink + tprod(a, b).max_abs(); });
  timings["tprod_dense"] = time_per_call(reps, [&] { sink = sink + tprod_dense(a, b).max_abs(); });
  timings["herm_spectrum"] = time_per_call(reps, [&] { sink = sink + herm_spectrum(h).lambda_max; });
  timings["texp"] = time_per_call(reps, [&] { sink = sink + texp(h).max_abs(); });
  CheckConfig cfg;
  cfg.m = m;
  cfg.p = p;
  cfg.trials = 50;
  cfg.seed = o.seed;
  timings["golden_thompson_50_trials"] = time_per_call(1, [&] { sink = sink + find_check("golden_thompson").run(cfg).worst_margin; });

  json report = report_envelope("bench");
  report["settings"] = json{{"m", m}, {"p", p}, {"reps", reps}, {"seed", o.seed}, {"threads", thread_count()}};
  report["seconds_per_call"] = timings;
  emit(o, report, out);
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << "name,seconds_per_call\n";
    for (const auto& [k, v] : timings.items()) csv << k << ',' << fmt(v.get<double>()) << '\n';
    write_text(o.csv, csv.str());
  }
  return kPass;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Master seed (default 7)");
  sub->add_option("--out", o.out, "Write the JSON report here instead of stdout");
  sub->add_option("--csv", o.csv, "Also write a flat CSV table here");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Numerical verification of T-product tensor inequalities and tail bounds", "tprodlab"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run verification campaigns and write a JSON report");
  add_common(verify, o);
  verify->add_option("--suite", o.suite, "all | tverify | trand | tcf");
  verify->add_option("--checks", o.checks, "Comma-separated check names")->delimiter(',');
  verify->add_option("--config", o.config, "JSON check configuration(s)");
  verify->add_option("--m", o.m, "Tensor size m");
  verify->add_option("--n", o.n, "Family sizes (comma-separated)")->delimiter(',');
  verify->add_option("--p", o.p, "Tube length p");
  verify->add_option("--trials", o.trials, "Trials per check (default: per-check)");
  verify->add_option("--tol", o.tol, "Margin tolerance (default 1e-8)");
  verify->add_option("--scale", o.scale, "Scale of random instances");

  auto* bound = app.add_subcommand("bound", "Tail bounds for sums of independent ensembles");
  add_common(bound, o);
  bound->add_option("--ensemble", o.ensembles, "Ensemble JSON file (repeatable)")->required();
  bound->add_option("--n", o.n, "Independent copies of the listed ensembles");
  bound->add_option("--theta", o.theta, "Threshold for lambda_max");
  bound->add_option("--b", o.b, "Threshold tube for the eigentuple event (comma-separated)")->delimiter(',');
  bound->add_option("--t-min", o.t_min, "Smallest grid t (default 1e-2)");
  bound->add_option("--t-max", o.t_max, "Largest grid t (default 1e2)");
  bound->add_option("--t-points", o.t_points, "Log-spaced grid points (default 50)");
  bound->add_option("--trials", o.trials, "Monte Carlo draws (default 1e5; 0 skips)");
  bound->add_option("--tol", o.tol, "Slack allowed when comparing with the bound");
  bound->add_option("--majorant", o.majorant, "linear | subgaussian");

  auto* spectrum = app.add_subcommand("spectrum", "Decompose a tensor file");
  add_common(spectrum, o);
  spectrum->add_option("--tensor", o.tensor, "Tensor JSON file")->required();

  auto* bench = app.add_subcommand("bench", "Time the core kernels");
  add_common(bench, o);
  bench->add_option("--m", o.m, "Tensor size m (default 4)");
  bench->add_option("--p", o.p, "Tube length p (default 4)");
  bench->add_option("--trials", o.trials, "Repetitions per kernel (default 200)");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(o, out, err);
    if (*bound) return cmd_bound(o, out, err);
    if (*spectrum) return cmd_spectrum(o, out, err);
    if (*bench) return cmd_bench(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotHermitianError& e) {
    err << "error: Hermitian violation: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tprod::cli
