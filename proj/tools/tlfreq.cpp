// tlfreq: monitor BB-STL formulas, derive their frequency responses and
// check monitoring-safe compression from the command line.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlfreq/analysis.hpp"
#include "tlfreq/formula_gfrf.hpp"
#include "tlfreq/io.hpp"
#include "tlfreq/kernel_table.hpp"
#include "tlfreq/monitor.hpp"
#include "tlfreq/parser.hpp"
#include "tlfreq/semantics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tlfreq;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kUnsupported = 3 };

struct Options {
  std::string formula;
  std::string signal;
  std::string kernels;
  std::string fit;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  double omega_max = 20.0;
  std::size_t points = 101;
  std::string orders = "1,2";
  double threshold = 1e-2;
  std::optional<double> cutoff_hz;
  std::optional<double> auto_threshold;
  std::size_t sampled_since = 0;
  double prune = 0.0;
  double tol_rho = 0.05;
  double tie = 1e-12;
  double dt = 0.0;
  bool symmetrize = false;
  bool gnuplot = false;
  std::string op;
  std::vector<double> interval;
};

bool unsupported(const std::string& code) {
  return code == "SinceNotGfrfSupported" || code == "TrueNotApproximable" || code == "SinceSamplingDisabled";
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("CannotWrite", "cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

fs::path out_dir(const Options& o) {
  fs::path dir(o.out);
  fs::create_directories(dir);
  return dir;
}

FitConfig load_fit(const Options& o) {
  FitConfig cfg;
  if (!o.fit.empty()) {
    std::ifstream in(o.fit);
    if (!in) throw Error("FileNotFound", "cannot open " + o.fit);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error("BadFitConfig", o.fit + ": " + e.what());
    }
    cfg = fit_config_from_json(doc);
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.dt > 0.0) cfg.dt = o.dt;
  return cfg;
}

KernelTable load_kernels(const Options& o, double dt) {
  if (o.kernels.empty()) throw Error("MissingKernels", "--kernels is required");
  return KernelTable::load(o.kernels, dt);
}

std::vector<std::size_t> parse_orders(const std::string& text) {
  std::vector<std::size_t> orders;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const int n = std::stoi(item);
      if (n < 1) throw std::invalid_argument("order");
      orders.push_back(static_cast<std::size_t>(n));
    } catch (const std::exception&) {
      throw Error("BadOrders", "--orders expects a comma separated list of positive integers");
    }
  }
  return orders;
}

// Cut-off searches cover every order up to the largest one listed.
std::size_t highest_order(const std::string& text) {
  const auto orders = parse_orders(text);
  const std::size_t n = orders.empty() ? 0 : *std::max_element(orders.begin(), orders.end());
  if (n < 1 || n > 4) throw Error("BadOrders", "--orders must list orders between 1 and 4");
  return n;
}

json ast_json(const Formula& f) {
  json j = {{"op", op_name(f.op())}};
  if (f.op() == Op::Atom) j["name"] = f.atom_name();
  if (f.is_temporal()) j["interval"] = {f.interval().lo, f.interval().hi};
  if (f.op() == Op::Not || f.op() == Op::Once || f.op() == Op::Hist) j["arg"] = ast_json(f.lhs());
  if (f.arity() == 2) {
    j["lhs"] = ast_json(f.lhs());
    j["rhs"] = ast_json(f.rhs());
  }
  return j;
}

json diagnostics_json(const std::vector<Diagnostic>& diags) {
  json list = json::array();
  for (const auto& d : diags) {
    list.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                    {"code", d.code},
                    {"message", d.message}});
  }
  return list;
}

void require_valid(const Formula& f, const KernelTable& kt) {
  const auto diags = validate(f, kt);
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) throw Error(d.code, d.message);
  }
}

int cmd_parse(const Options& o) {
  const Formula f = parse_formula(o.formula);
  json doc = {{"text", to_string(f)}, {"ast", ast_json(f)}};
  if (!o.kernels.empty()) {
    const auto diags = validate(f, KernelTable::load(o.kernels, o.dt > 0.0 ? o.dt : FitConfig{}.dt));
    doc["diagnostics"] = diagnostics_json(diags);
    std::cout << doc.dump(2) << '\n';
    return has_errors(diags) ? kData : kOk;
  }
  std::cout << doc.dump(2) << '\n';
  return kOk;
}

int cmd_monitor(const Options& o) {
  const Formula f = parse_formula(o.formula);
  const Signal x = read_signal_csv(o.signal);
  const KernelTable kt = load_kernels(o, x.dt());
  require_valid(f, kt);
  const RobustnessSignal rho = robustness(f, x, kt);
  const fs::path dir = out_dir(o);
  std::ostringstream r;
  write_signal_csv(r, rho.values, "rho");
  write_file(dir / "rho.csv", r.str());
  std::ostringstream v;
  v << "t,sat\n";
  for (std::size_t k = 0; k < rho.values.size(); ++k) {
    v << format_double(rho.values.time(k)) << ',' << (rho.values[k] >= 0.0 ? 1 : 0) << '\n';
  }
  write_file(dir / "verdict.csv", v.str());
  std::cout << "valid domain [" << format_double(rho.domain.begin) << ", " << format_double(rho.domain.end)
            << "], " << rho.values.size() << " samples -> " << (dir / "rho.csv").string() << '\n';
  return kOk;
}

std::string gnuplot_script(const std::vector<std::size_t>& orders) {
  std::ostringstream s;
  s << "set datafile separator ','\nset key off\n";
  for (std::size_t n : orders) {
    if (n == 1) {
      s << "set title '|H_1|'\nset xlabel 'omega [rad/s]'\n"
        << "plot 'grid_h1.csv' every ::1 using 1:4 with lines\npause -1\n";
    } else if (n == 2) {
      s << "set title '|H_2|'\nset xlabel 'omega_1'\nset ylabel 'omega_2'\nset view map\n"
        << "splot 'grid_h2.csv' every ::1 using 1:2:5 with pm3d\npause -1\n";
    }
  }
  return s.str();
}

void export_gfrf(const FormulaGfrf& fg, const Options& o, const fs::path& dir, const std::string& stem) {
  Gfrf g = o.symmetrize ? symmetrize(fg.gfrf) : fg.gfrf;
  write_json(dir / (stem + ".json"), gfrf_to_json(g));
  write_json(dir / (stem + "_report.json"), composition_report_to_json(fg.report));
  for (std::size_t n : parse_orders(o.orders)) {
    const GfrfGrid grid = gfrf_grid(g, n, o.omega_max, o.points);
    std::ostringstream csv;
    write_grid_csv(csv, grid);
    const std::string name = stem == "gfrf" ? "grid_h" + std::to_string(n) + ".csv"
                                            : stem + "_grid_h" + std::to_string(n) + ".csv";
    write_file(dir / name, csv.str());
  }
}

int cmd_gfrf(const Options& o) {
  const Formula f = parse_formula(o.formula);
  const FitConfig cfg = load_fit(o);
  const KernelTable kt = load_kernels(o, cfg.dt);
  require_valid(f, kt);
  const fs::path dir = out_dir(o);

  if (f.op() == Op::Since && o.sampled_since > 0) {
    const auto samples = since_sampled_gfrf(f.lhs(), f.rhs(), f.interval(), o.sampled_since, kt, cfg, true);
    json index = json::array();
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const std::string stem = "gfrf_eta" + std::to_string(j);
      export_gfrf(samples[j].result, o, dir, stem);
      index.push_back({{"eta", samples[j].eta}, {"formula", to_string(samples[j].formula)}, {"file", stem + ".json"}});
    }
    write_json(dir / "sampled_since.json", index);
    std::cout << samples.size() << " sampled since responses -> " << dir.string() << '\n';
    return kOk;
  }
  GfrfBuilder builder(kt, cfg, o.prune);
  const FormulaGfrf fg = builder.build(f);
  export_gfrf(fg, o, dir, "gfrf");
  if (o.gnuplot) write_file(dir / "plot.gp", gnuplot_script(parse_orders(o.orders)));
  std::cout << fg.gfrf.term_count() << " terms up to order " << fg.gfrf.max_order() << " -> "
            << (dir / "gfrf.json").string() << '\n';
  return kOk;
}

int cmd_cutoff(const Options& o) {
  const Formula f = parse_formula(o.formula);
  const FitConfig cfg = load_fit(o);
  const KernelTable kt = load_kernels(o, cfg.dt);
  require_valid(f, kt);
  const FormulaGfrf fg = formula_to_gfrf(f, kt, cfg);
  const std::size_t max_order = highest_order(o.orders);
  const CutoffResult r = cutoff_frequency(fg.gfrf, o.threshold, o.omega_max, o.points, max_order);
  json doc = cutoff_to_json(r, o.threshold, max_order);
  doc["formula"] = to_string(f);
  const fs::path dir = out_dir(o);
  write_json(dir / "cutoff.json", doc);
  if (r.found) {
    std::cout << "cutoff " << format_double(r.omega) << " rad/s (" << format_double(r.omega / (2 * std::numbers::pi))
              << " Hz)\n";
  } else {
    std::cerr << "warning[" << r.diagnostic << "]: responses stay above " << o.threshold << " up to "
              << o.omega_max << " rad/s\n";
  }
  return kOk;
}

int cmd_compress(const Options& o) {
  const Formula f = parse_formula(o.formula);
  const Signal x = read_signal_csv(o.signal);
  const KernelTable kt = load_kernels(o, x.dt());
  require_valid(f, kt);
  double cutoff = 0.0;
  json extra = json::object();
  if (o.cutoff_hz) {
    cutoff = 2.0 * std::numbers::pi * *o.cutoff_hz;
  } else {
    FitConfig cfg = load_fit(o);
    cfg.dt = x.dt();
    const FormulaGfrf fg = formula_to_gfrf(f, kt, cfg);
    const std::size_t max_order = highest_order(o.orders);
    const CutoffResult r = cutoff_frequency(fg.gfrf, *o.auto_threshold, o.omega_max, o.points, max_order);
    cutoff = r.omega;
    extra = cutoff_to_json(r, *o.auto_threshold, max_order);
  }
  const SafetyReport rep = compression_safety_report(f, x, cutoff, kt, SafetyTolerances{o.tol_rho, o.tie});
  json doc = safety_report_to_json(rep, f);
  if (!extra.empty()) doc["auto_cutoff"] = extra;
  doc["config"] = {{"signal", o.signal}, {"kernels", o.kernels}, {"tol_rho", o.tol_rho}, {"tie", o.tie}};
  if (o.cutoff_hz) {
    doc["config"]["cutoff_hz"] = *o.cutoff_hz;
  } else {
    doc["config"]["auto_threshold"] = *o.auto_threshold;
    doc["config"]["omega_max"] = o.omega_max;
    doc["config"]["points"] = o.points;
    doc["config"]["orders"] = o.orders;
  }
  const fs::path dir = out_dir(o);
  std::ostringstream csv;
  write_signal_csv(csv, rep.compressed);
  write_file(dir / "compressed.csv", csv.str());
  write_json(dir / "safety.json", doc);
  std::cout << (rep.safe ? "safe" : "unsafe") << ": rho_rel_diff=" << format_double(rep.rho_rel_diff)
            << " truth_flips=" << rep.truth_flip_count << '\n';
  return kOk;
}

int cmd_fit(const Options& o) {
  const FitConfig cfg = load_fit(o);
  json doc;
  if (o.op == "once" || o.op == "hist") {
    if (o.interval.size() != 2) throw Error("BadInterval", "--interval expects two values a,b");
    const Interval iv{o.interval[0], o.interval[1]};
    check_interval(iv);
    const auto op = fit_poly_delay(o.op == "once" ? TemporalOp::Once : TemporalOp::Hist, iv, cfg);
    doc = poly_delay_to_json(op);
  } else {
    doc = separable_to_json(fit_separable_minmax(o.op == "max" ? Extremum::Max : Extremum::Min, cfg.degree, cfg));
  }
  doc["config"] = fit_config_to_json(cfg);
  const fs::path dir = out_dir(o);
  write_json(dir / "operator.json", doc);
  std::cout << "train_rms=" << format_double(doc["report"]["train_rms"].get<double>()) << " -> "
            << (dir / "operator.json").string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-domain analysis of BB-STL monitors"};
  app.require_subcommand(1);
  Options o;

  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Seed for every random draw"); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Output directory")->capture_default_str(); };
  auto add_kernels = [&](CLI::App* c) {
    c->add_option("--kernels", o.kernels, "Kernel table JSON")->required()->check(CLI::ExistingFile);
  };
  auto add_fit = [&](CLI::App* c) {
    c->add_option("--fit", o.fit, "Fit config JSON")->check(CLI::ExistingFile);
    c->add_option("--dt", o.dt, "Sampling step for kernels and fits (overrides the fit config)");
  };
  auto add_grid = [&](CLI::App* c) {
    c->add_option("--omega-max", o.omega_max, "Upper end of the frequency grid [rad/s]")->capture_default_str();
    c->add_option("--points", o.points, "Grid points per axis")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  };

  auto* parse = app.add_subcommand("parse", "Parse a formula and print its syntax tree");
  parse->add_option("formula", o.formula)->required();
  parse->add_option("--kernels", o.kernels, "Also validate atoms against this kernel table")->check(CLI::ExistingFile);
  parse->add_option("--dt", o.dt, "Sampling step used to load the kernel table");

  auto* monitor = app.add_subcommand("monitor", "Robustness and verdict signals");
  monitor->add_option("formula", o.formula)->required();
  monitor->add_option("signal", o.signal, "CSV t,value")->required()->check(CLI::ExistingFile);
  add_kernels(monitor);
  add_out(monitor);

  auto* gfrf = app.add_subcommand("gfrf", "Formula GFRF and plotting grids");
  gfrf->add_option("formula", o.formula)->required();
  add_kernels(gfrf);
  add_fit(gfrf);
  add_seed(gfrf);
  add_out(gfrf);
  add_grid(gfrf);
  gfrf->add_option("--orders", o.orders, "Orders to grid, e.g. 1,2")->capture_default_str();
  gfrf->add_option("--prune", o.prune, "Drop composed terms with |coeff| below this");
  gfrf->add_option("--enable-sampled-since", o.sampled_since, "Approximate since with N sampled operators");
  gfrf->add_flag("--symmetrize", o.symmetrize, "Average terms over slot permutations before export");
  gfrf->add_flag("--gnuplot", o.gnuplot, "Also write plot.gp");

  auto* cutoff = app.add_subcommand("cutoff", "Cut-off frequency of a formula");
  cutoff->add_option("formula", o.formula)->required();
  add_kernels(cutoff);
  add_fit(cutoff);
  add_seed(cutoff);
  add_out(cutoff);
  add_grid(cutoff);
  cutoff->add_option("--orders", o.orders, "Orders searched, e.g. 1,2 (all orders up to the largest)")->capture_default_str();
  cutoff->add_option("--threshold", o.threshold, "Magnitude threshold")->capture_default_str();

  auto* compress = app.add_subcommand("compress", "Low-pass a signal and report monitoring safety");
  compress->add_option("formula", o.formula)->required();
  compress->add_option("signal", o.signal, "CSV t,value")->required()->check(CLI::ExistingFile);
  add_kernels(compress);
  add_fit(compress);
  add_seed(compress);
  add_out(compress);
  add_grid(compress);
  auto* hz = compress->add_option("--cutoff-hz", o.cutoff_hz, "Cut-off frequency [Hz]");
  auto* at = compress->add_option("--auto-threshold", o.auto_threshold, "Derive the cut-off from the GFRF at this threshold");
  hz->excludes(at);
  compress->add_option("--orders", o.orders, "Orders for --auto-threshold, e.g. 1,2")->capture_default_str();
  compress->add_option("--tol-rho", o.tol_rho, "Relative robustness tolerance")->capture_default_str();
  compress->add_option("--tie", o.tie, "Robustness magnitude treated as a tie")->capture_default_str();

  auto* fit = app.add_subcommand("fit", "Fit a basic operator");
  fit->add_option("op", o.op, "once | hist | min | max")->required()->check(CLI::IsMember({"once", "hist", "min", "max"}));
  fit->add_option("--interval", o.interval, "Window a,b for once/hist")->delimiter(',');
  add_fit(fit);
  add_seed(fit);
  add_out(fit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[Usage]: " << e.what() << '\n';
    return kUsage;
  }
  if (compress->parsed() && !o.cutoff_hz && !o.auto_threshold) {
    std::cerr << "error[Usage]: compress needs --cutoff-hz or --auto-threshold\n";
    return kUsage;
  }

  try {
    if (parse->parsed()) return cmd_parse(o);
    if (monitor->parsed()) return cmd_monitor(o);
    if (gfrf->parsed()) return cmd_gfrf(o);
    if (cutoff->parsed()) return cmd_cutoff(o);
    if (compress->parsed()) return cmd_compress(o);
    if (fit->parsed()) return cmd_fit(o);
  } catch (const Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.what() << '\n';
    return unsupported(e.code()) ? kUnsupported : kData;
  } catch (const std::exception& e) {
    std::cerr << "error[Internal]: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
