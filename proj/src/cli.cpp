#include "perarfima/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "perarfima/acvf.hpp"
#include "perarfima/appendixma.hpp"
#include "perarfima/parmodel.hpp"
#include "perarfima/simulate.hpp"

namespace perarfima::cli {

namespace {

struct RunConfig {
  std::string spec_path;
  std::string out_path;
  std::string format = "csv";
  std::string target;
  long T = 1000;
  long jmax = 100;
  long trunc = 10000;
  long burnin = 2000;
  std::uint64_t seed = 1;
  int reps = 1;
};

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void write_series(std::ostream& os, const SeriesSample& sample, const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["S"] = sample.S;
    j["seed"] = sample.seed;
    j["model"] = to_string(sample.model);
    j["burnin"] = sample.burnin;
    j["truncation"] = sample.truncation;
    j["values"] = sample.values;
    os << j.dump(2) << '\n';
    return;
  }
  os << "t,season,value\n";
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    const long t = static_cast<long>(i) + 1;
    os << t << ',' << sample.season_of(t) << ',' << fmt(sample.values[i], "%.17g") << '\n';
  }
}

void write_pacvf_rows(std::ostream& os, const Pacvf& grid) {
  const std::string method = to_string(grid.method);
  for (int s = 1; s <= grid.S; ++s) {
    for (long j = 0; j <= grid.jmax; ++j) {
      long h = 0;
      int nu = 0, delta = 0;
      if (j > 0) {
        const LagDecomposition d = decompose_lag(j, s, grid.S);
        h = d.block_lag;
        nu = d.offset;
        delta = d.carry;
      }
      os << s << ',' << j << ',' << h << ',' << nu << ',' << delta << ',' << fmt(grid.at(s, j)) << ',' << method
         << '\n';
    }
  }
}

void write_pacvf(std::ostream& os, const std::vector<Pacvf>& grids, const std::string& format) {
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const Pacvf& grid : grids) {
      nlohmann::json g;
      g["S"] = grid.S;
      g["jmax"] = grid.jmax;
      g["method"] = to_string(grid.method);
      g["meta"] = grid.meta;
      g["gamma"] = grid.gamma;
      out.push_back(g);
    }
    os << out.dump(2) << '\n';
    return;
  }
  os << "s,j,h,nu,delta,gamma,method\n";
  for (const Pacvf& grid : grids) write_pacvf_rows(os, grid);
}

int cmd_simulate(const RunConfig& cfg) {
  const PeriodicModelSpec spec = load_spec(cfg.spec_path);
  const SeriesSample sample = simulate(spec, cfg.T, cfg.seed, cfg.burnin, cfg.trunc);
  Output out(cfg.out_path);
  write_series(out.stream(), sample, cfg.format);
  return 0;
}

int cmd_acvf(const RunConfig& cfg) {
  const PeriodicModelSpec spec = load_spec(cfg.spec_path);
  const EmpiricalSummary summary =
      replicated_empirical_pacvf(spec, cfg.T, cfg.jmax, cfg.seed, cfg.reps, cfg.burnin, cfg.trunc);
  Output out(cfg.out_path);
  write_pacvf(out.stream(), {summary.mean}, cfg.format);
  return 0;
}

int cmd_theory(const RunConfig& cfg) {
  const PeriodicModelSpec spec = load_spec(cfg.spec_path);
  std::vector<Pacvf> grids;
  grids.push_back(exact_pacvf(spec, cfg.jmax, cfg.trunc));
  grids.push_back(spec.kind == ModelKind::ModelC_Varfi ? asymptotic_pacvf_varfi(spec, cfg.jmax)
                                                       : asymptotic_pacvf_fivar(spec, cfg.jmax));
  Output out(cfg.out_path);
  write_pacvf(out.stream(), grids, cfg.format);
  return 0;
}

int cmd_companion(const RunConfig& cfg) {
  const PeriodicModelSpec spec = load_spec(cfg.spec_path);
  const CompanionForm c = build_companion(spec);
  nlohmann::json j;
  j["S"] = c.S;
  j["P"] = c.P;
  j["phi0"] = matrix_to_json(c.phi0);
  nlohmann::json lags = nlohmann::json::array();
  for (const Matrix& m : c.phi) lags.push_back(matrix_to_json(m));
  j["phi"] = lags;
  j["root_moduli"] = stationarity_roots(c);
  j["stationary"] = is_stationary(c);
  if (is_stationary(c)) j["pi_total"] = matrix_to_json(pi_total(c));
  Output out(cfg.out_path);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_matrices(const RunConfig& cfg) {
  const PeriodicModelSpec spec = load_spec(cfg.spec_path);
  if (!cfg.target.empty() && cfg.target != "m41" && cfg.target != "m42")
    throw std::invalid_argument("matrices: target must be m41 or m42");
  const bool want_fivar = cfg.target.empty() || cfg.target == "m41";
  const bool want_varfi = cfg.target.empty() || cfg.target == "m42";

  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    nlohmann::json j;
    if (want_fivar) j["fivar"] = matrix_to_json(fivar_amplitude_grid(spec));
    if (want_varfi) j["varfi"] = matrix_to_json(varfi_amplitude_grid(spec));
    os << j.dump(2) << '\n';
  } else {
    os << "grid,l,m,value\n";
    auto rows = [&](const std::string& name, const Matrix& g) {
      for (int l = 0; l < g.rows(); ++l)
        for (int m = 0; m < g.cols(); ++m) os << name << ',' << l + 1 << ',' << m + 1 << ',' << fmt(g(l, m)) << '\n';
    };
    if (want_fivar) rows("fivar", fivar_amplitude_grid(spec));
    if (want_varfi) rows("varfi", varfi_amplitude_grid(spec));
  }
  return 0;
}

int cmd_appendix_ma(const RunConfig& cfg) {
  const PeriodicModelSpec spec = load_spec(cfg.spec_path);
  const MaTable table = ma_recursion(spec.D, cfg.jmax);
  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    nlohmann::json j;
    j["S"] = table.S;
    j["d"] = table.d;
    j["jmax"] = table.jmax;
    j["psi"] = table.psi;
    os << j.dump(2) << '\n';
    return 0;
  }
  os << "t,j,psi\n";
  for (int t = 1; t <= table.S; ++t)
    for (long j = 0; j <= table.jmax; ++j) os << t << ',' << j << ',' << fmt(table.at(t, j), "%.15g") << '\n';
  return 0;
}

struct FigureSeries {
  std::string model;
  std::string method;
  const Pacvf* grid;
};

void write_figure_rows(std::ostream& os, const std::vector<FigureSeries>& series, long jmin, long jmax) {
  os << "model,method,s,j,gamma\n";
  for (const FigureSeries& fs : series)
    for (int s = 1; s <= fs.grid->S; ++s)
      for (long j = jmin; j <= jmax; ++j)
        os << fs.model << ',' << fs.method << ',' << s << ',' << j << ',' << fmt(fs.grid->at(s, j)) << '\n';
}

int cmd_figures(const RunConfig& cfg) {
  const PeriodicModelSpec base = load_spec(cfg.spec_path);
  if (cfg.target.empty()) throw std::invalid_argument("figures: --target is required (fig1..fig8, figB, figC)");

  const std::vector<double> d_sets[4] = {
      {0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.4, 0.4}, {0.1, 0.4, 0.4, 0.4}, {0.4, 0.4, 0.4, 0.4}};

  struct Target {
    std::vector<ModelKind> kinds;
    std::vector<double> D;
    long jmax;
  };
  Target tgt;
  const std::string& name = cfg.target;
  if (name.size() == 4 && name.rfind("fig", 0) == 0 && name[3] >= '1' && name[3] <= '4') {
    tgt = {{ModelKind::ModelA}, d_sets[name[3] - '1'], 25};
  } else if (name.size() == 4 && name.rfind("fig", 0) == 0 && name[3] >= '5' && name[3] <= '8') {
    tgt = {{ModelKind::ModelB_Fivar, ModelKind::ModelC_Varfi}, d_sets[name[3] - '5'], 100};
  } else if (name == "figB") {
    tgt = {{ModelKind::ModelB_Fivar}, {0.1, 0.2, 0.3, 0.4}, 100};
  } else if (name == "figC") {
    tgt = {{ModelKind::ModelC_Varfi}, {0.1, 0.2, 0.4, 0.4}, 100};
  } else {
    throw std::invalid_argument("figures: unknown target '" + name + "'");
  }
  if (base.S != static_cast<int>(tgt.D.size()))
    throw std::invalid_argument("figures: target needs a spec with S = " + std::to_string(tgt.D.size()));

  std::vector<std::unique_ptr<Pacvf>> storage;
  std::vector<FigureSeries> series;
  for (ModelKind kind : tgt.kinds) {
    PeriodicModelSpec spec = base;
    spec.kind = kind;
    spec.D = tgt.D;
    if (kind == ModelKind::ModelA) {
      spec.p = 0;
      spec.phi.assign(spec.S, {});
    }
    spec.validate();
    const std::string model = to_string(kind);
    const EmpiricalSummary emp =
        replicated_empirical_pacvf(spec, cfg.T, tgt.jmax, cfg.seed, cfg.reps, cfg.burnin, cfg.trunc);
    storage.push_back(std::make_unique<Pacvf>(emp.mean));
    series.push_back({model, "empirical", storage.back().get()});
    storage.push_back(std::make_unique<Pacvf>(exact_pacvf(spec, tgt.jmax, cfg.trunc)));
    series.push_back({model, "exact", storage.back().get()});
  }

  Output out(cfg.out_path);
  write_figure_rows(out.stream(), series, 1, tgt.jmax);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"periodic seasonal fractional ARFIMA toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool need_out) {
    sub->add_option("--spec", cfg.spec_path, "model spec JSON file")->required();
    auto* out = sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
    if (need_out) out->required();
    sub->add_option("--T", cfg.T, "sample length");
    sub->add_option("--jmax", cfg.jmax, "largest lag");
    sub->add_option("--trunc", cfg.trunc, "moving-average truncation M");
    sub->add_option("--burnin", cfg.burnin, "discarded leading blocks");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--reps", cfg.reps, "replication count");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--target", cfg.target, "named output target");
  };

  CLI::App* sim = app.add_subcommand("simulate", "draw a sample path, write t,season,value");
  add_common(sim, true);
  CLI::App* acv = app.add_subcommand("acvf", "mean empirical periodic autocovariances over replications");
  add_common(acv, true);
  CLI::App* theory = app.add_subcommand("theory", "exact and asymptotic periodic autocovariances");
  add_common(theory, true);
  CLI::App* comp = app.add_subcommand("companion", "stacked-form matrices, roots and long-run inverse");
  add_common(comp, false);
  CLI::App* mat = app.add_subcommand("matrices", "asymptotic amplitude grids (targets m41, m42)");
  add_common(mat, false);
  CLI::App* fig = app.add_subcommand("figures", "plot-ready autocovariance bundles (targets fig1..fig8, figB, figC)");
  add_common(fig, true);
  CLI::App* ama = app.add_subcommand("appendix-ma", "time-varying moving-average table, write t,j,psi");
  add_common(ama, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cfg);
    if (acv->parsed()) return cmd_acvf(cfg);
    if (theory->parsed()) return cmd_theory(cfg);
    if (comp->parsed()) return cmd_companion(cfg);
    if (mat->parsed()) return cmd_matrices(cfg);
    if (fig->parsed()) return cmd_figures(cfg);
    if (ama->parsed()) return cmd_appendix_ma(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("perarfima");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace perarfima::cli
