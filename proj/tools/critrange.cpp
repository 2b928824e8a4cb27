#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "critrange/asymptotics.hpp"
#include "critrange/killed_bm.hpp"
#include "critrange/limit_laws.hpp"
#include "critrange/mc_engine.hpp"
#include "critrange/quadrature.hpp"
#include "critrange/special_fn.hpp"
#include "critrange/stats.hpp"

namespace {

using json = nlohmann::ordered_json;
using critrange::SeriesCtl;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Common {
  double tol = 1e-14;
  std::string out = ".";
  std::string format = "csv";
  int threads = 0;  // 0: resolve from hardware

  SeriesCtl ctl() const { return SeriesCtl{tol, 512}; }
  int resolved_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "absolute series/quadrature tolerance");
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "worker count")
      ->envname("CRITRANGE_THREADS");
  cmd->set_config("--config");
}

void write_text(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir + "/" + name, std::ios::binary);
  f << body;
}

// A simple row-oriented table rendered as CSV or a JSON record list.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) {
      s += header[i];
      s += i + 1 == header.size() ? "\n" : ",";
    }
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        s += i + 1 == r.size() ? "\n" : ",";
      }
    }
    return s;
  }

  json records() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json rec;
      for (std::size_t i = 0; i < header.size(); ++i) rec[header[i]] = r[i];
      arr.push_back(rec);
    }
    return arr;
  }
};

void emit(const Common& c, const std::string& stem, const Table& t, const json& config) {
  if (c.format == "json") {
    json doc;
    doc["version"] = critrange::kVersion;
    doc["config"] = config;
    doc["results"] = t.records();
    const std::string body = doc.dump(2) + "\n";
    write_text(c.out, stem + ".json", body);
    std::fputs(body.c_str(), stdout);
  } else {
    const std::string body = t.csv();
    write_text(c.out, stem + ".csv", body);
    std::fputs(body.c_str(), stdout);
  }
}

// ---------------------------------------------------------------- eval

struct EvalOpts {
  Common common;
  std::string fn;
  std::vector<double> v{1.0};
  std::vector<double> x{0.0};
  int l = 0;
  int k = 0;
  double t = 1.0;
  double a = 0.5;
  double y = 0.5;
  double c = 1.0;
};

int cmd_eval(const EvalOpts& o) {
  const SeriesCtl ctl = o.common.ctl();
  Table tab;
  json cfg{{"fn", o.fn}, {"tol", o.common.tol}};
  if (o.fn == "G") {
    tab.header = {"v", "x", "l", "value", "est_error"};
    for (double v : o.v)
      for (double x : o.x)
        tab.rows.push_back({fmt(v), fmt(x), std::to_string(o.l),
                            fmt(critrange::special_fn::g_eval({v, x, o.l}, ctl)),
                            fmt(ctl.tol)});
  } else if (o.fn == "eta") {
    tab.header = {"k", "v", "value", "est_error"};
    for (double v : o.v)
      tab.rows.push_back({std::to_string(o.k), fmt(v),
                          fmt(critrange::special_fn::eta(o.k, v, ctl)), fmt(ctl.tol)});
  } else if (o.fn == "F") {
    tab.header = {"v", "t", "value", "est_error"};
    for (double v : o.v)
      tab.rows.push_back(
          {fmt(v), fmt(o.t), fmt(critrange::special_fn::f_integrand(v, o.t, ctl)),
           fmt(ctl.tol)});
  } else if (o.fn == "T") {
    tab.header = {"x", "value", "est_error"};
    for (double x : o.x)
      tab.rows.push_back({fmt(x), fmt(critrange::limit_laws::max_cdf(x, ctl)), fmt(ctl.tol)});
  } else if (o.fn == "p_c") {
    tab.header = {"a", "y", "c", "t", "value", "est_error"};
    tab.rows.push_back(
        {fmt(o.a), fmt(o.y), fmt(o.c), fmt(o.t),
         fmt(critrange::killed_bm::transition_density(o.a, o.y, {o.c}, o.t, ctl)),
         fmt(ctl.tol)});
  } else if (o.fn == "survival") {
    tab.header = {"a", "c", "t", "value", "est_error"};
    tab.rows.push_back(
        {fmt(o.a), fmt(o.c), fmt(o.t),
         fmt(critrange::killed_bm::survival_probability(o.a, {o.c}, o.t, ctl)),
         fmt(ctl.tol)});
  } else {
    throw critrange::DomainError("eval: unknown function " + o.fn);
  }
  emit(o.common, "eval", tab, cfg);
  return 0;
}

// ---------------------------------------------------------------- expansion

struct ExpansionOpts {
  Common common;
  double t = 50.0;
  double h = 1.0;
  int n = 3;
  bool quadrature = false;
  bool quadrature_only = false;
};

int cmd_expansion(const ExpansionOpts& o) {
  const SeriesCtl ctl = o.common.ctl();
  const critrange::asymptotics::ModelParams p{o.h, o.t};
  const double T = o.t * o.h * o.h;
  json cfg{{"t", o.t}, {"h", o.h}, {"n", o.n}, {"tol", o.common.tol}};
  double quad = std::numeric_limits<double>::quiet_NaN();
  if (o.quadrature || o.quadrature_only) {
    // scaled to match the partial sums: t h^2 e^{h^2 t/2} E^h[e^{-h C_t}]
    quad = T * std::exp(T / 2.0) *
           critrange::asymptotics::normalizer_series_quadrature(p, ctl);
  }
  Table tab;
  if (o.quadrature_only) {
    tab.header = {"t", "h", "quadrature"};
    tab.rows.push_back({fmt(o.t), fmt(o.h), fmt(quad)});
    emit(o.common, "quadrature", tab, cfg);
    return 0;
  }
  const auto table = critrange::asymptotics::normalizer_expansion(p, o.n);
  tab.header = {"l", "term", "partial", "quadrature", "abs_diff"};
  for (int l = 0; l <= o.n; ++l) {
    const double term = T * table.terms[static_cast<std::size_t>(l)];
    const double partial = T * table.partials[static_cast<std::size_t>(l)];
    tab.rows.push_back({std::to_string(l), fmt(term), fmt(partial),
                        o.quadrature ? fmt(quad) : "",
                        o.quadrature ? fmt(std::abs(partial - quad)) : ""});
  }
  emit(o.common, "expansion", tab, cfg);
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  Common common;
  double t = 100.0;
  double h = 1.0;
  std::int64_t n_paths = 100000;
  double dt = 0.01;
  std::uint64_t seed = 1;
  std::string mode = "bridge";
  double u = 1.0;
};

json sim_config(const SimulateOpts& o) {
  // threads deliberately excluded: it is an execution detail and the output
  // is identical for every worker count.
  return json{{"t", o.t},     {"h", o.h},   {"n_paths", o.n_paths}, {"dt", o.dt},
              {"seed", o.seed}, {"mode", o.mode}, {"u", o.u},       {"tol", o.common.tol}};
}

critrange::mc_engine::WeightedEnsemble run_from(const SimulateOpts& o) {
  const auto mode = o.mode == "bridge" ? critrange::mc_engine::Refinement::bridge
                                       : critrange::mc_engine::Refinement::skeleton;
  return critrange::mc_engine::run_ensemble({o.h, o.t}, o.n_paths, o.dt, mode, o.seed,
                                            o.common.resolved_threads(), o.u);
}

const char* functional_name(critrange::mc_engine::Functional f) {
  using F = critrange::mc_engine::Functional;
  switch (f) {
    case F::neg_min: return "neg_min";
    case F::max_scaled: return "max_scaled";
    case F::endpoint_scaled: return "endpoint_scaled";
    case F::endpoint_at_u: return "endpoint_at_u";
    case F::gap_scaled: return "gap_scaled";
  }
  return "";
}

int cmd_simulate(const SimulateOpts& o) {
  const auto e = run_from(o);
  using F = critrange::mc_engine::Functional;
  for (F f : {F::neg_min, F::max_scaled, F::endpoint_scaled, F::endpoint_at_u,
              F::gap_scaled}) {
    const auto ecdf = critrange::mc_engine::conditional_ecdf(e, f);
    Table tab;
    tab.header = {"value", "cum"};
    for (std::size_t i = 0; i < ecdf.x.size(); ++i) {
      tab.rows.push_back({fmt(ecdf.x[i]), fmt(ecdf.cum[i])});
    }
    write_text(o.common.out, std::string("ecdf_") + functional_name(f) + ".csv", tab.csv());
  }
  json doc;
  doc["version"] = critrange::kVersion;
  doc["config"] = sim_config(o);
  doc["results"] = {{"mean_weight", critrange::mc_engine::mean_weight(e)},
                    {"ess", critrange::mc_engine::ess(e)},
                    {"n_paths", e.meta.n}};
  const std::string body = doc.dump(2) + "\n";
  write_text(o.common.out, "simulate_summary.json", body);
  std::fputs(body.c_str(), stdout);
  return 0;
}

// ---------------------------------------------------------------- compare

struct CompareOpts {
  SimulateOpts sim;
  double ks_min = 0.05;
  double ks_max = 0.05;
  double tv_endpoint = 0.08;
};

int cmd_compare(const CompareOpts& o) {
  const SeriesCtl ctl = o.sim.common.ctl();
  const auto e = run_from(o.sim);
  using F = critrange::mc_engine::Functional;
  const double h = o.sim.h;
  const double u = o.sim.u;

  const auto ecdf_min = critrange::mc_engine::conditional_ecdf(e, F::neg_min);
  const auto ecdf_max = critrange::mc_engine::conditional_ecdf(e, F::max_scaled);
  auto law_min = [&](double a) { return critrange::limit_laws::min_cdf(std::max(a, 0.0), h); };
  auto law_max = [&](double x) {
    return x <= 0.0 ? 0.0 : critrange::limit_laws::max_cdf(x, ctl);
  };
  const double ks1 = critrange::stats::ks_distance(ecdf_min, law_min);
  const double ks2 = critrange::stats::ks_distance(ecdf_max, law_max);

  auto density = [&](double x) { return critrange::limit_laws::endpoint_density(x, u, h, ctl); };
  const double span = 12.0 / h + 8.0 * std::sqrt(u);
  auto cdf_model = [&](double x) {
    return critrange::integrate(density, -span, x, 1e-8, "compare endpoint cdf");
  };
  const auto edges = critrange::stats::equiprobable_edges(cdf_model, 20, -span, span);
  const double tv =
      critrange::stats::tv_binned(critrange::mc_engine::functional_points(e, F::endpoint_at_u),
                                  density, edges);

  auto dump_curve = [&](const char* name, const critrange::stats::WeightedECDF& ecdf,
                        const std::function<double(double)>& law) {
    Table tab;
    tab.header = {"x", "ecdf", "cdf"};
    for (std::size_t i = 0; i < ecdf.x.size(); ++i) {
      tab.rows.push_back({fmt(ecdf.x[i]), fmt(ecdf.cum[i]), fmt(law(ecdf.x[i]))});
    }
    write_text(o.sim.common.out, std::string("compare_") + name + ".csv", tab.csv());
  };
  dump_curve("min", ecdf_min, law_min);
  dump_curve("max", ecdf_max, law_max);

  const bool pass_min = ks1 <= o.ks_min;
  const bool pass_max = ks2 <= o.ks_max;
  const bool pass_tv = tv <= o.tv_endpoint;
  json doc;
  doc["version"] = critrange::kVersion;
  doc["config"] = sim_config(o.sim);
  doc["config"]["ks_min_threshold"] = o.ks_min;
  doc["config"]["ks_max_threshold"] = o.ks_max;
  doc["config"]["tv_endpoint_threshold"] = o.tv_endpoint;
  doc["results"] = {{"ks_neg_min", ks1},     {"ks_max_scaled", ks2},
                    {"tv_endpoint_at_u", tv}, {"ess", critrange::mc_engine::ess(e)},
                    {"pass_min", pass_min},  {"pass_max", pass_max},
                    {"pass_endpoint", pass_tv}};
  const std::string body = doc.dump(2) + "\n";
  write_text(o.sim.common.out, "compare_report.json", body);
  std::fputs(body.c_str(), stdout);
  return pass_min && pass_max && pass_tv ? 0 : 5;
}

// ---------------------------------------------------------------- limits

int cmd_limits(const Common& common, double h) {
  const SeriesCtl ctl = common.ctl();
  Table tab;
  tab.header = {"law", "x", "value"};
  for (int i = 0; i <= 20; ++i) {
    const double A = 0.25 * i;
    tab.rows.push_back({"min_cdf", fmt(A), fmt(critrange::limit_laws::min_cdf(A, h))});
  }
  for (int i = 1; i <= 50; ++i) {
    const double x = 0.1 * i;
    tab.rows.push_back({"max_cdf", fmt(x), fmt(critrange::limit_laws::max_cdf(x, ctl))});
  }
  for (int i = 1; i <= 40; ++i) {
    const double a = 0.25 * i;
    tab.rows.push_back(
        {"level_density", fmt(a), fmt(critrange::limit_laws::level_density(a, h))});
  }
  for (int i = -20; i <= 20; ++i) {
    const double x = 0.25 * i;
    tab.rows.push_back({"endpoint_density_u1", fmt(x),
                        fmt(critrange::limit_laws::endpoint_density(x, 1.0, h, ctl))});
  }
  emit(common, "limits", tab, json{{"h", h}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical-case range-penalized Brownian motion toolkit"};
  // --h is a model parameter, so the help flag must not claim the short name
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "evaluate special functions on a grid");
  eval->set_help_flag("--help", "print help and exit");
  add_common(eval, eo.common);
  eval->add_option("--fn", eo.fn, "G | eta | F | T | p_c | survival")->required();
  eval->add_option("--v", eo.v, "series parameter(s)")->delimiter(',');
  eval->add_option("--x", eo.x, "phase / argument grid")->delimiter(',');
  eval->add_option("--l", eo.l, "derivative order");
  eval->add_option("--k", eo.k, "eta argument (non-positive integer)");
  eval->add_option("--t", eo.t, "time horizon");
  eval->add_option("--a", eo.a, "start point");
  eval->add_option("--y", eo.y, "end point");
  eval->add_option("--c", eo.c, "interval width");

  ExpansionOpts xo;
  auto* expansion = app.add_subcommand("expansion", "large-t normalizer expansion");
  expansion->set_help_flag("--help", "print help and exit");
  add_common(expansion, xo.common);
  expansion->add_option("--t", xo.t, "time horizon");
  expansion->add_option("--h", xo.h, "drift / intensity");
  expansion->add_option("--n", xo.n, "expansion order (<= 8)");
  expansion->add_flag("--quadrature", xo.quadrature, "also run the quadrature cross-check");
  expansion->add_flag("--quadrature-only", xo.quadrature_only, "print only the quadrature value");

  ExpansionOpts qo;
  qo.quadrature_only = true;
  auto* quadrature = app.add_subcommand("quadrature", "normalizer by quadrature");
  quadrature->set_help_flag("--help", "print help and exit");
  add_common(quadrature, qo.common);
  quadrature->add_option("--t", qo.t, "time horizon");
  quadrature->add_option("--h", qo.h, "drift / intensity");

  SimulateOpts so;
  auto* simulate = app.add_subcommand("simulate", "importance-sampling ensemble");
  simulate->set_help_flag("--help", "print help and exit");
  add_common(simulate, so.common);
  simulate->add_option("--t", so.t, "physical horizon");
  simulate->add_option("--h", so.h, "drift / intensity");
  simulate->add_option("--n-paths", so.n_paths, "path count (>= 1000)");
  simulate->add_option("--dt", so.dt, "simulation step");
  simulate->add_option("--seed", so.seed, "RNG seed");
  simulate->add_option("--mode", so.mode, "refinement mode")
      ->check(CLI::IsMember({"skeleton", "bridge"}));
  simulate->add_option("--u", so.u, "intermediate recording time");

  CompareOpts co;
  auto* compare = app.add_subcommand("compare", "Monte Carlo vs limit laws");
  compare->set_help_flag("--help", "print help and exit");
  add_common(compare, co.sim.common);
  co.sim.n_paths = 200000;
  compare->add_option("--t", co.sim.t, "physical horizon");
  compare->add_option("--h", co.sim.h, "drift / intensity");
  compare->add_option("--n-paths", co.sim.n_paths, "path count (>= 1000)");
  compare->add_option("--dt", co.sim.dt, "simulation step");
  compare->add_option("--seed", co.sim.seed, "RNG seed");
  compare->add_option("--mode", co.sim.mode, "refinement mode")
      ->check(CLI::IsMember({"skeleton", "bridge"}));
  compare->add_option("--u", co.sim.u, "intermediate recording time");
  compare->add_option("--ks-min", co.ks_min, "threshold for the minimum law");
  compare->add_option("--ks-max", co.ks_max, "threshold for the maximum law");
  compare->add_option("--tv-endpoint", co.tv_endpoint, "threshold for the endpoint law");

  Common lc;
  double lh = 1.0;
  auto* limits = app.add_subcommand("limits", "closed-form limit laws on a grid");
  limits->set_help_flag("--help", "print help and exit");
  add_common(limits, lc);
  limits->add_option("--h", lh, "drift / intensity");

  try {
    app.parse(argc, argv);
    if (eval->parsed()) return cmd_eval(eo);
    if (expansion->parsed()) return cmd_expansion(xo);
    if (quadrature->parsed()) return cmd_expansion(qo);
    if (simulate->parsed()) return cmd_simulate(so);
    if (compare->parsed()) return cmd_compare(co);
    if (limits->parsed()) return cmd_limits(lc, lh);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const critrange::TermCapExceeded& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const critrange::QuadratureFailure& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const critrange::DegenerateWeights& e) {
    std::fprintf(stderr, "degenerate statistics: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const critrange::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
