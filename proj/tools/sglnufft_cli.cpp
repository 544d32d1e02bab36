// sglnufft command-line front end.
//
// Output goes to --out through a temporary file that is renamed into place
// only after the whole result has been written, so a failed run leaves
// nothing behind. Without --out the CSV goes to stdout.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "sglnufft/experiments.hpp"
#include "sglnufft/inverse.hpp"
#include "sglnufft/sgl_transform.hpp"

using namespace sglnufft;
namespace fs = std::filesystem;

namespace {

void emit(const std::string& out, const std::function<void(std::ostream&)>& writer) {
  if (out.empty() || out == "-") {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  const fs::path target(out);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream f(tmp);
      if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      writer(f);
      f.flush();
      if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

BandlimitedCoefficients load_coeffs(const std::string& path) {
  auto f = open_input(path);
  try {
    return read_coefficients_csv(f);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

SphericalPointSet load_points(const std::string& path) {
  auto f = open_input(path);
  try {
    return read_points_csv(f);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

CVector load_values(const std::string& path) {
  auto f = open_input(path);
  try {
    return read_values_csv(f);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

const std::map<std::string, OperatorKind> kMethods{{"naive", OperatorKind::naive},
                                                   {"fast", OperatorKind::fast},
                                                   {"fast-exact", OperatorKind::fast_exact},
                                                   {"dense", OperatorKind::dense}};
const std::map<std::string, SolverChoice> kSolvers{{"cgnr", SolverChoice::cgnr},
                                                   {"cgne", SolverChoice::cgne},
                                                   {"auto", SolverChoice::automatic}};
const std::map<std::string, GridChoice> kGrids{{"support", GridChoice::support},
                                               {"reduced", GridChoice::reduced},
                                               {"cube", GridChoice::cube}};
const std::map<std::string, MidpointWeight> kWeights{{"riemann", MidpointWeight::riemann},
                                                     {"fixed", MidpointWeight::fixed}};
const std::map<std::string, InitialGuess> kGuesses{{"zero", InitialGuess::zero},
                                                   {"midpoint", InitialGuess::midpoint}};

// Shared transform settings of forward, adjoint and invert.
struct TransformFlags {
  std::string method = "fast";
  double sigma = 2.0;
  int cutoff = 16;
  std::string grid = "support";
  bool extended = false;

  void attach(CLI::App* app, bool allow_dense) {
    std::vector<std::string> names{"naive", "fast", "fast-exact"};
    if (allow_dense) names.push_back("dense");
    app->add_option("--method", method, "Transform: naive, fast (NFFT) or fast-exact (NDFT)")
        ->check(CLI::IsMember(names))
        ->capture_default_str();
    app->add_option("--sigma", sigma, "NFFT oversampling factor")
        ->check(CLI::Range(2.0, 16.0))
        ->capture_default_str();
    app->add_option("--cutoff", cutoff, "NFFT window cutoff q")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--grid", grid, "Trigonometric grid: support, reduced or cube")
        ->check(CLI::IsMember({"support", "reduced", "cube"}))
        ->capture_default_str();
    app->add_flag("--extended", extended, "Long double Clenshaw and compensated CG sums");
  }

  SglOptions sgl() const {
    SglOptions o;
    o.sigma = sigma;
    o.q = cutoff;
    o.grid = kGrids.at(grid);
    o.last_stage = method == "fast-exact" ? LastStage::ndft : LastStage::nfft;
    o.precision = extended ? Precision::compensated : Precision::standard;
    return o;
  }
};

struct ExperimentFlags {
  std::vector<int> bandwidth;
  std::vector<std::size_t> points;
  std::vector<double> kappa;
  std::vector<int> cutoff;
  std::vector<int> grid_n;
  double sigma = 2.0;
  int repetitions = 0;
  std::uint64_t seed = 1;
  int max_iter = 0;
  double tol = 0.0;
  std::string method;
  std::string weight = "riemann";
  std::string grid = "support";
  bool exact_column = false;
  bool no_exact_column = false;
  bool paper_scale = false;
  bool extended = false;
};

ExperimentSpec default_spec(const std::string& kind, bool paper) {
  ExperimentSpec s;
  s.repetitions = paper ? 10 : 3;
  if (kind == "error-vs-q") {
    s.bandwidths = {paper ? 32 : 8};
    s.points = paper ? 10000 : 1000;
    s.kappas = {5.0};
    s.cutoffs.clear();
    for (int q = 1; q <= 20; ++q) s.cutoffs.push_back(q);
  } else if (kind == "runtime") {
    s.bandwidths = {paper ? 32 : 16};
    s.point_counts = paper ? std::vector<std::size_t>{10, 100, 1000, 10000, 100000, 1000000}
                           : std::vector<std::size_t>{10, 100, 1000, 10000};
    s.kappas = {5.0};
    s.cutoffs = {16};
  } else if (kind == "error-vs-radius") {
    s.bandwidths = {paper ? 32 : 8};
    s.points = 1000;
    s.kappas.clear();
    for (int i = 1; i <= 31; ++i) s.kappas.push_back(i / 4.0);
    s.cutoffs = {16};
  } else if (kind == "error-vs-bandwidth") {
    s.bandwidths = paper ? std::vector<int>{8, 16, 32, 64, 128} : std::vector<int>{8, 16};
    s.points = 1000;
    s.kappas = {5.0};
    s.cutoffs = {12};
    s.exact_column = true;
  } else if (kind == "inverse-convergence") {
    s.bandwidths = {8};
    s.kappas = {5.0};
    s.cutoffs = {15};
    s.grid_sizes = paper ? std::vector<int>{25, 50, 100} : std::vector<int>{25};
    s.max_iter = paper ? 10000 : 2000;
    s.inverse_operator = paper ? OperatorKind::fast : OperatorKind::dense;
    s.precision = Precision::compensated;
    s.repetitions = 1;
  }
  return s;
}

CsvTable run_experiment(const std::string& kind, const ExperimentFlags& f) {
  ExperimentSpec s = default_spec(kind, f.paper_scale);
  if (!f.bandwidth.empty()) s.bandwidths = f.bandwidth;
  if (!f.kappa.empty()) s.kappas = f.kappa;
  if (!f.cutoff.empty()) s.cutoffs = f.cutoff;
  if (!f.grid_n.empty()) s.grid_sizes = f.grid_n;
  if (!f.points.empty()) {
    if (kind == "runtime") {
      s.point_counts = f.points;
    } else if (f.points.size() == 1) {
      s.points = f.points.front();
    } else {
      throw CLI::ValidationError("--points", "takes a single count for " + kind);
    }
  }
  s.sigma = f.sigma;
  s.seed = f.seed;
  s.grid = kGrids.at(f.grid);
  if (f.repetitions > 0) s.repetitions = f.repetitions;
  if (f.max_iter > 0) s.max_iter = f.max_iter;
  if (f.tol > 0.0) s.tol = f.tol;
  if (!f.method.empty()) s.inverse_operator = kMethods.at(f.method);
  s.midpoint = kWeights.at(f.weight);
  if (f.extended) s.precision = Precision::compensated;
  if (f.exact_column) s.exact_column = true;
  if (f.no_exact_column) s.exact_column = false;

  if (kind == "error-vs-q") return experiment_error_vs_q(s);
  if (kind == "runtime") return experiment_runtime(s);
  if (kind == "error-vs-radius") return experiment_error_vs_radius(s);
  if (kind == "error-vs-bandwidth") return experiment_error_vs_bandwidth(s);
  return experiment_inverse(s);
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"Fast spherical Gauss-Laguerre transforms for scattered data"};
  app.require_subcommand(1);
  std::string out;

  // gen-coeffs
  int gc_bandwidth = 4;
  std::uint64_t gc_seed = 1;
  auto* gc = app.add_subcommand("gen-coeffs", "Random coefficients, re and im uniform in [-1,1]");
  gc->add_option("--bandwidth", gc_bandwidth, "Bandwidth B")
      ->check(CLI::Range(1, 512))
      ->capture_default_str();
  gc->add_option("--seed", gc_seed, "Random seed")->capture_default_str();
  gc->add_option("--out", out, "Output CSV (stdout if omitted)");

  // gen-points
  std::size_t gp_points = 1000;
  double gp_kappa = 5.0;
  std::uint64_t gp_seed = 1;
  auto* gp = app.add_subcommand("gen-points", "Points uniform in the ball of radius kappa");
  gp->add_option("--points", gp_points, "Number of points M")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gp->add_option("--kappa", gp_kappa, "Ball radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gp->add_option("--seed", gp_seed, "Random seed")->capture_default_str();
  gp->add_option("--out", out, "Output CSV (stdout if omitted)");

  // gen-grid
  int gg_n = 25;
  double gg_kappa = 5.0;
  auto* gg = app.add_subcommand("gen-grid", "Cartesian grid G_N scaled by kappa");
  gg->add_option("--grid-n", gg_n, "Points per axis N")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  gg->add_option("--kappa", gg_kappa, "Half side length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gg->add_option("--out", out, "Output CSV (stdout if omitted)");

  // forward
  std::string fw_coeffs, fw_nodes;
  bool fw_report = false;
  TransformFlags fw_flags;
  auto* fw = app.add_subcommand("forward", "Evaluate a bandlimited function at points");
  fw->add_option("--coeffs", fw_coeffs, "Coefficient CSV")->required();
  fw->add_option("--nodes", fw_nodes, "Point CSV")->required();
  fw_flags.attach(fw, false);
  fw->add_flag("--report-diff", fw_report,
               "Also run the naive transform and print the max relative difference");
  fw->add_option("--out", out, "Output value CSV (stdout if omitted)");

  // adjoint
  std::string ad_values, ad_nodes;
  int ad_bandwidth = 0;
  TransformFlags ad_flags;
  auto* ad = app.add_subcommand("adjoint", "Adjoint transform of point values");
  ad->add_option("--values", ad_values, "Value CSV")->required();
  ad->add_option("--nodes", ad_nodes, "Point CSV")->required();
  ad->add_option("--bandwidth", ad_bandwidth, "Bandwidth B")
      ->required()
      ->check(CLI::Range(1, 512));
  ad_flags.attach(ad, false);
  ad->add_option("--out", out, "Output coefficient CSV (stdout if omitted)");

  // invert
  std::string iv_values, iv_nodes, iv_history;
  int iv_bandwidth = 0;
  std::string iv_solver = "auto";
  std::string iv_x0 = "zero";
  std::string iv_weight = "riemann";
  int iv_max_iter = 100;
  double iv_tol = 1e-10;
  int iv_grid_n = 0;
  double iv_kappa = 0.0;
  TransformFlags iv_flags;
  auto* iv = app.add_subcommand("invert", "Recover coefficients from point values by CG");
  iv->add_option("--values", iv_values, "Value CSV")->required();
  iv->add_option("--nodes", iv_nodes, "Point CSV")->required();
  iv->add_option("--bandwidth", iv_bandwidth, "Bandwidth B")
      ->required()
      ->check(CLI::Range(1, 512));
  iv_flags.attach(iv, true);
  iv->add_option("--solver", iv_solver, "cgnr, cgne or auto")
      ->check(CLI::IsMember({"cgnr", "cgne", "auto"}))
      ->capture_default_str();
  iv->add_option("--max-iter", iv_max_iter, "Iteration limit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  iv->add_option("--tol", iv_tol, "Relative stopping tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  iv->add_option("--x0", iv_x0, "Initial guess: zero or midpoint (cgnr only)")
      ->check(CLI::IsMember({"zero", "midpoint"}))
      ->capture_default_str();
  iv->add_option("--weight", iv_weight, "Mid-point weight: riemann or fixed")
      ->check(CLI::IsMember({"riemann", "fixed"}))
      ->capture_default_str();
  iv->add_option("--grid-n", iv_grid_n, "N of the grid G_N the nodes came from")
      ->check(CLI::PositiveNumber);
  iv->add_option("--kappa", iv_kappa, "kappa of the grid G_N")->check(CLI::PositiveNumber);
  iv->add_option("--history", iv_history, "Also write per-iteration residuals to this CSV");
  iv->add_option("--out", out, "Output coefficient CSV (stdout if omitted)");

  // experiment
  std::string ex_kind;
  ExperimentFlags ex;
  auto* ep = app.add_subcommand("experiment", "Run one of the numerical experiments");
  ep->add_option("kind", ex_kind, "Experiment kind")
      ->required()
      ->check(CLI::IsMember({"error-vs-q", "runtime", "error-vs-radius", "error-vs-bandwidth",
                             "inverse-convergence"}));
  ep->add_option("--bandwidth", ex.bandwidth, "Bandwidth or list of bandwidths")
      ->delimiter(',')
      ->check(CLI::Range(1, 512));
  ep->add_option("--points", ex.points, "Point count (list for runtime)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  ep->add_option("--kappa", ex.kappa, "Ball radius or list of radii")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  ep->add_option("--cutoff", ex.cutoff, "Cutoff q or list of cutoffs")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  ep->add_option("--grid-n", ex.grid_n, "Grid sizes N (inverse-convergence)")
      ->delimiter(',')
      ->check(CLI::Range(1, 1000));
  ep->add_option("--sigma", ex.sigma, "NFFT oversampling factor")
      ->check(CLI::Range(2.0, 16.0))
      ->capture_default_str();
  ep->add_option("--repetitions", ex.repetitions, "Repetitions per setting")
      ->check(CLI::PositiveNumber);
  ep->add_option("--seed", ex.seed, "Master seed")->capture_default_str();
  ep->add_option("--max-iter", ex.max_iter, "CG iterations (inverse-convergence)")
      ->check(CLI::PositiveNumber);
  ep->add_option("--tol", ex.tol, "CG tolerance (inverse-convergence)")
      ->check(CLI::NonNegativeNumber);
  ep->add_option("--method", ex.method, "Operator for inverse-convergence")
      ->check(CLI::IsMember({"naive", "fast", "fast-exact", "dense"}));
  ep->add_option("--weight", ex.weight, "Mid-point weight: riemann or fixed")
      ->check(CLI::IsMember({"riemann", "fixed"}))
      ->capture_default_str();
  ep->add_option("--grid", ex.grid, "Trigonometric grid: support, reduced or cube")
      ->check(CLI::IsMember({"support", "reduced", "cube"}))
      ->capture_default_str();
  auto* exact_on = ep->add_flag("--exact-column", ex.exact_column,
                                "Add the NDFT control columns (error-vs-bandwidth)");
  ep->add_flag("--no-exact-column", ex.no_exact_column, "Drop the NDFT control run")
      ->excludes(exact_on);
  ep->add_flag("--paper-scale", ex.paper_scale, "Use the full-size settings");
  ep->add_flag("--extended", ex.extended, "Long double Clenshaw and compensated CG sums");
  ep->add_option("--out", out, "Output CSV (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gc) {
      const auto c = gen_coeffs(gc_bandwidth, gc_seed);
      emit(out, [&](std::ostream& o) { write_coefficients_csv(o, c); });
    } else if (*gp) {
      const auto p = gen_points_ball(gp_points, gp_kappa, gp_seed);
      emit(out, [&](std::ostream& o) { write_points_csv(o, p); });
    } else if (*gg) {
      const auto p = gen_grid(gg_n, gg_kappa);
      emit(out, [&](std::ostream& o) { write_points_csv(o, p); });
    } else if (*fw) {
      const auto c = load_coeffs(fw_coeffs);
      const auto p = load_points(fw_nodes);
      CVector v = fw_flags.method == "naive" ? ndsglft_naive(c, p)
                                             : nfsglft_forward(c, p, fw_flags.sgl());
      if (fw_report) {
        const CVector ref = fw_flags.method == "naive" ? v : ndsglft_naive(c, p);
        const auto e = max_errors(ref, v);
        std::cerr << "max_abs_diff " << format_double(e.max_abs) << " max_rel_diff "
                  << format_double(e.max_rel) << '\n';
      }
      emit(out, [&](std::ostream& o) { write_values_csv(o, v); });
    } else if (*ad) {
      const auto v = load_values(ad_values);
      const auto p = load_points(ad_nodes);
      if (v.size() != p.size()) throw std::runtime_error("value and point counts differ");
      const auto c = ad_flags.method == "naive"
                         ? ndsglft_naive_adjoint(v, p, ad_bandwidth)
                         : nfsglft_adjoint(v, p, ad_bandwidth, ad_flags.sgl());
      emit(out, [&](std::ostream& o) { write_coefficients_csv(o, c); });
    } else if (*iv) {
      const auto v = load_values(iv_values);
      const auto p = load_points(iv_nodes);
      if (v.size() != p.size()) throw std::runtime_error("value and point counts differ");
      InverseOptions opt;
      opt.bandwidth = iv_bandwidth;
      opt.op = kMethods.at(iv_flags.method);
      opt.sgl = iv_flags.sgl();
      opt.solver = kSolvers.at(iv_solver);
      opt.x0 = kGuesses.at(iv_x0);
      opt.midpoint = kWeights.at(iv_weight);
      opt.grid_n = iv_grid_n;
      opt.kappa = iv_kappa;
      opt.solve.max_iter = iv_max_iter;
      opt.solve.tol = iv_tol;
      opt.solve.precision = opt.sgl.precision;
      if (opt.x0 == InitialGuess::midpoint && (iv_grid_n <= 0 || iv_kappa <= 0.0)) {
        throw std::runtime_error("--x0 midpoint needs --grid-n and --kappa");
      }
      const auto report = infsglft(p, v, opt);
      if (!report.warning.empty()) std::cerr << "warning: " << report.warning << '\n';
      std::cerr << "iterations " << report.iterations << " converged "
                << (report.converged ? "yes" : "no") << " residual "
                << format_double(report.residual_history.back()) << '\n';
      const BandlimitedCoefficients c(iv_bandwidth, report.solution);
      if (!iv_history.empty()) {
        CsvTable h;
        h.kind = "solver-history";
        h.header = {"iteration", "residual", "normal_residual"};
        for (std::size_t i = 0; i < report.residual_history.size(); ++i) {
          h.rows.push_back({static_cast<double>(i), report.residual_history[i],
                            report.normal_residual_history[i]});
        }
        emit(iv_history, [&](std::ostream& o) { h.write(o); });
      }
      emit(out, [&](std::ostream& o) { write_coefficients_csv(o, c); });
    } else if (*ep) {
      const auto table = run_experiment(ex_kind, ex);
      emit(out, [&](std::ostream& o) { table.write(o); });
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "sglnufft: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
