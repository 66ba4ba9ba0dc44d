// Copyright 2026 The pgnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pgnet: command-line runner for public-goods network games.
//
//   pgnet solve     --game g.json [--gamma 1,1] [--x0 ..] [--starts 20]
//   pgnet verify    --game g.json --x 1,1,0,0 [--eps 1e-8]
//   pgnet dynamics  --game g.json --mode pseudo|sw [--csv traj.csv]
//   pgnet certify   --game g.json [--gamma ones] [--f-common f.json]
//   pgnet transform --game g.json (--map m.json | --normalize-upper)
//   pgnet statics   --game g.json --delta 1,0 [--fd-t 1e-4]
//   pgnet casestudy case1|case2 [--n 50 --p0 1 --samples 1000 --seed 7]
//   pgnet oracle    --game g.json [--m 15 --eps 1e-8]
//
// Reports are JSON on stdout (or --out). Exit status: 0 success, 1
// computation failure, 2 input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pgnet/casestudy.h"
#include "pgnet/certificates.h"
#include "pgnet/dynamics.h"
#include "pgnet/equilibrium.h"
#include "pgnet/equivalence.h"
#include "pgnet/error.h"
#include "pgnet/io.h"
#include "pgnet/statics.h"

namespace {

using namespace pgnet;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitInput = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PGNET_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidArgument("PGNET_SEED must be an unsigned integer");
    }
  }
  return 1;
}

Vector parse_vector(const std::string& text, const std::string& flag) {
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
        ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument(flag + ": cannot parse \"" + item + "\" as a number");
    }
  }
  if (v.empty()) throw InvalidArgument(flag + ": empty list");
  return v;
}

Vector optional_vector(const std::string& text, const std::string& flag) {
  return text.empty() ? Vector{} : parse_vector(text, flag);
}

void emit(const Json& report, const std::string& out) {
  const std::string text = dump_canonical(report);
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

struct SolveArgs {
  std::string game, gamma, x0, regularize, out;
  double tol = 1e-10;
  std::optional<double> step_eps;
  std::size_t max_iter = 200000;
  std::size_t starts = 0;
  std::optional<std::uint64_t> seed;
  double cluster_tol = 1e-4;
  double verify_eps = 1e-4;
};

int run_solve(const SolveArgs& a) {
  const Game game = load_game(a.game);
  SolveOptions opt;
  opt.gamma = optional_vector(a.gamma, "--gamma");
  opt.x0 = optional_vector(a.x0, "--x0");
  opt.tol = a.tol;
  opt.step_eps = a.step_eps;
  opt.max_iter = a.max_iter;
  Json report;
  bool ok = true;
  if (!a.regularize.empty()) {
    const Vector betas = parse_vector(a.regularize, "--regularize");
    const RegularizedPath path = solve_regularized(game, betas, opt, a.verify_eps);
    report = to_json(path);
    ok = path.check.is_ne;
  } else if (a.starts > 0) {
    const ProbeResult probe = multi_start_probe(
        game, a.starts, a.seed.value_or(default_seed()), a.cluster_tol, opt);
    report = to_json(probe);
    ok = !probe.clusters.empty();
  } else {
    const SolveResult r = solve_ne(game, opt);
    report = to_json(r);
    ok = r.status == SolveStatus::kConverged;
  }
  emit(report, a.out);
  return ok ? kExitOk : kExitComputation;
}

struct VerifyArgs {
  std::string game, x, out;
  double eps = 1e-8;
};

int run_verify(const VerifyArgs& a) {
  const Game game = load_game(a.game);
  const Vector x = parse_vector(a.x, "--x");
  require_feasible(game, x);
  Json report = to_json(verify_ne(game, x, a.eps));
  report["eps"] = a.eps;
  emit(report, a.out);
  return kExitOk;
}

struct DynamicsArgs {
  std::string game, mode = "pseudo", alpha, x0, csv, out;
  double step = kDefaultStep;
  double horizon = kDefaultHorizon;
  std::size_t stride = 1;
};

int run_dynamics(const DynamicsArgs& a) {
  const Game game = load_game(a.game);
  Vector x0 = optional_vector(a.x0, "--x0");
  if (x0.empty()) x0 = game.lower();
  IntegrationOptions opt;
  opt.stride = a.stride;
  Trajectory tr;
  if (a.mode == "pseudo") {
    Vector alpha = optional_vector(a.alpha, "--alpha");
    if (alpha.empty()) alpha.assign(game.n(), 1.0);
    tr = integrate_pseudo_gradient(game, alpha, x0, a.step, a.horizon, opt);
  } else {
    tr = integrate_sw_flow(game, x0, a.step, a.horizon, opt);
  }
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_csv(csv, tr);
    write_text_file(a.csv, csv.str());
  }
  Json report = {{"mode", a.mode},
                 {"step", a.step},
                 {"horizon", a.horizon},
                 {"final_state", tr.states.back()},
                 {"final_sw", tr.sw.back()},
                 {"final_br_gap", tr.br_gap.back()},
                 {"projection_active", tr.projection_active},
                 {"samples", tr.times.size()}};
  report["converged_at"] = tr.converged_at ? Json(*tr.converged_at) : Json();
  emit(report, a.out);
  return kExitOk;
}

struct CertifyArgs {
  std::string game, gamma = "ones", f_common, w0, map, out;
  bool all = false;
};

int run_certify(const CertifyArgs& a) {
  const Game game = load_game(a.game);
  CertifyOptions opt;
  if (a.gamma != "ones") opt.gamma = parse_vector(a.gamma, "--gamma");
  if (!a.f_common.empty())
    opt.f_common = spec_from_json(read_json_file(a.f_common), "f_common");
  if (!a.w0.empty())
    opt.w0.push_back(matrix_from_json(read_json_file(a.w0), game.n(), "W0"));
  if (!a.map.empty()) opt.maps.push_back(map_from_json(read_json_file(a.map), game));
  Json report;
  if (a.all) {
    report = Json::array();
    for (const auto& r : certify_all(game, opt)) report.push_back(to_json(r));
  } else {
    report = to_json(certify_any(game, opt));
  }
  emit(report, a.out);
  return kExitOk;
}

struct TransformArgs {
  std::string game, map, eps = "auto", out, report;
  bool normalize_upper = false;
};

int run_transform(const TransformArgs& a) {
  const Game game = load_game(a.game);
  if (a.map.empty() == !a.normalize_upper)
    throw InvalidArgument("transform: give exactly one of --map and --normalize-upper");
  std::optional<EquivalenceMap> map;
  if (!a.map.empty()) {
    map = map_from_json(read_json_file(a.map), game);
  } else {
    std::optional<double> eps;
    if (a.eps != "auto") eps = parse_vector(a.eps, "--eps").at(0);
    map = upper_triangular_normalizer(game, eps);
  }
  const Game out = transform_game(game, *map);
  Json report = {{"map", to_json(*map)}, {"game", to_json(out)}};
  if (!a.report.empty()) write_text_file(a.report, dump_canonical(to_json(*map)));
  emit(a.out.empty() ? report : to_json(out), a.out);
  return kExitOk;
}

struct StaticsArgs {
  std::string game, delta, x_star, out;
  std::optional<double> fd_t;
};

int run_statics(const StaticsArgs& a) {
  const Game game = load_game(a.game);
  const Vector delta = parse_vector(a.delta, "--delta");
  Vector x = optional_vector(a.x_star, "--x-star");
  if (x.empty()) {
    const SolveResult r = solve_ne(game, fd_solve_options());
    if (r.status != SolveStatus::kConverged)
      throw ComputationError("statics: could not solve for x*");
    x = r.x_star;
  }
  Json report;
  report["x_star"] = x;
  StaticsResult result;
  if (a.fd_t) {
    const FdReport fd = fd_check(game, x, delta, *a.fd_t);
    result = fd.closed_form;
    report["fd_check"] = to_json(fd);
  } else {
    result = utility_derivative(game, x, delta);
  }
  report["result"] = to_json(result);
  emit(report, a.out);
  std::cerr << "player  du/dt  dx/dt\n";
  for (std::size_t i = 0; i < result.du_dt.size(); ++i)
    std::cerr << i << "  " << result.du_dt[i] << "  " << result.dx_dt[i] << "\n";
  return kExitOk;
}

struct CaseArgs {
  std::string which, csv, out;
  std::size_t n = 50;
  double p0 = 1.0;
  std::size_t samples = 1000;
  std::optional<std::uint64_t> seed;
  double a = 3.0, b = 1.0, c0 = 1.0, density = 1.0;
};

int run_casestudy(CaseArgs a) {
  const std::uint64_t seed = a.seed.value_or(default_seed());
  if (a.which == "case1") {
    const Case1Report r = monte_carlo_case1(a.n, a.p0, a.a, a.b, a.c0, a.samples, seed);
    if (!a.csv.empty()) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "sample,seed,inf_norm_sigma,sigma_max,within_bound,certified\n";
      for (std::size_t s = 0; s < r.rows.size(); ++s) {
        const Case1Sample& row = r.rows[s];
        csv << s << ',' << row.seed << ',' << row.inf_norm_sigma << ','
            << row.sigma_max << ',' << row.within_bound << ',' << row.certified
            << '\n';
      }
      write_text_file(a.csv, csv.str());
    }
    emit(to_json(r), a.out);
    return kExitOk;
  }
  const Case2Report r = case2_pipeline(a.n, a.a, a.b, a.c0, a.density, seed);
  emit(to_json(r), a.out);
  return r.agree ? kExitOk : kExitComputation;
}

struct OracleArgs {
  std::string game, out;
  std::size_t m = 15;
  double eps = 1e-8;
  std::size_t refine = 10;
};

int run_oracle(const OracleArgs& a) {
  const Game game = load_game(a.game);
  const std::vector<Vector> found = grid_oracle(game, a.m, a.eps, a.refine);
  Json report = {{"m", a.m}, {"eps", a.eps}, {"refine", a.refine},
                 {"equilibria", found}};
  emit(report, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria, certificates and dynamics of public-goods network games"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Compute a Nash equilibrium");
  s->add_option("--game", solve.game, "Game JSON file")->required();
  s->add_option("--gamma", solve.gamma, "Comma-separated player weights");
  s->add_option("--x0", solve.x0, "Starting profile");
  s->add_option("--tol", solve.tol, "Stopping tolerance")->capture_default_str();
  s->add_option("--step-eps", solve.step_eps, "Fixed-point step size");
  s->add_option("--max-iter", solve.max_iter, "Iteration cap")->capture_default_str();
  s->add_option("--regularize", solve.regularize,
                "Decreasing beta schedule, e.g. 1e-1,1e-2,...");
  s->add_option("--verify-eps", solve.verify_eps,
                "Tolerance for the regularised end point")->capture_default_str();
  s->add_option("--starts", solve.starts, "Run a multi-start probe");
  s->add_option("--seed", solve.seed, "Seed for --starts (default $PGNET_SEED or 1)");
  s->add_option("--cluster-tol", solve.cluster_tol)->capture_default_str();
  s->add_option("--out", solve.out, "Report path (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check an epsilon-Nash equilibrium");
  v->add_option("--game", verify.game)->required();
  v->add_option("--x", verify.x, "Profile to check")->required();
  v->add_option("--eps", verify.eps)->capture_default_str();
  v->add_option("--out", verify.out);

  DynamicsArgs dyn;
  auto* d = app.add_subcommand("dynamics", "Integrate gradient dynamics");
  d->add_option("--game", dyn.game)->required();
  d->add_option("--mode", dyn.mode)
      ->check(CLI::IsMember({"pseudo", "sw"}))
      ->capture_default_str();
  d->add_option("--alpha", dyn.alpha, "Per-player rates (pseudo mode)");
  d->add_option("--x0", dyn.x0, "Start (default: lower bounds)");
  d->add_option("--step", dyn.step)->capture_default_str();
  d->add_option("--horizon", dyn.horizon)->capture_default_str();
  d->add_option("--stride", dyn.stride, "Record every k-th step")->capture_default_str();
  d->add_option("--csv", dyn.csv, "Trajectory CSV path");
  d->add_option("--out", dyn.out);

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "Evaluate uniqueness certificates");
  c->add_option("--game", cert.game)->required();
  c->add_option("--gamma", cert.gamma, "'ones' or a comma-separated list")
      ->capture_default_str();
  c->add_option("--f-common", cert.f_common, "Common value spec JSON");
  c->add_option("--w0", cert.w0, "Symmetric reference matrix JSON");
  c->add_option("--map", cert.map, "Equivalence map JSON {d, b}");
  c->add_flag("--all", cert.all, "Report every certificate tried");
  c->add_option("--out", cert.out);

  TransformArgs tf;
  auto* t = app.add_subcommand("transform", "Apply a game equivalence");
  t->add_option("--game", tf.game)->required();
  t->add_option("--map", tf.map, "Equivalence map JSON {d, b}");
  t->add_flag("--normalize-upper", tf.normalize_upper,
              "Use d_i = eps^-(i+1) on an upper-triangular network");
  t->add_option("--eps", tf.eps, "'auto' or a value")->capture_default_str();
  t->add_option("--map-out", tf.report, "Write the map used");
  t->add_option("--out", tf.out, "Write the transformed game");

  StaticsArgs st;
  auto* q = app.add_subcommand("statics", "Comparative statics of money redistribution");
  q->add_option("--game", st.game)->required();
  q->add_option("--delta", st.delta, "Redistribution direction")->required();
  q->add_option("--x-star", st.x_star, "Interior NE (default: solve)");
  q->add_option("--fd-t", st.fd_t, "Also run a finite-difference check");
  q->add_option("--out", st.out);

  CaseArgs cs;
  auto* k = app.add_subcommand("casestudy", "Random-network case studies");
  k->add_option("which", cs.which)->required()->check(CLI::IsMember({"case1", "case2"}));
  k->add_option("--n", cs.n)->capture_default_str();
  k->add_option("--p0", cs.p0)->capture_default_str();
  k->add_option("--samples", cs.samples)->capture_default_str();
  k->add_option("--seed", cs.seed, "Default $PGNET_SEED or 1");
  k->add_option("--a", cs.a)->capture_default_str();
  k->add_option("--b", cs.b)->capture_default_str();
  k->add_option("--c0", cs.c0)->capture_default_str();
  k->add_option("--density", cs.density, "case2 edge density")->capture_default_str();
  k->add_option("--csv", cs.csv, "case1 per-sample table");
  k->add_option("--out", cs.out);

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Brute-force grid equilibria (n <= 6)");
  o->add_option("--game", orc.game)->required();
  o->add_option("--m", orc.m)->capture_default_str();
  o->add_option("--eps", orc.eps)->capture_default_str();
  o->add_option("--refine", orc.refine, "Deviation grid refinement")->capture_default_str();
  o->add_option("--out", orc.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kExitInput;
  }

  try {
    if (*s) return run_solve(solve);
    if (*v) return run_verify(verify);
    if (*d) return run_dynamics(dyn);
    if (*c) return run_certify(cert);
    if (*t) return run_transform(tf);
    if (*q) return run_statics(st);
    if (*k) return run_casestudy(cs);
    if (*o) return run_oracle(orc);
  } catch (const InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitInput;
}
