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

#include "pgnet/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pgnet/error.h"
#include "pgnet/rng.h"

namespace pgnet {
namespace {

Vector ones_if_empty(const Vector& gamma, std::size_t n) {
  if (gamma.empty()) return Vector(n, 1.0);
  if (gamma.size() != n)
    throw InvalidArgument("gamma: expected " + std::to_string(n) + " entries");
  for (double g : gamma)
    if (!(g > 0.0) || !std::isfinite(g))
      throw InvalidArgument("gamma: entries must be positive");
  return gamma;
}

Vector midpoint(const Game& game) {
  Vector x(game.n());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = 0.5 * (game.lower()[i] + game.upper()[i]);
  return x;
}

}  // namespace

std::string_view status_tag(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIter: return "max_iter";
    case SolveStatus::kDiverged: return "diverged";
  }
  return "unknown";
}

double default_step_eps(const Game& game, std::span<const double> gamma_in) {
  const std::size_t n = game.n();
  const Vector gamma = ones_if_empty(Vector(gamma_in.begin(), gamma_in.end()), n);
  Matrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lf = game.value(i).smoothness(game.bounds().gain(i)).lipschitz_d1;
    const double lc = game.cost(i).smoothness(game.box(i)).lipschitz_d1;
    for (std::size_t k = 0; k < n; ++k)
      j(i, k) = gamma[i] * (lf * std::abs(game.W()(i, k)) + (i == k ? lc : 0.0));
  }
  double norm1 = 0.0, norm_inf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      row += j(i, k);
      col += j(k, i);
    }
    norm_inf = std::max(norm_inf, row);
    norm1 = std::max(norm1, col);
  }
  const double sigma = std::sqrt(norm1 * norm_inf);
  return std::clamp(0.5 / (1.0 + sigma), 1e-4, 1e-1);
}

SolveResult solve_ne(const Game& game, const SolveOptions& opt) {
  const std::size_t n = game.n();
  const Vector gamma = ones_if_empty(opt.gamma, n);
  if (!(opt.tol > 0.0)) throw InvalidArgument("tol must be positive");
  const double eps = opt.step_eps ? *opt.step_eps : default_step_eps(game, gamma);
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidArgument("step_eps must be positive");

  SolveResult r;
  r.step_eps = eps;
  Vector x = opt.x0.empty() ? midpoint(game) : opt.x0;
  require_feasible(game, x);
  x = project(game, x);
  if (opt.record_iterates) r.iterates.push_back(x);

  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    const Vector g = pseudo_gradient(game, x);
    Vector next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = x[i] + eps * gamma[i] * g[i];
    bool finite = true;
    for (double v : next) finite = finite && std::isfinite(v);
    if (!finite) {
      r.status = SolveStatus::kDiverged;
      r.iterations = it;
      r.x_star = x;
      r.final_gap = br_gap(game, x).gap;
      return r;
    }
    next = project(game, next);
    r.residual = distance_inf(next, x);
    x = std::move(next);
    r.iterations = it;
    if (opt.record_iterates) r.iterates.push_back(x);
    if (r.residual < opt.tol * eps) {
      const double gap = br_gap(game, x).gap;
      if (gap <= 10.0 * opt.tol) {
        r.status = SolveStatus::kConverged;
        r.x_star = x;
        r.final_gap = gap;
        return r;
      }
    }
  }
  r.status = SolveStatus::kMaxIter;
  r.x_star = x;
  r.final_gap = br_gap(game, x).gap;
  return r;
}

NeCheck verify_ne(const Game& game, std::span<const double> x, double eps) {
  const BrGap g = br_gap(game, x);
  return {g.gap <= eps, g.gap, g.worst};
}

Game regularize(const Game& game, double beta) {
  std::vector<ScalarFunctionSpec> costs;
  costs.reserve(game.n());
  for (const auto& c : game.costs())
    costs.push_back(ScalarFunctionSpec::Regularized(c, beta));
  return Game(game.W(), game.lower(), game.upper(), game.values(),
              std::move(costs));
}

RegularizedPath solve_regularized(const Game& game,
                                  std::span<const double> schedule,
                                  const SolveOptions& options,
                                  double verify_eps) {
  if (schedule.empty()) throw InvalidArgument("beta schedule is empty");
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    if (!(schedule[s] > 0.0))
      throw InvalidArgument("beta schedule entries must be positive");
    if (s > 0 && !(schedule[s] < schedule[s - 1]))
      throw InvalidArgument("beta schedule must be strictly decreasing");
  }
  RegularizedPath path;
  SolveOptions opt = options;
  for (double beta : schedule) {
    const Game g = regularize(game, beta);
    SolveResult r = solve_ne(g, opt);
    if (r.status == SolveStatus::kDiverged) {
      std::ostringstream os;
      os << "regularised solve diverged at beta=" << beta;
      throw ComputationError(os.str());
    }
    opt.x0 = r.x_star;
    path.betas.push_back(beta);
    path.stages.push_back(std::move(r));
  }
  path.x = path.stages.back().x_star;
  path.check = verify_ne(game, path.x, verify_eps);
  return path;
}

std::vector<Vector> grid_oracle(const Game& game, std::size_t m, double eps,
                                std::size_t refine) {
  const std::size_t n = game.n();
  if (m < 2) throw InvalidArgument("grid_oracle: m must be at least 2");
  if (refine < 1) throw InvalidArgument("grid_oracle: refine must be >= 1");
  if (n > kGridOracleMaxPlayers ||
      std::pow(static_cast<double>(m), static_cast<double>(n)) >
          kGridOracleMaxProfiles) {
    throw InvalidArgument("grid_oracle: instance too large (n <= 6 and "
                          "m^n <= 1e7 required)");
  }
  const std::size_t fine = (m - 1) * refine + 1;
  std::vector<Vector> grid(n, Vector(fine));
  std::vector<Vector> cost(n, Vector(fine));
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = game.lower()[i];
    const double hi = game.upper()[i];
    for (std::size_t r = 0; r < fine; ++r) {
      grid[i][r] = r + 1 == fine
                       ? hi
                       : lo + (hi - lo) * static_cast<double>(r) /
                                  static_cast<double>(fine - 1);
      cost[i][r] = game.cost(i).eval_clamped(grid[i][r]).value;
    }
  }

  std::vector<Vector> out;
  std::vector<std::size_t> idx(n, 0);
  Vector x(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) x[j] = grid[j][idx[j] * refine];
    bool is_ne = true;
    for (std::size_t i = 0; i < n && is_ne; ++i) {
      const double d = externality(game, i, x);
      const ScalarFunctionSpec& f = game.value(i);
      const std::size_t here = idx[i] * refine;
      const double current = f.eval_clamped(grid[i][here] + d).value - cost[i][here];
      for (std::size_t r = 0; r < fine; ++r) {
        if (f.eval_clamped(grid[i][r] + d).value - cost[i][r] - current > eps) {
          is_ne = false;
          break;
        }
      }
    }
    if (is_ne) out.push_back(x);
    std::size_t p = n;
    while (p > 0) {
      --p;
      if (++idx[p] < m) break;
      idx[p] = 0;
      if (p == 0) return out;
    }
  }
}

Vector random_start(const Game& game, std::uint64_t seed, std::size_t start) {
  Vector x(game.n());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = counter_uniform(seed, start, i);
    x[i] = game.lower()[i] + u * (game.upper()[i] - game.lower()[i]);
  }
  return x;
}

ProbeResult multi_start_probe(const Game& game, std::size_t n_starts,
                              std::uint64_t seed, double cluster_tol,
                              const SolveOptions& options) {
  if (n_starts == 0) throw InvalidArgument("n_starts must be at least 1");
  ProbeResult probe;
  for (std::size_t s = 0; s < n_starts; ++s) {
    SolveOptions opt = options;
    opt.x0 = random_start(game, seed, s);
    opt.record_iterates = false;
    SolveResult r = solve_ne(game, opt);
    if (r.status != SolveStatus::kConverged) {
      ++probe.failed;
      continue;
    }
    bool merged = false;
    for (std::size_t c = 0; c < probe.clusters.size(); ++c) {
      if (distance_inf(probe.clusters[c].x_star, r.x_star) <= cluster_tol) {
        ++probe.counts[c];
        merged = true;
        break;
      }
    }
    if (!merged) {
      probe.clusters.push_back(std::move(r));
      probe.counts.push_back(1);
    }
  }
  return probe;
}

Vector backward_induction(const Game& game) {
  if (!game.upper_triangular())
    throw InvalidArgument(
        "backward_induction: W must have w_ij = 0 for i > j");
  Vector x = game.lower();
  for (std::size_t k = game.n(); k > 0; --k) {
    const std::size_t i = k - 1;
    x[i] = best_response(game, i, x);
  }
  return x;
}

}  // namespace pgnet
