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

#ifndef PGNET_EQUILIBRIUM_H_
#define PGNET_EQUILIBRIUM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pgnet/game.h"

namespace pgnet {

enum class SolveStatus { kConverged, kMaxIter, kDiverged };

std::string_view status_tag(SolveStatus status);

struct SolveResult {
  Vector x_star;
  SolveStatus status = SolveStatus::kMaxIter;
  std::size_t iterations = 0;
  // br_gap at x_star.
  double final_gap = 0.0;
  // |x' - x|_inf of the last iteration.
  double residual = 0.0;
  double step_eps = 0.0;
  // Every iterate, starting with x0, when SolveOptions::record_iterates.
  std::vector<Vector> iterates;
};

struct SolveOptions {
  Vector gamma;                     // empty means all ones
  std::optional<double> step_eps;   // default: default_step_eps
  double tol = 1e-10;
  std::size_t max_iter = 200000;
  Vector x0;                        // empty means the box midpoint
  bool record_iterates = false;
};

// 0.5 / (1 + s) clipped to [1e-4, 1e-1], where s = sqrt(|J|_1 |J|_inf) and
// |J_ij| <= gamma_i (L1(f_i on K_i) |w_ij| + [i = j] L1(c_i on X_i)) bounds
// the Jacobian of the scaled pseudo-gradient.
double default_step_eps(const Game& game, std::span<const double> gamma);

// Projected fixed-point iteration x <- Pi_X(x + eps gamma * pseudo_gradient).
// Converged when |x' - x|_inf < tol * eps and br_gap <= 10 tol.
SolveResult solve_ne(const Game& game, const SolveOptions& options = {});

struct NeCheck {
  bool is_ne = false;
  double gap = 0.0;
  std::size_t worst = 0;
};

NeCheck verify_ne(const Game& game, std::span<const double> x, double eps);

// Costs c_i(x) + beta x^2.
Game regularize(const Game& game, double beta);

struct RegularizedPath {
  std::vector<double> betas;
  std::vector<SolveResult> stages;
  Vector x;
  // Checked against the unregularised game.
  NeCheck check;
};

// Solves the beta-regularised games along a decreasing schedule, each warm
// started from the previous stage. Throws ComputationError when a stage
// diverges.
RegularizedPath solve_regularized(const Game& game,
                                  std::span<const double> beta_schedule,
                                  const SolveOptions& options = {},
                                  double verify_eps = 1e-4);

inline constexpr std::size_t kGridOracleMaxPlayers = 6;
inline constexpr double kGridOracleMaxProfiles = 1e7;

// Every profile of the uniform m^n grid from which no player gains more than
// eps by moving to a point of the deviation grid. The deviation grid refines
// each coarse step `refine` times and contains the coarse grid; refine = 1
// checks grid-to-grid deviations only.
std::vector<Vector> grid_oracle(const Game& game, std::size_t m, double eps,
                                std::size_t refine = 10);

struct ProbeResult {
  // One representative per cluster, in order of first appearance.
  std::vector<SolveResult> clusters;
  std::vector<std::size_t> counts;
  std::size_t failed = 0;
};

// Starting points are pure functions of (seed, start index).
Vector random_start(const Game& game, std::uint64_t seed, std::size_t start);

ProbeResult multi_start_probe(const Game& game, std::size_t n_starts,
                              std::uint64_t seed, double cluster_tol = 1e-4,
                              const SolveOptions& options = {});

// Players n-1 down to 0 best-respond to the already fixed higher indices.
// Requires w_ij = 0 for i > j.
Vector backward_induction(const Game& game);

}  // namespace pgnet

#endif  // PGNET_EQUILIBRIUM_H_
