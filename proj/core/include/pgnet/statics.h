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

#ifndef PGNET_STATICS_H_
#define PGNET_STATICS_H_

#include <span>
#include <string>
#include <vector>

#include "pgnet/equilibrium.h"
#include "pgnet/game.h"

namespace pgnet {

inline constexpr double kStationarityTol = 1e-8;
inline constexpr double kMinBoundaryMargin = 1e-6;
inline constexpr double kEquilibriumIdentityTol = 1e-6;
inline constexpr double kKinkWarningDistance = 1e-6;

// Values f_i(k) replaced by f_i(k + delta_i t); everything else unchanged.
Game perturb_money(const Game& game, std::span<const double> delta, double t);

struct StaticsResult {
  Vector du_dt;
  Vector dx_dt;
  // Largest 1-norm condition number of the two linear systems.
  double condition_number = 0.0;
  // Largest |A z - r|_inf over the two solves.
  double lu_residual = 0.0;
  double boundary_margin = 0.0;
  std::vector<std::string> warnings;
};

// dx*/dt(0) = [diag(c'') - diag(f'') W]^-1 diag(f'') delta at an interior
// NE. Throws PreconditionError at boundary or non-stationary points and
// ComputationError on a singular system.
StaticsResult equilibrium_derivative(const Game& game,
                                     std::span<const double> x_star,
                                     std::span<const double> delta);

// Adds u'(0) = diag(f') diag(c'' - f'') [diag(c'') - W diag(f'')]^-1 delta.
StaticsResult utility_derivative(const Game& game,
                                 std::span<const double> x_star,
                                 std::span<const double> delta);

struct FdReport {
  Vector du_fd;
  Vector dx_fd;
  StaticsResult closed_form;
  // |fd - closed|_inf / max(|closed|_inf, 1e-12)
  double du_rel_error = 0.0;
  double dx_rel_error = 0.0;
  double max_rel_error = 0.0;
  // Largest distance of a re-solved NE from x_star.
  double displacement = 0.0;
  // displacement > 100 t: the equilibrium did not move continuously.
  bool jump = false;
};

SolveOptions fd_solve_options();

// Central differences over re-solved equilibria of the games perturbed by
// +t and -t, warm started at x_star.
FdReport fd_check(const Game& game, std::span<const double> x_star,
                  std::span<const double> delta, double t,
                  const SolveOptions& solve = fd_solve_options());

}  // namespace pgnet

#endif  // PGNET_STATICS_H_
