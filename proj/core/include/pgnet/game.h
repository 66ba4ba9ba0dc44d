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

#ifndef PGNET_GAME_H_
#define PGNET_GAME_H_

#include <cstddef>
#include <span>
#include <vector>

#include "pgnet/functions.h"
#include "pgnet/linalg.h"

namespace pgnet {

// Componentwise bounds on k_i = sum_j w_ij x_j (gain) and on the externality
// d_i = sum_{j != i} w_ij x_j over the action box.
struct GainBounds {
  Vector k_lo;
  Vector k_hi;
  Vector d_lo;
  Vector d_hi;

  Interval gain(std::size_t i) const { return {k_lo[i], k_hi[i]}; }
  Interval externality(std::size_t i) const { return {d_lo[i], d_hi[i]}; }
};

// Public-goods game <{f_i}, {c_i}, {X_i}, W> on a weighted network. The
// constructor validates every invariant and throws InvalidArgument with a
// field path ("W[1][1]: diagonal must be 1") on failure. Immutable.
class Game {
 public:
  Game(Matrix w, Vector lower, Vector upper,
       std::vector<ScalarFunctionSpec> values,
       std::vector<ScalarFunctionSpec> costs);

  // Every player shares `value` and `cost`.
  static Game Homogeneous(Matrix w, Vector lower, Vector upper,
                          const ScalarFunctionSpec& value,
                          const ScalarFunctionSpec& cost);

  std::size_t n() const { return lower_.size(); }
  const Matrix& W() const { return w_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const std::vector<ScalarFunctionSpec>& values() const { return values_; }
  const std::vector<ScalarFunctionSpec>& costs() const { return costs_; }
  const ScalarFunctionSpec& value(std::size_t i) const { return values_[i]; }
  const ScalarFunctionSpec& cost(std::size_t i) const { return costs_[i]; }
  Interval box(std::size_t i) const { return {lower_[i], upper_[i]}; }
  const GainBounds& bounds() const { return bounds_; }

  // True when w_ij = 0 for all i > j.
  bool upper_triangular() const;

  friend bool operator==(const Game& a, const Game& b);

 private:
  Matrix w_;
  Vector lower_;
  Vector upper_;
  std::vector<ScalarFunctionSpec> values_;
  std::vector<ScalarFunctionSpec> costs_;
  GainBounds bounds_;
};

// Slack used when checking that a profile lies in the box.
inline constexpr double kFeasibilityTol = 1e-9;

bool feasible(const Game& game, std::span<const double> x,
              double tol = kFeasibilityTol);
// Throws InvalidArgument on a size mismatch or an infeasible profile.
void require_feasible(const Game& game, std::span<const double> x);
// Componentwise clamp onto the box.
Vector project(const Game& game, std::span<const double> x);

Vector gains(const Game& game, std::span<const double> x);
GainBounds gain_bounds(const Game& game);
double externality(const Game& game, std::size_t i, std::span<const double> x);

struct UtilityProfile {
  Vector u;
  double sw = 0.0;
};

UtilityProfile utility_profile(const Game& game, std::span<const double> x);
double social_welfare(const Game& game, std::span<const double> x);
// Own-action partials du_i/dx_i = f_i'(k_i) - c_i'(x_i).
Vector pseudo_gradient(const Game& game, std::span<const double> x);
// dSW/dx_j = sum_i f_i'(k_i) w_ij - c_j'(x_j).
Vector sw_gradient(const Game& game, std::span<const double> x);

// Player i's payoff f_i(y + d) - c_i(y) when the others contribute d.
double response_payoff(const Game& game, std::size_t i, double y, double d);

// Smallest maximiser of response_payoff over X_i, by bisection on the
// non-increasing derivative. Only x_{-i} is read.
double best_response(const Game& game, std::size_t i,
                     std::span<const double> x);

struct BrGap {
  double gap = 0.0;
  std::size_t worst = 0;
};

// Largest utility any single player can gain by deviating to a best response.
BrGap br_gap(const Game& game, std::span<const double> x);

}  // namespace pgnet

#endif  // PGNET_GAME_H_
