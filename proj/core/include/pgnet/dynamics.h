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

#ifndef PGNET_DYNAMICS_H_
#define PGNET_DYNAMICS_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pgnet/error.h"
#include "pgnet/game.h"

namespace pgnet {

inline constexpr double kDefaultStep = 1e-2;
inline constexpr double kDefaultHorizon = 50.0;
inline constexpr double kFieldConvergenceTol = 1e-8;

struct Trajectory {
  Vector times;
  std::vector<Vector> states;
  // Per recorded state. `energy` is empty unless a reference point was given.
  Vector sw;
  Vector br_gap;
  Vector energy;
  // First time the projected field dropped below kFieldConvergenceTol.
  std::optional<double> converged_at;
  // Some step was clipped by the box.
  bool projection_active = false;
};

struct IntegrationOptions {
  // Record every `stride`-th step (the initial and final states always).
  std::size_t stride = 1;
  bool diagnostics = true;
  // Reference NE and weights for the energy diagnostic.
  std::optional<Vector> energy_reference;
  Vector energy_gamma;
};

// Thrown when the state stops being finite; carries the last good state.
class IntegrationError : public ComputationError {
 public:
  IntegrationError(const std::string& what, double t, Vector last)
      : ComputationError(what), time(t), last_state(std::move(last)) {}
  double time;
  Vector last_state;
};

// dx/dt = alpha * pseudo_gradient(x), RK4 with box projection per step.
Trajectory integrate_pseudo_gradient(const Game& game,
                                     std::span<const double> alpha,
                                     std::span<const double> x0, double step,
                                     double horizon,
                                     const IntegrationOptions& options = {});

// dx/dt = grad SW(x), RK4 with box projection per step.
Trajectory integrate_sw_flow(const Game& game, std::span<const double> x0,
                             double step, double horizon,
                             const IntegrationOptions& options = {});

// Gradient of u(x) = sum_i gamma_i u_i(x).
Vector weighted_welfare_gradient(const Game& game,
                                 std::span<const double> gamma,
                                 std::span<const double> x);

// E(x) = u(x*) - u(x) + <x - x*, grad u(x*)> with u = sum_i gamma_i u_i.
double energy(const Game& game, std::span<const double> gamma,
              std::span<const double> x, std::span<const double> x_star);

enum class RateModel { kExponential, kInverseLinear };

struct RateFit {
  RateModel model = RateModel::kExponential;
  double rate = 0.0;
  double r_squared = 0.0;
  // Both candidate fits, for comparison.
  double exponential_rate = 0.0;
  double exponential_r2 = 0.0;
  double inverse_linear_rate = 0.0;
  double inverse_linear_r2 = 0.0;
};

// Least squares of log(gap) on t and of gap on 1/t after dropping the first
// 10% of samples; picks the model with the larger r^2.
RateFit fit_rate(std::span<const double> times, std::span<const double> gaps);

// Columns t, x_1..x_n, sw, br_gap, energy.
void write_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace pgnet

#endif  // PGNET_DYNAMICS_H_
