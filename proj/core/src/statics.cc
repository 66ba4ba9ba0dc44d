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

#include "pgnet/statics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pgnet/error.h"

namespace pgnet {
namespace {

struct Curvatures {
  Vector f1, f2, c2;
  Vector k;
};

double residual(const Matrix& a, std::span<const double> z,
                std::span<const double> rhs) {
  const Vector az = a * z;
  double r = 0.0;
  for (std::size_t i = 0; i < az.size(); ++i)
    r = std::max(r, std::abs(az[i] - rhs[i]));
  return r;
}

Curvatures check_interior(const Game& game, std::span<const double> x,
                          std::span<const double> delta, StaticsResult& out) {
  const std::size_t n = game.n();
  if (delta.size() != n)
    throw InvalidArgument("delta: expected " + std::to_string(n) + " entries");
  require_feasible(game, x);
  out.boundary_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    out.boundary_margin = std::min(
        out.boundary_margin,
        std::min(x[i] - game.lower()[i], game.upper()[i] - x[i]));
  if (!(out.boundary_margin > kMinBoundaryMargin)) {
    std::ostringstream os;
    os << "x* is on (or within " << kMinBoundaryMargin
       << " of) the box boundary; comparative statics need an interior NE";
    throw PreconditionError(os.str());
  }
  Curvatures c;
  c.k = gains(game, x);
  for (std::size_t i = 0; i < n; ++i) {
    const Derivatives f = game.value(i).eval_clamped(c.k[i]);
    const Derivatives cost = game.cost(i).eval_clamped(x[i]);
    const double g = f.d1 - cost.d1;
    if (std::abs(g) > kStationarityTol) {
      std::ostringstream os;
      os << "x* is not stationary: player " << i << " has f'(k*) - c'(x*) = "
         << g;
      throw PreconditionError(os.str());
    }
    if (std::abs(cost.d1 - f.d1) > kEquilibriumIdentityTol)
      throw PreconditionError("equilibrium identity c'(x*) = f'(k*) fails");
    if (const auto kink = game.value(i).kink();
        kink && std::abs(c.k[i] - *kink) < kKinkWarningDistance)
      out.warnings.push_back("player " + std::to_string(i) +
                             ": gain within 1e-6 of the value kink");
    c.f1.push_back(f.d1);
    c.f2.push_back(f.d2);
    c.c2.push_back(cost.d2);
  }
  return c;
}

}  // namespace

Game perturb_money(const Game& game, std::span<const double> delta, double t) {
  if (delta.size() != game.n())
    throw InvalidArgument("delta: expected " + std::to_string(game.n()) +
                          " entries");
  std::vector<ScalarFunctionSpec> values;
  for (std::size_t i = 0; i < game.n(); ++i)
    values.push_back(
        ScalarFunctionSpec::AffineReparam(game.value(i), 1.0, -delta[i] * t));
  return Game(game.W(), game.lower(), game.upper(), std::move(values),
              game.costs());
}

StaticsResult equilibrium_derivative(const Game& game,
                                     std::span<const double> x_star,
                                     std::span<const double> delta) {
  StaticsResult out;
  const Curvatures c = check_interior(game, x_star, delta, out);
  const std::size_t n = game.n();
  Matrix a(n, n);
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = (i == j ? c.c2[i] : 0.0) - c.f2[i] * game.W()(i, j);
    rhs[i] = c.f2[i] * delta[i];
  }
  const LuDecomposition lu(a);
  out.dx_dt = lu.solve(rhs);
  out.condition_number = lu.condition_number_1();
  out.lu_residual = residual(a, out.dx_dt, rhs);
  return out;
}

StaticsResult utility_derivative(const Game& game,
                                 std::span<const double> x_star,
                                 std::span<const double> delta) {
  StaticsResult out = equilibrium_derivative(game, x_star, delta);
  StaticsResult scratch;
  const Curvatures c = check_interior(game, x_star, delta, scratch);
  const std::size_t n = game.n();
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = (i == j ? c.c2[i] : 0.0) - game.W()(i, j) * c.f2[j];
  const LuDecomposition lu(b);
  const Vector z = lu.solve(delta);
  out.du_dt.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.du_dt[i] = c.f1[i] * (c.c2[i] - c.f2[i]) * z[i];
  out.condition_number = std::max(out.condition_number, lu.condition_number_1());
  out.lu_residual = std::max(out.lu_residual, residual(b, z, delta));
  return out;
}

SolveOptions fd_solve_options() {
  SolveOptions o;
  o.tol = 1e-13;
  o.max_iter = 1000000;
  return o;
}

FdReport fd_check(const Game& game, std::span<const double> x_star,
                  std::span<const double> delta, double t,
                  const SolveOptions& solve) {
  if (!(t > 0.0)) throw InvalidArgument("fd_check: t must be positive");
  FdReport rep;
  rep.closed_form = utility_derivative(game, x_star, delta);
  const std::size_t n = game.n();

  Vector x_at[2];
  Vector u_at[2];
  const double sign[2] = {1.0, -1.0};
  for (int s = 0; s < 2; ++s) {
    const Game g = perturb_money(game, delta, sign[s] * t);
    SolveOptions opt = solve;
    opt.x0.assign(x_star.begin(), x_star.end());
    const SolveResult r = solve_ne(g, opt);
    if (r.status != SolveStatus::kConverged) {
      std::ostringstream os;
      os << "fd_check: perturbed solve at t=" << sign[s] * t << " ended with "
         << status_tag(r.status);
      throw ComputationError(os.str());
    }
    x_at[s] = r.x_star;
    u_at[s] = utility_profile(g, r.x_star).u;
    rep.displacement = std::max(rep.displacement, distance_inf(r.x_star, x_star));
  }
  rep.jump = rep.displacement > 100.0 * t;
  rep.du_fd.resize(n);
  rep.dx_fd.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.du_fd[i] = (u_at[0][i] - u_at[1][i]) / (2.0 * t);
    rep.dx_fd[i] = (x_at[0][i] - x_at[1][i]) / (2.0 * t);
  }
  auto rel = [](const Vector& fd, const Vector& cf) {
    return distance_inf(fd, cf) / std::max(norm_inf(cf), 1e-12);
  };
  rep.du_rel_error = rel(rep.du_fd, rep.closed_form.du_dt);
  rep.dx_rel_error = rel(rep.dx_fd, rep.closed_form.dx_dt);
  rep.max_rel_error = std::max(rep.du_rel_error, rep.dx_rel_error);
  return rep;
}

}  // namespace pgnet
