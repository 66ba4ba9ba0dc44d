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

#include "pgnet/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pgnet/error.h"

namespace pgnet {
namespace {

std::string at(const char* field, std::size_t i) {
  return std::string(field) + "[" + std::to_string(i) + "]";
}

std::string interval_text(Interval iv) {
  std::ostringstream os;
  os.precision(12);
  os << "[" << iv.lo << ", " << iv.hi << "]";
  return os.str();
}

double slack(double bound, double tol) {
  return tol * std::max(1.0, std::abs(bound));
}

GainBounds compute_bounds(const Matrix& w, const Vector& lo, const Vector& hi) {
  const std::size_t n = lo.size();
  GainBounds g{Vector(n, 0.0), Vector(n, 0.0), Vector(n, 0.0), Vector(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double wij = w(i, j);
      const double a = wij > 0 ? wij * lo[j] : (wij < 0 ? wij * hi[j] : 0.0);
      const double b = wij > 0 ? wij * hi[j] : (wij < 0 ? wij * lo[j] : 0.0);
      if (j != i) {
        g.d_lo[i] += a;
        g.d_hi[i] += b;
      }
    }
    g.k_lo[i] = g.d_lo[i] + lo[i];
    g.k_hi[i] = g.d_hi[i] + hi[i];
  }
  return g;
}

}  // namespace

Game::Game(Matrix w, Vector lower, Vector upper,
           std::vector<ScalarFunctionSpec> values,
           std::vector<ScalarFunctionSpec> costs)
    : w_(std::move(w)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      values_(std::move(values)),
      costs_(std::move(costs)) {
  const std::size_t n = lower_.size();
  if (n == 0) throw InvalidArgument("n: game needs at least one player");
  if (upper_.size() != n)
    throw InvalidArgument("upper: expected " + std::to_string(n) + " entries");
  if (w_.rows() != n || w_.cols() != n)
    throw InvalidArgument("W: expected " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix");
  if (values_.size() != n || costs_.size() != n)
    throw InvalidArgument("players: expected " + std::to_string(n) +
                          " entries");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(w_(i, j)))
        throw InvalidArgument(at("W", i) + "[" + std::to_string(j) +
                              "]: must be finite");
    }
    if (w_(i, i) != 1.0)
      throw InvalidArgument(at("W", i) + "[" + std::to_string(i) +
                            "]: diagonal must be 1");
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
      throw InvalidArgument(at("lower", i) + ": bounds must be finite");
    if (!(lower_[i] < upper_[i]))
      throw InvalidArgument(at("lower", i) + ": must be < " + at("upper", i));
  }
  bounds_ = compute_bounds(w_, lower_, upper_);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = at("players", i);
    const ScalarFunctionSpec& f = values_[i];
    const ScalarFunctionSpec& c = costs_[i];
    if (f.curvature() != Curvature::kConcave)
      throw InvalidArgument(p + ".value: must be a concave value family");
    if (c.curvature() != Curvature::kConvex)
      throw InvalidArgument(p + ".cost: must be a convex cost family");
    const Interval k = bounds_.gain(i);
    if (!f.in_domain(k.lo) || !f.in_domain(k.hi))
      throw InvalidArgument(p + ".value: gain interval " + interval_text(k) +
                            " leaves the value domain");
    if (!c.in_domain(lower_[i]) || !c.in_domain(upper_[i]))
      throw InvalidArgument(p + ".cost: action interval " +
                            interval_text(box(i)) +
                            " leaves the cost domain");
    // Costs must increase on X_i; values may saturate but never decrease.
    if (!c.smoothness(box(i)).strictly_increasing)
      throw InvalidArgument(p + ".cost: not strictly increasing on " +
                            interval_text(box(i)));
    if (f.eval(k.hi).d1 < 0.0)
      throw InvalidArgument(p + ".value: decreasing on " + interval_text(k));
  }
}

Game Game::Homogeneous(Matrix w, Vector lower, Vector upper,
                       const ScalarFunctionSpec& value,
                       const ScalarFunctionSpec& cost) {
  const std::size_t n = lower.size();
  return Game(std::move(w), std::move(lower), std::move(upper),
              std::vector<ScalarFunctionSpec>(n, value),
              std::vector<ScalarFunctionSpec>(n, cost));
}

bool Game::upper_triangular() const {
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (w_(i, j) != 0.0) return false;
  return true;
}

bool operator==(const Game& a, const Game& b) {
  return a.w_ == b.w_ && a.lower_ == b.lower_ && a.upper_ == b.upper_ &&
         a.values_ == b.values_ && a.costs_ == b.costs_;
}

bool feasible(const Game& game, std::span<const double> x, double tol) {
  if (x.size() != game.n()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return false;
    if (x[i] < game.lower()[i] - slack(game.lower()[i], tol)) return false;
    if (x[i] > game.upper()[i] + slack(game.upper()[i], tol)) return false;
  }
  return true;
}

void require_feasible(const Game& game, std::span<const double> x) {
  if (x.size() != game.n())
    throw InvalidArgument("profile has " + std::to_string(x.size()) +
                          " entries, game has " + std::to_string(game.n()) +
                          " players");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) ||
        x[i] < game.lower()[i] - slack(game.lower()[i], kFeasibilityTol) ||
        x[i] > game.upper()[i] + slack(game.upper()[i], kFeasibilityTol)) {
      std::ostringstream os;
      os.precision(17);
      os << "x[" << i << "] = " << x[i] << " outside "
         << interval_text(game.box(i));
      throw InvalidArgument(os.str());
    }
  }
}

Vector project(const Game& game, std::span<const double> x) {
  Vector out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::clamp(out[i], game.lower()[i], game.upper()[i]);
  return out;
}

Vector gains(const Game& game, std::span<const double> x) {
  if (x.size() != game.n())
    throw InvalidArgument("gains: dimension mismatch");
  return game.W() * x;
}

GainBounds gain_bounds(const Game& game) { return game.bounds(); }

double externality(const Game& game, std::size_t i,
                   std::span<const double> x) {
  double d = 0.0;
  const auto row = game.W().row(i);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != i) d += row[j] * x[j];
  return d;
}

UtilityProfile utility_profile(const Game& game, std::span<const double> x) {
  require_feasible(game, x);
  const Vector k = gains(game, x);
  UtilityProfile out{Vector(game.n()), 0.0};
  for (std::size_t i = 0; i < game.n(); ++i) {
    out.u[i] = game.value(i).eval_clamped(k[i]).value -
               game.cost(i).eval_clamped(x[i]).value;
    out.sw += out.u[i];
  }
  return out;
}

double social_welfare(const Game& game, std::span<const double> x) {
  return utility_profile(game, x).sw;
}

Vector pseudo_gradient(const Game& game, std::span<const double> x) {
  const Vector k = gains(game, x);
  Vector g(game.n());
  for (std::size_t i = 0; i < game.n(); ++i)
    g[i] = game.value(i).eval_clamped(k[i]).d1 -
           game.cost(i).eval_clamped(x[i]).d1;
  return g;
}

Vector sw_gradient(const Game& game, std::span<const double> x) {
  const std::size_t n = game.n();
  const Vector k = gains(game, x);
  Vector fprime(n);
  for (std::size_t i = 0; i < n; ++i)
    fprime[i] = game.value(i).eval_clamped(k[i]).d1;
  Vector g(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += fprime[i] * game.W()(i, j);
    g[j] = s - game.cost(j).eval_clamped(x[j]).d1;
  }
  return g;
}

double response_payoff(const Game& game, std::size_t i, double y, double d) {
  return game.value(i).eval_clamped(y + d).value -
         game.cost(i).eval_clamped(y).value;
}

double best_response(const Game& game, std::size_t i,
                     std::span<const double> x) {
  const double d = externality(game, i, x);
  const ScalarFunctionSpec& f = game.value(i);
  const ScalarFunctionSpec& c = game.cost(i);
  auto slope = [&](double y) {
    return f.eval_clamped(y + d).d1 - c.eval_clamped(y).d1;
  };
  double lo = game.lower()[i];
  double hi = game.upper()[i];
  if (slope(lo) <= 0.0) return lo;
  if (slope(hi) > 0.0) return hi;
  const double tol =
      std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon() *
                          std::max(std::abs(lo), std::abs(hi)));
  // Invariant: slope(lo) > 0 >= slope(hi).
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

BrGap br_gap(const Game& game, std::span<const double> x) {
  require_feasible(game, x);
  BrGap out;
  for (std::size_t i = 0; i < game.n(); ++i) {
    const double d = externality(game, i, x);
    const double y = best_response(game, i, x);
    const double xi = std::clamp(x[i], game.lower()[i], game.upper()[i]);
    const double g =
        response_payoff(game, i, y, d) - response_payoff(game, i, xi, d);
    if (g > out.gap) {
      out.gap = g;
      out.worst = i;
    }
  }
  return out;
}

}  // namespace pgnet
