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

#include "pgnet/dynamics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace pgnet {
namespace {

using Field = std::function<Vector(std::span<const double>)>;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

// Field with components pointing out of the box at an active face removed.
double projected_field_norm(const Game& game, std::span<const double> x,
                            std::span<const double> f) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = f[i];
    if (x[i] <= game.lower()[i] && v < 0.0) v = 0.0;
    if (x[i] >= game.upper()[i] && v > 0.0) v = 0.0;
    m = std::max(m, std::abs(v));
  }
  return m;
}

Vector axpy(std::span<const double> x, double h, std::span<const double> k) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * k[i];
  return out;
}

void record(const Game& game, const IntegrationOptions& opt, double t,
            const Vector& x, Trajectory& tr) {
  tr.times.push_back(t);
  tr.states.push_back(x);
  if (!opt.diagnostics) return;
  tr.sw.push_back(social_welfare(game, x));
  tr.br_gap.push_back(br_gap(game, x).gap);
  if (opt.energy_reference) {
    const Vector gamma = opt.energy_gamma.empty()
                             ? Vector(game.n(), 1.0)
                             : opt.energy_gamma;
    tr.energy.push_back(energy(game, gamma, x, *opt.energy_reference));
  }
}

Trajectory integrate(const Game& game, const Field& field,
                     std::span<const double> x0, double step, double horizon,
                     const IntegrationOptions& opt) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw InvalidArgument("step must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidArgument("horizon must be positive");
  if (opt.stride == 0) throw InvalidArgument("stride must be positive");
  require_feasible(game, x0);
  if (opt.energy_reference) require_feasible(game, *opt.energy_reference);

  const auto steps =
      static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
  const double h = horizon / static_cast<double>(steps);
  Trajectory tr;
  Vector x = project(game, x0);
  record(game, opt, 0.0, x, tr);
  {
    const Vector f0 = field(x);
    if (projected_field_norm(game, x, f0) < kFieldConvergenceTol)
      tr.converged_at = 0.0;
  }
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t = h * static_cast<double>(s);
    const Vector k1 = field(x);
    const Vector k2 = field(project(game, axpy(x, 0.5 * h, k1)));
    const Vector k3 = field(project(game, axpy(x, 0.5 * h, k2)));
    const Vector k4 = field(project(game, axpy(x, h, k3)));
    Vector next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      next[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!all_finite(next) || !all_finite(k1)) {
      std::ostringstream os;
      os << "state became non-finite at t=" << t;
      throw IntegrationError(os.str(), t - h, x);
    }
    Vector clipped = project(game, next);
    if (clipped != next) tr.projection_active = true;
    x = std::move(clipped);
    if (!tr.converged_at &&
        projected_field_norm(game, x, field(x)) < kFieldConvergenceTol)
      tr.converged_at = t;
    if (s % opt.stride == 0 || s == steps) record(game, opt, t, x, tr);
  }
  return tr;
}

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

Line least_squares(const Vector& xs, const Vector& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  Line l;
  if (sxx <= 0.0) return l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  l.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 0.0;
  return l;
}

}  // namespace

Trajectory integrate_pseudo_gradient(const Game& game,
                                     std::span<const double> alpha,
                                     std::span<const double> x0, double step,
                                     double horizon,
                                     const IntegrationOptions& options) {
  if (alpha.size() != game.n())
    throw InvalidArgument("alpha: expected one entry per player");
  for (double a : alpha)
    if (!(a > 0.0) || !std::isfinite(a))
      throw InvalidArgument("alpha: entries must be positive");
  const Vector scale(alpha.begin(), alpha.end());
  const Field f = [&game, scale](std::span<const double> x) {
    Vector g = pseudo_gradient(game, x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= scale[i];
    return g;
  };
  return integrate(game, f, x0, step, horizon, options);
}

Trajectory integrate_sw_flow(const Game& game, std::span<const double> x0,
                             double step, double horizon,
                             const IntegrationOptions& options) {
  const Field f = [&game](std::span<const double> x) {
    return sw_gradient(game, x);
  };
  return integrate(game, f, x0, step, horizon, options);
}

Vector weighted_welfare_gradient(const Game& game,
                                 std::span<const double> gamma,
                                 std::span<const double> x) {
  const std::size_t n = game.n();
  if (gamma.size() != n) throw InvalidArgument("gamma: size mismatch");
  const Vector k = gains(game, x);
  Vector g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double fi = gamma[i] * game.value(i).eval_clamped(k[i]).d1;
    for (std::size_t j = 0; j < n; ++j) g[j] += fi * game.W()(i, j);
  }
  for (std::size_t j = 0; j < n; ++j)
    g[j] -= gamma[j] * game.cost(j).eval_clamped(x[j]).d1;
  return g;
}

double energy(const Game& game, std::span<const double> gamma,
              std::span<const double> x, std::span<const double> x_star) {
  if (gamma.size() != game.n()) throw InvalidArgument("gamma: size mismatch");
  const Vector u = utility_profile(game, x).u;
  const Vector us = utility_profile(game, x_star).u;
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e += gamma[i] * (us[i] - u[i]);
  const Vector g = weighted_welfare_gradient(game, gamma, x_star);
  for (std::size_t i = 0; i < u.size(); ++i) e += (x[i] - x_star[i]) * g[i];
  return e;
}

// Fewest points for which a two-parameter line has a meaningful r^2.
constexpr std::size_t kMinFitSamples = 3;

RateFit fit_rate(std::span<const double> times, std::span<const double> gaps) {
  if (times.size() != gaps.size())
    throw InvalidArgument("fit_rate: times and gaps differ in length");
  const std::size_t skip = times.size() / 10;
  Vector t, logg, g, inv_t;
  for (std::size_t i = skip; i < times.size(); ++i) {
    if (!(gaps[i] > 0.0) || !std::isfinite(gaps[i]))
      throw InvalidArgument("fit_rate: gaps must be positive and finite");
    t.push_back(times[i]);
    logg.push_back(std::log(gaps[i]));
  }
  if (t.size() < kMinFitSamples)
    throw InvalidArgument("fit_rate: need at least 3 samples after the "
                          "transient cut");
  if (std::all_of(logg.begin(), logg.end(),
                  [&](double v) { return v == logg.front(); }))
    throw InvalidArgument("fit_rate: constant series");
  for (std::size_t i = skip; i < times.size(); ++i) {
    if (times[i] <= 0.0) continue;
    inv_t.push_back(1.0 / times[i]);
    g.push_back(gaps[i]);
  }

  RateFit fit;
  const Line e = least_squares(t, logg);
  fit.exponential_rate = e.slope;
  fit.exponential_r2 = e.r2;
  if (inv_t.size() >= kMinFitSamples) {
    const Line l = least_squares(inv_t, g);
    fit.inverse_linear_rate = l.slope;
    fit.inverse_linear_r2 = l.r2;
  }
  if (fit.inverse_linear_r2 > fit.exponential_r2) {
    fit.model = RateModel::kInverseLinear;
    fit.rate = fit.inverse_linear_rate;
    fit.r_squared = fit.inverse_linear_r2;
  } else {
    fit.model = RateModel::kExponential;
    fit.rate = fit.exponential_rate;
    fit.r_squared = fit.exponential_r2;
  }
  return fit;
}

void write_csv(std::ostream& out, const Trajectory& tr) {
  const std::size_t n = tr.states.empty() ? 0 : tr.states.front().size();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
  out << ",sw,br_gap,energy\n";
  const auto old = out.precision(17);
  for (std::size_t r = 0; r < tr.times.size(); ++r) {
    out << tr.times[r];
    for (double v : tr.states[r]) out << ',' << v;
    out << ',';
    if (r < tr.sw.size()) out << tr.sw[r];
    out << ',';
    if (r < tr.br_gap.size()) out << tr.br_gap[r];
    out << ',';
    if (r < tr.energy.size()) out << tr.energy[r];
    out << '\n';
  }
  out.precision(old);
}

}  // namespace pgnet
