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

#include "pgnet/certificates.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pgnet/error.h"

namespace pgnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kShiftGrid = 33;

Vector checked_gamma(std::span<const double> gamma, std::size_t n) {
  if (gamma.empty()) return Vector(n, 1.0);
  if (gamma.size() != n)
    throw InvalidArgument("gamma: expected " + std::to_string(n) + " entries");
  for (double g : gamma)
    if (!(g > 0.0) || !std::isfinite(g))
      throw InvalidArgument("gamma: entries must be positive");
  return Vector(gamma.begin(), gamma.end());
}

void finish(CertificateReport& r) {
  r.sigma_max = spectral_bounds(r.matrix).sigma_max;
  r.margin = r.threshold - r.scale * r.sigma_max;
  r.pass = r.applicable && r.threshold > 0.0 && r.margin > 0.0;
  if (!(r.threshold > 0.0)) r.notes.push_back("zero modulus");
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool kink_inside(const ScalarFunctionSpec& f, Interval iv) {
  const auto k = f.kink();
  return k && *k > iv.lo && *k < iv.hi;
}

}  // namespace

std::string_view theorem_tag(Theorem theorem) {
  switch (theorem) {
    case Theorem::kNearIndividual: return "near_individual";
    case Theorem::kNearPotential: return "near_potential";
    case Theorem::kNearSymmetric: return "near_symmetric";
  }
  return "unknown";
}

double min_shifted_modulus(const ScalarFunctionSpec& f, Interval x_box,
                           Interval shifts) {
  auto at = [&](double d) {
    return f.smoothness({x_box.lo + d, x_box.hi + d}).modulus;
  };
  double m = std::min(at(shifts.lo), at(shifts.hi));
  if (shifts.width() > 0.0) {
    for (int s = 1; s <= kShiftGrid; ++s)
      m = std::min(m, at(shifts.lo + shifts.width() * s / (kShiftGrid + 1)));
  }
  return m;
}

std::optional<double> near_symmetric_ratio(const Game& game, std::size_t i) {
  const double lc = game.cost(i).smoothness(game.box(i)).lipschitz_d1;
  const Interval k = game.bounds().gain(i);
  const double sat = game.value(i).saturation_point();
  const bool clipped = sat < k.hi;
  const double hi = std::min(k.hi, sat);
  if (!(hi > k.lo)) return std::nullopt;
  const double modulus = game.value(i).smoothness({k.lo, hi}).modulus;
  if (!(modulus > 0.0)) return std::nullopt;
  const double ratio = 2.0 * lc / modulus;
  return clipped ? std::max(ratio, 1.0) : ratio;
}

CertificateReport cert_near_individual(const Game& game,
                                       std::span<const double> gamma_in) {
  const std::size_t n = game.n();
  CertificateReport r;
  r.theorem = Theorem::kNearIndividual;
  r.gamma = checked_gamma(gamma_in, n);
  const GainBounds& gb = game.bounds();

  double c = kInf;
  double l0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double value_mod =
        min_shifted_modulus(game.value(i), game.box(i), gb.externality(i));
    const double cost_mod = game.cost(i).smoothness(game.box(i)).modulus;
    c = std::min(c, r.gamma[i] * (value_mod + cost_mod));
    l0 = std::max(l0, game.value(i).smoothness(gb.gain(i)).lipschitz_d1);
  }
  r.matrix = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) s += r.gamma[k] * std::abs(game.W()(k, i) * game.W()(k, j));
      r.matrix(i, j) = s;
    }
  r.threshold = c;
  r.scale = l0;
  finish(r);
  return r;
}

CertificateReport cert_near_potential(const Game& game,
                                      const ScalarFunctionSpec& f,
                                      std::span<const double> gamma_in) {
  const std::size_t n = game.n();
  CertificateReport r;
  r.theorem = Theorem::kNearPotential;
  r.gamma = checked_gamma(gamma_in, n);
  const GainBounds& gb = game.bounds();

  double sum_lo = 0.0, sum_hi = 0.0;
  Interval hull{kInf, -kInf};
  for (std::size_t i = 0; i < n; ++i) {
    sum_lo += game.lower()[i];
    sum_hi += game.upper()[i];
    hull.lo = std::min(hull.lo, gb.k_lo[i]);
    hull.hi = std::max(hull.hi, gb.k_hi[i]);
  }
  hull.lo = std::min(hull.lo, sum_lo);
  hull.hi = std::max(hull.hi, sum_hi);
  if (!f.in_domain(hull.lo) || !f.in_domain(hull.hi)) {
    throw DomainError("near_potential: common value is not defined on [" +
                      num(hull.lo) + ", " + num(hull.hi) + "]");
  }

  Vector sigma(n);
  double c = kInf;
  bool caveat = kink_inside(f, hull);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = closeness_sigma(game.value(i), f, r.gamma[i], gb.gain(i));
    const double mod = min_shifted_modulus(f, game.box(i), gb.externality(i)) +
                       r.gamma[i] * game.cost(i).smoothness(game.box(i)).modulus;
    c = std::min(c, mod);
    caveat = caveat || kink_inside(game.value(i), gb.gain(i));
  }
  const SmoothnessReport s = f.smoothness(hull);
  const double c1 = s.lipschitz_d1;
  const double c2 = s.lipschitz_d2;
  r.threshold = c;
  r.scale = 1.0;
  r.matrix = Matrix(n, n);
  if (caveat)
    r.notes.push_back(
        "a kink lies inside a reachable gain interval; second-order "
        "differentiability does not hold there");
  if (!std::isfinite(c2)) {
    r.applicable = false;
    r.notes.push_back(
        "not applicable: the common value has a discontinuous second "
        "derivative on the reachable gains");
    r.sigma_max = kInf;
    r.margin = -kInf;
    r.pass = false;
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t l = 0; l < n; ++l)
      row += std::abs(game.W()(i, l) - 1.0) *
             std::max(-game.lower()[l], game.upper()[l]);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = game.W()(i, j);
      r.matrix(i, j) = sigma[i] * std::abs(w) + c1 * std::abs(w - 1.0) + c2 * row;
    }
  }
  finish(r);
  return r;
}

CertificateReport cert_near_symmetric(const Game& game, const Matrix& w0) {
  const std::size_t n = game.n();
  if (w0.rows() != n || w0.cols() != n)
    throw InvalidArgument("W0: expected " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix");
  if (!w0.is_symmetric(1e-12 * std::max(1.0, w0.max_abs())))
    throw InvalidArgument("W0: must be symmetric");
  for (std::size_t i = 0; i < n; ++i)
    if (w0(i, i) != 1.0) throw InvalidArgument("W0: diagonal must be 1");

  CertificateReport r;
  r.theorem = Theorem::kNearSymmetric;
  r.gamma = Vector(n, 1.0);
  r.scale = 1.0;
  r.threshold = jacobi_eigenvalues(w0).values.front();
  r.matrix = Matrix(n, n);
  if (!(r.threshold > 0.0))
    r.notes.push_back("W0 is not positive definite");

  for (std::size_t i = 0; i < n; ++i) {
    const auto ratio = near_symmetric_ratio(game, i);
    if (!ratio) {
      r.notes.push_back("zero modulus: value of player " + std::to_string(i) +
                        " has no curvature below saturation");
      r.sigma_max = kInf;
      r.margin = -kInf;
      r.pass = false;
      return r;
    }
    if (game.value(i).saturation_point() < game.bounds().k_hi[i])
      r.notes.push_back("player " + std::to_string(i) +
                        ": gains saturate; curvature taken below saturation");
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = game.W()(i, j);
      r.matrix(i, j) = *ratio * std::abs(w) + std::abs(w0(i, j) - w);
    }
  }
  r.sigma_max = spectral_bounds(r.matrix).sigma_max;
  r.margin = r.threshold - r.sigma_max;
  r.pass = r.threshold > 0.0 && r.margin > 0.0;
  return r;
}

std::vector<CertificateReport> certify_all(const Game& game,
                                           const CertifyOptions& options) {
  struct Candidate {
    Game game;
    std::string label;
    std::optional<EquivalenceMap> map;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({game, "identity", std::nullopt});
  for (std::size_t k = 0; k < options.maps.size(); ++k) {
    candidates.push_back({transform_game(game, options.maps[k]),
                          "map[" + std::to_string(k) + "]", options.maps[k]});
  }
  if (options.auto_normalize && game.n() > 1 && game.upper_triangular() &&
      game.W() != Matrix::Identity(game.n())) {
    try {
      const double eps = auto_normalizer_eps(game);
      EquivalenceMap map = upper_triangular_normalizer(game, eps);
      candidates.push_back({transform_game(game, map),
                            "upper_triangular_normalizer(eps=" + num(eps) + ")",
                            map});
    } catch (const Error&) {
      // No usable normaliser; the untransformed game is still tried.
    }
  }

  const Vector gamma = checked_gamma(options.gamma, game.n());
  std::vector<CertificateReport> out;
  auto attempt = [&](const Candidate& cand, Theorem theorem, auto&& run) {
    CertificateReport r;
    try {
      r = run();
    } catch (const Error& e) {
      r.theorem = theorem;
      r.gamma = gamma;
      r.matrix = Matrix(game.n(), game.n());
      r.applicable = false;
      r.sigma_max = kInf;
      r.margin = -kInf;
      r.notes.push_back(std::string("not applicable: ") + e.what());
    }
    r.transform = cand.label;
    r.map = cand.map;
    out.push_back(std::move(r));
  };

  for (const Candidate& cand : candidates) {
    const Game& g = cand.game;
    attempt(cand, Theorem::kNearIndividual,
            [&] { return cert_near_individual(g, gamma); });

    std::optional<ScalarFunctionSpec> common;
    if (options.f_common && !cand.map) common = options.f_common;
    if (!common &&
        std::all_of(g.values().begin(), g.values().end(),
                    [&](const ScalarFunctionSpec& f) { return f == g.value(0); }))
      common = g.value(0);
    if (common)
      attempt(cand, Theorem::kNearPotential,
              [&] { return cert_near_potential(g, *common, gamma); });

    std::vector<Matrix> w0 = options.w0;
    if (w0.empty()) {
      w0.push_back(Matrix::Identity(g.n()));
      if (g.W().is_symmetric() && g.W() != w0.front()) w0.push_back(g.W());
    }
    for (const Matrix& m : w0)
      attempt(cand, Theorem::kNearSymmetric,
              [&] { return cert_near_symmetric(g, m); });
  }
  return out;
}

CertificateReport certify_any(const Game& game, const CertifyOptions& options) {
  std::vector<CertificateReport> all = certify_all(game, options);
  std::size_t best = 0;
  auto better = [](const CertificateReport& a, const CertificateReport& b) {
    if (a.applicable != b.applicable) return a.applicable;
    return a.margin > b.margin;
  };
  for (std::size_t k = 1; k < all.size(); ++k)
    if (better(all[k], all[best])) best = k;
  return all[best];
}

}  // namespace pgnet
