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

#include "pgnet/equivalence.h"

#include <cmath>
#include <sstream>

#include "pgnet/certificates.h"
#include "pgnet/error.h"

namespace pgnet {
namespace {

Vector shifts(const Matrix& w, const Vector& d, const Vector& b) {
  const std::size_t n = d.size();
  Vector m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += w(i, j) * b[j] / d[j];
    m[i] = d[i] * s;
  }
  return m;
}

Matrix similarity(const Matrix& w, const Vector& d) {
  const std::size_t n = d.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = i == j ? w(i, j) : d[i] * w(i, j) / d[j];
  return out;
}

void check_box(const Vector& lo, const Vector& hi, std::span<const double> x,
               const char* which) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double tol_lo = kFeasibilityTol * std::max(1.0, std::abs(lo[i]));
    const double tol_hi = kFeasibilityTol * std::max(1.0, std::abs(hi[i]));
    if (!(x[i] >= lo[i] - tol_lo && x[i] <= hi[i] + tol_hi)) {
      std::ostringstream os;
      os.precision(17);
      os << which << " profile entry " << i << " = " << x[i] << " outside ["
         << lo[i] << ", " << hi[i] << "]";
      throw InvalidArgument(os.str());
    }
  }
}

}  // namespace

EquivalenceMap EquivalenceMap::Bind(const Game& source, Vector d, Vector b) {
  const std::size_t n = source.n();
  if (d.size() != n) throw InvalidArgument("d: expected " + std::to_string(n) + " entries");
  if (b.size() != n) throw InvalidArgument("b: expected " + std::to_string(n) + " entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(d[i] > 0.0) || !std::isfinite(d[i]))
      throw InvalidArgument("d[" + std::to_string(i) + "]: must be positive and finite");
    if (!std::isfinite(b[i]))
      throw InvalidArgument("b[" + std::to_string(i) + "]: must be finite");
  }
  EquivalenceMap map;
  map.source_w_ = source.W();
  map.target_w_ = similarity(source.W(), d);
  map.source_lower_ = source.lower();
  map.source_upper_ = source.upper();
  map.target_lower_.resize(n);
  map.target_upper_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    map.target_lower_[i] = d[i] * source.lower()[i] + b[i];
    map.target_upper_[i] = d[i] * source.upper()[i] + b[i];
    if (std::abs(map.target_lower_[i]) > kMaxInducedBound ||
        std::abs(map.target_upper_[i]) > kMaxInducedBound) {
      throw InvalidArgument("map: induced bounds of player " +
                            std::to_string(i) + " exceed 1e12 in magnitude");
    }
  }
  map.m_ = shifts(source.W(), d, b);
  map.d_ = std::move(d);
  map.b_ = std::move(b);
  return map;
}

bool EquivalenceMap::identity() const {
  for (std::size_t i = 0; i < d_.size(); ++i)
    if (d_[i] != 1.0 || b_[i] != 0.0) return false;
  return true;
}

EquivalenceMap inverse_map(const EquivalenceMap& map) {
  const std::size_t n = map.n();
  EquivalenceMap inv;
  inv.d_.resize(n);
  inv.b_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv.d_[i] = 1.0 / map.d_[i];
    inv.b_[i] = -map.b_[i] / map.d_[i];
  }
  inv.source_w_ = map.target_w_;
  inv.target_w_ = map.source_w_;
  inv.source_lower_ = map.target_lower_;
  inv.source_upper_ = map.target_upper_;
  inv.target_lower_ = map.source_lower_;
  inv.target_upper_ = map.source_upper_;
  inv.m_ = shifts(inv.source_w_, inv.d_, inv.b_);
  return inv;
}

Game transform_game(const Game& g1, const EquivalenceMap& map) {
  if (g1.n() != map.n() || g1.W() != map.source_W() ||
      g1.lower() != map.source_lower() || g1.upper() != map.source_upper())
    throw InvalidArgument("map was bound to a different game");
  std::vector<ScalarFunctionSpec> values;
  std::vector<ScalarFunctionSpec> costs;
  for (std::size_t i = 0; i < g1.n(); ++i) {
    values.push_back(
        ScalarFunctionSpec::AffineReparam(g1.value(i), map.d()[i], map.m()[i]));
    costs.push_back(
        ScalarFunctionSpec::AffineReparam(g1.cost(i), map.d()[i], map.b()[i]));
  }
  return Game(map.target_W(), map.target_lower(), map.target_upper(),
              std::move(values), std::move(costs));
}

Vector map_profile(const EquivalenceMap& map, std::span<const double> x,
                   MapDirection direction) {
  if (x.size() != map.n()) throw InvalidArgument("map_profile: size mismatch");
  Vector y(x.size());
  if (direction == MapDirection::kForward) {
    check_box(map.source_lower(), map.source_upper(), x, "source");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = map.d()[i] * x[i] + map.b()[i];
    check_box(map.target_lower(), map.target_upper(), y, "mapped");
  } else {
    check_box(map.target_lower(), map.target_upper(), x, "target");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] - map.b()[i]) / map.d()[i];
    check_box(map.source_lower(), map.source_upper(), y, "mapped");
  }
  return y;
}

double auto_normalizer_eps(const Game& game) {
  double r = 0.0;
  for (std::size_t i = 0; i < game.n(); ++i) {
    const auto ratio = near_symmetric_ratio(game, i);
    if (!ratio)
      throw ComputationError("auto eps: value of player " + std::to_string(i) +
                             " has zero curvature below saturation");
    r = std::max(r, *ratio);
  }
  return 0.9 / (static_cast<double>(game.n()) * (1.0 + r));
}

EquivalenceMap upper_triangular_normalizer(const Game& game,
                                           std::optional<double> eps) {
  const std::size_t n = game.n();
  if (!game.upper_triangular())
    throw InvalidArgument("normalizer: W must have w_ij = 0 for i > j");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(game.W()(i, j)) > 1.0)
        throw InvalidArgument("normalizer: |w_ij| must be at most 1 above the "
                              "diagonal");
  const double e = eps ? *eps : auto_normalizer_eps(game);
  if (!(e > 0.0) || !std::isfinite(e))
    throw InvalidArgument("normalizer: eps must be positive");
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = std::pow(e, -static_cast<double>(i + 1));
  return EquivalenceMap::Bind(game, std::move(d), Vector(n, 0.0));
}

}  // namespace pgnet
