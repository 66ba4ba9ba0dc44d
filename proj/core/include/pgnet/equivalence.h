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

#ifndef PGNET_EQUIVALENCE_H_
#define PGNET_EQUIVALENCE_H_

#include <optional>
#include <span>

#include "pgnet/game.h"

namespace pgnet {

inline constexpr double kMaxInducedBound = 1e12;

// Affine reparameterisation x2 = d * x1 + b bound to a source game. The gain
// shifts m_i = d_i sum_j w_ij b_j / d_j are always derived from the source
// network, never supplied.
class EquivalenceMap {
 public:
  // Throws InvalidArgument when d is not strictly positive, sizes differ, or
  // the induced bounds exceed kMaxInducedBound in magnitude.
  static EquivalenceMap Bind(const Game& source, Vector d, Vector b);

  std::size_t n() const { return d_.size(); }
  const Vector& d() const { return d_; }
  const Vector& b() const { return b_; }
  const Vector& m() const { return m_; }

  const Matrix& source_W() const { return source_w_; }
  // D W D^-1.
  const Matrix& target_W() const { return target_w_; }
  const Vector& source_lower() const { return source_lower_; }
  const Vector& source_upper() const { return source_upper_; }
  const Vector& target_lower() const { return target_lower_; }
  const Vector& target_upper() const { return target_upper_; }

  bool identity() const;

 private:
  EquivalenceMap() = default;
  friend EquivalenceMap inverse_map(const EquivalenceMap& map);

  Vector d_, b_, m_;
  Matrix source_w_, target_w_;
  Vector source_lower_, source_upper_, target_lower_, target_upper_;
};

// Bound to the transformed game: d' = 1/d, b' = -b/d.
EquivalenceMap inverse_map(const EquivalenceMap& map);

// W2 = D W1 D^-1, X2 = d X1 + b, c2_i(y) = c1_i((y - b_i)/d_i),
// f2_i(k) = f1_i((k - m_i)/d_i).
Game transform_game(const Game& g1, const EquivalenceMap& map);

enum class MapDirection { kForward, kInverse };

// Throws InvalidArgument when the input or the image leaves its box.
Vector map_profile(const EquivalenceMap& map, std::span<const double> x,
                   MapDirection direction = MapDirection::kForward);

// Automatic epsilon for the triangular normaliser: 0.9 / (n (1 + r)) with
// r = max_i near_symmetric_ratio(game, i). Throws ComputationError when some
// ratio is undefined.
double auto_normalizer_eps(const Game& game);

// d_i = eps^-(i+1), b = 0, so that |w2_ij| = eps^(j-i) |w_ij| for i < j.
// Requires w_ij = 0 for i > j and |w_ij| <= 1 above the diagonal.
EquivalenceMap upper_triangular_normalizer(const Game& game,
                                           std::optional<double> eps = {});

}  // namespace pgnet

#endif  // PGNET_EQUIVALENCE_H_
