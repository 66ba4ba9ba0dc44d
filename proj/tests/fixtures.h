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

#ifndef PGNET_TESTS_FIXTURES_H_
#define PGNET_TESTS_FIXTURES_H_

#include <cstdint>
#include <vector>

#include "pgnet/casestudy.h"
#include "pgnet/equivalence.h"
#include "pgnet/game.h"
#include "pgnet/rng.h"

namespace pgnet::testing {

// Two pairs of players; each player receives the full effort of the other
// pair and none from its own partner.
inline Matrix two_sided_network() {
  return Matrix{{1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 1}};
}

inline Game two_sided_game() {
  return clipped_quadratic_game(two_sided_network(), Vector(4, 0.0),
                                Vector(4, 1.0), 3.0, 1.0, 1.0);
}

// a = 3, b = 1, c0 = 1 on X = [0, 2]: unique NE at x = 1.
inline Game single_player_game() {
  return clipped_quadratic_game(Matrix::Identity(1), {0.0}, {2.0}, 3.0, 1.0,
                                1.0);
}

// Symmetric pair with w = 0.5; interior NE at 0.75 each.
inline Game symmetric_pair_game() {
  return clipped_quadratic_game(Matrix{{1, 0.5}, {0.5, 1}}, {0.0, 0.0},
                                {2.5, 2.5}, 3.0, 1.0, 1.0);
}

inline Game triangular_pair_game() {
  return clipped_quadratic_game(Matrix{{1, 1}, {0, 1}}, {0.0, 0.0},
                                {1.5, 1.5}, 3.0, 1.0, 1.0);
}

inline double uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index, double lo, double hi) {
  return lo + (hi - lo) * counter_uniform(seed, stream, index);
}

inline Vector random_profile(const Game& g, std::uint64_t seed,
                             std::uint64_t stream) {
  Vector x(g.n());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = uniform(seed, stream, i, g.lower()[i], g.upper()[i]);
  return x;
}

// Mixed-family game on a non-negative network, n in [2, 5].
inline Game random_mixed_game(std::uint64_t seed) {
  const auto n = 2 + static_cast<std::size_t>(uniform(seed, 100, 0, 0, 4 - 1e-9));
  Matrix w = Matrix::Identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) w(i, j) = uniform(seed, 101, i * n + j, 0.0, 0.8);
  Vector lo(n), hi(n);
  std::vector<ScalarFunctionSpec> values, costs;
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = uniform(seed, 102, i, 0.0, 0.5);
    hi[i] = lo[i] + uniform(seed, 103, i, 0.5, 2.0);
    const double a = uniform(seed, 104, i, 1.0, 4.0);
    switch (static_cast<int>(uniform(seed, 105, i, 0, 3 - 1e-9))) {
      case 0: values.push_back(ScalarFunctionSpec::QuadraticClippedValue(a, 1.0)); break;
      case 1: values.push_back(ScalarFunctionSpec::LogValue(a, 1.0)); break;
      default: values.push_back(ScalarFunctionSpec::ExpValue(a, 2.0)); break;
    }
    const double c = uniform(seed, 106, i, 0.5, 2.0);
    costs.push_back(uniform(seed, 107, i, 0, 1) < 0.5
                        ? ScalarFunctionSpec::QuadraticCost(c)
                        : ScalarFunctionSpec::LinearCost(c));
  }
  return Game(w, lo, hi, values, costs);
}

inline EquivalenceMap random_map(const Game& g, std::uint64_t seed) {
  Vector d(g.n()), b(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    d[i] = uniform(seed, 110, i, 0.5, 3.0);
    b[i] = uniform(seed, 111, i, -1.0, 1.0);
  }
  return EquivalenceMap::Bind(g, d, b);
}

}  // namespace pgnet::testing

#endif  // PGNET_TESTS_FIXTURES_H_
