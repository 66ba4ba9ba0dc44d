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

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "pgnet/casestudy.h"
#include "pgnet/error.h"
#include "pgnet/game.h"

namespace pgnet {
namespace {

using F = ScalarFunctionSpec;

// Brute-force best response on a uniform grid.
double grid_best_response(const Game& g, std::size_t i, double d, int steps) {
  double best = g.lower()[i];
  double best_u = response_payoff(g, i, best, d);
  for (int s = 1; s <= steps; ++s) {
    const double y = g.lower()[i] + (g.upper()[i] - g.lower()[i]) * s / steps;
    const double u = response_payoff(g, i, y, d);
    if (u > best_u) {
      best_u = u;
      best = y;
    }
  }
  return best;
}

Game log_game() {
  const Matrix w{{1, 0.3, -0.2}, {0.5, 1, 0.1}, {0, 0.4, 1}};
  return Game(w, {0, 0, 0}, {1, 2, 1.5},
              {F::LogValue(2, 1), F::LogValue(1, 2), F::ExpValue(3, 1)},
              {F::QuadraticCost(1), F::LinearCost(0.2),
               F::Regularized(F::LinearCost(0.1), 0.5)});
}

void expect_error_contains(const std::function<void()>& fn,
                           const std::string& text) {
  try {
    fn();
    ADD_FAILURE() << "expected InvalidArgument mentioning " << text;
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find(text), std::string::npos) << e.what();
  }
}

TEST(Game, ValidationNamesTheField) {
  const F v = F::QuadraticClippedValue(3, 1);
  const F c = F::QuadraticCost(1);
  expect_error_contains(
      [&] { Game(Matrix{{1, 0}, {0, 2}}, {0, 0}, {1, 1}, {v, v}, {c, c}); },
      "W[1][1]");
  expect_error_contains(
      [&] { Game(Matrix::Identity(2), {0, 1}, {1, 1}, {v, v}, {c, c}); },
      "lower[1]");
  expect_error_contains(
      [&] { Game(Matrix::Identity(2), {0, 0}, {1, 1}, {v, c}, {c, c}); },
      "players[1].value");
  expect_error_contains(
      [&] { Game(Matrix::Identity(2), {0, 0}, {1, 1}, {v, v}, {c, v}); },
      "players[1].cost");
  expect_error_contains(
      [&] { Game(Matrix::Identity(2), {0, -1}, {1, 1}, {v, v}, {c, c}); },
      "players[1].cost");
  expect_error_contains(
      [&] {
        Game(Matrix{{1, -1}, {0, 1}}, {0, 0}, {1, 1},
             {F::LogValue(1, 0.5), v}, {c, c});
      },
      "players[0].value");
  expect_error_contains(
      [&] { Game(Matrix::Identity(2), {0, 0}, {1, 1, 1}, {v, v}, {c, c}); },
      "upper");
  expect_error_contains(
      [&] { Game(Matrix::Identity(3), {0, 0}, {1, 1}, {v, v}, {c, c}); },
      "W");
  EXPECT_THROW(Game(Matrix(0, 0), {}, {}, {}, {}), InvalidArgument);
}

TEST(Game, HomogeneousMatchesExplicit) {
  const F v = F::QuadraticClippedValue(3, 1);
  const F c = F::QuadraticCost(1);
  const Matrix w = testing::two_sided_network();
  const Game a = Game::Homogeneous(w, Vector(4, 0.0), Vector(4, 1.0), v, c);
  const Game b(w, Vector(4, 0.0), Vector(4, 1.0), {v, v, v, v}, {c, c, c, c});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, testing::two_sided_game());
  EXPECT_FALSE(a == testing::single_player_game());
  EXPECT_FALSE(a.upper_triangular());
  EXPECT_TRUE(testing::triangular_pair_game().upper_triangular());
}

TEST(Game, GainBoundsUseSignSplitSums) {
  const F v = F::ExpValue(1, 1);
  const F c = F::LinearCost(0.1);
  const Game g(Matrix{{1, -1}, {0.5, 1}}, {0, 1}, {2, 3}, {v, v}, {c, c});
  const GainBounds& b = g.bounds();
  EXPECT_DOUBLE_EQ(b.k_lo[0], -3.0);
  EXPECT_DOUBLE_EQ(b.k_hi[0], 1.0);
  EXPECT_DOUBLE_EQ(b.k_lo[1], 1.0);
  EXPECT_DOUBLE_EQ(b.k_hi[1], 4.0);
  EXPECT_DOUBLE_EQ(b.d_lo[0], -3.0);
  EXPECT_DOUBLE_EQ(b.d_hi[0], -1.0);
  EXPECT_DOUBLE_EQ(b.d_lo[1], 0.0);
  EXPECT_DOUBLE_EQ(b.d_hi[1], 1.0);
  const Vector k = gains(g, Vector{1.0, 2.0});
  EXPECT_DOUBLE_EQ(k[0], -1.0);
  EXPECT_DOUBLE_EQ(k[1], 2.5);
  EXPECT_DOUBLE_EQ(externality(g, 1, Vector{1.0, 2.0}), 0.5);
  // Every sampled profile lands inside the bounds.
  for (int s = 0; s < 200; ++s) {
    const Vector x = testing::random_profile(g, 3, s);
    const Vector kx = gains(g, x);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_LE(b.k_lo[i], kx[i]);
      EXPECT_GE(b.k_hi[i], kx[i]);
    }
  }
}

TEST(Game, FeasibilityAndProjection) {
  const Game g = testing::two_sided_game();
  EXPECT_TRUE(feasible(g, Vector{0, 0.5, 1, 1}));
  EXPECT_TRUE(feasible(g, Vector{-1e-12, 0, 0, 1 + 1e-12}));
  EXPECT_FALSE(feasible(g, Vector{-1e-3, 0, 0, 0}));
  EXPECT_FALSE(feasible(g, Vector{0, 0, 0}));
  EXPECT_THROW(require_feasible(g, Vector{0, 0, 2, 0}), InvalidArgument);
  EXPECT_THROW(require_feasible(g, Vector{0, 0}), InvalidArgument);
  const Vector p = project(g, Vector{-1, 0.5, 3, 1});
  EXPECT_EQ(p, (Vector{0, 0.5, 1, 1}));
}

TEST(Game, UtilityProfileSumsToWelfare) {
  const Game g = testing::two_sided_game();
  const Vector x{0.2, 0.4, 0.6, 0.8};
  const UtilityProfile up = utility_profile(g, x);
  // k_0 = 0.2 + 0.6 + 0.8 = 1.6 is past the kink at 1.5.
  EXPECT_DOUBLE_EQ(up.u[0], 2.25 - 0.02);
  double sum = 0;
  for (double u : up.u) sum += u;
  EXPECT_DOUBLE_EQ(up.sw, sum);
  EXPECT_DOUBLE_EQ(social_welfare(g, x), sum);
}

TEST(Game, GradientsMatchFiniteDifferences) {
  for (const Game& g : {testing::two_sided_game(), log_game()}) {
    for (int s = 0; s < 20; ++s) {
      Vector x = testing::random_profile(g, 5, s);
      const Vector pg = pseudo_gradient(g, x);
      const Vector sg = sw_gradient(g, x);
      const double h = 1e-6;
      for (std::size_t j = 0; j < g.n(); ++j) {
        Vector xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const UtilityProfile up = utility_profile(g, xp);
        const UtilityProfile um = utility_profile(g, xm);
        const double own = (up.u[j] - um.u[j]) / (2 * h);
        const double sw = (up.sw - um.sw) / (2 * h);
        // The clipped value has a second-derivative kink; keep the tolerance
        // loose enough for a profile straddling it.
        EXPECT_NEAR(pg[j], own, 1e-5);
        EXPECT_NEAR(sg[j], sw, 1e-5);
      }
    }
  }
}

TEST(Game, BestResponseClosedFormForClippedQuadratic) {
  const Game g = testing::two_sided_game();
  for (int s = 0; s < 100; ++s) {
    const Vector x = testing::random_profile(g, 9, s);
    for (std::size_t i = 0; i < 4; ++i) {
      const double d = externality(g, i, x);
      // a - 2b(y + d) - c0 y = 0 below the kink; zero once d saturates.
      const double interior = d >= 1.5 ? 0.0 : (3.0 - 2.0 * d) / 3.0;
      const double expected = std::clamp(interior, 0.0, 1.0);
      EXPECT_NEAR(best_response(g, i, x), expected, 1e-10);
    }
  }
}

TEST(Game, BestResponseMatchesGridSearch) {
  const Game g = log_game();
  for (int s = 0; s < 30; ++s) {
    const Vector x = testing::random_profile(g, 13, s);
    for (std::size_t i = 0; i < g.n(); ++i) {
      const double d = externality(g, i, x);
      const double br = best_response(g, i, x);
      const double grid = grid_best_response(g, i, d, 20000);
      const double step = (g.upper()[i] - g.lower()[i]) / 20000;
      EXPECT_NEAR(br, grid, 2 * step);
      EXPECT_GE(response_payoff(g, i, br, d) + 1e-12,
                response_payoff(g, i, grid, d));
    }
  }
}

TEST(Game, BrGapVanishesAtEquilibria) {
  const Game g = testing::two_sided_game();
  EXPECT_LE(br_gap(g, Vector{0, 0, 1, 1}).gap, 1e-12);
  EXPECT_LE(br_gap(g, Vector{1, 1, 0, 0}).gap, 1e-12);
  const double t = 3.0 / 7.0;
  EXPECT_LE(br_gap(g, Vector{t, t, t, t}).gap, 1e-12);
  const BrGap off = br_gap(g, Vector{0, 0, 0, 1});
  EXPECT_GT(off.gap, 0.0);
  // Players 0, 1 and 2 all want to move; compare with the definition.
  double expected = 0;
  std::size_t worst = 0;
  const Vector x{0, 0, 0, 1};
  const Vector u = utility_profile(g, x).u;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = externality(g, i, x);
    const double gain =
        response_payoff(g, i, best_response(g, i, x), d) - u[i];
    if (gain > expected) {
      expected = gain;
      worst = i;
    }
  }
  EXPECT_NEAR(off.gap, expected, 1e-14);
  EXPECT_EQ(off.worst, worst);
}

TEST(Game, BrGapIsNonNegative) {
  const Game g = log_game();
  for (int s = 0; s < 50; ++s)
    EXPECT_GE(br_gap(g, testing::random_profile(g, 17, s)).gap, 0.0);
}

}  // namespace
}  // namespace pgnet
