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

#include <gtest/gtest.h>

#include "fixtures.h"
#include "pgnet/error.h"
#include "pgnet/equilibrium.h"

namespace pgnet {
namespace {

using F = ScalarFunctionSpec;

double dist_inf(const Vector& a, const Vector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Game linear_cost_triple() {
  const Matrix w{{1, 0.4, 0.2}, {0.3, 1, 0.5}, {0.1, 0.6, 1}};
  return Game::Homogeneous(w, Vector(3, 0.0), Vector(3, 2.0),
                           F::QuadraticClippedValue(3, 1), F::LinearCost(1));
}

TEST(Equilibrium, SolvesSmallInteriorGames) {
  SolveResult r = solve_ne(testing::single_player_game());
  EXPECT_EQ(r.status, SolveStatus::kConverged);
  EXPECT_NEAR(r.x_star[0], 1.0, 1e-9);
  EXPECT_LE(r.final_gap, 1e-9);

  r = solve_ne(testing::symmetric_pair_game());
  EXPECT_EQ(r.status, SolveStatus::kConverged);
  EXPECT_NEAR(r.x_star[0], 0.75, 1e-9);
  EXPECT_NEAR(r.x_star[1], 0.75, 1e-9);
  EXPECT_EQ(status_tag(r.status), "converged");
}

TEST(Equilibrium, DefaultStepEps) {
  // |J| = 2b + c0 = 3 for the single player: 0.5 / 4, clipped to 0.1.
  EXPECT_DOUBLE_EQ(default_step_eps(testing::single_player_game(), Vector{1.0}), 0.1);
  const Game steep = clipped_quadratic_game(Matrix::Identity(1), {0.0}, {0.1},
                                            3.0, 10.0, 1.0);
  EXPECT_DOUBLE_EQ(default_step_eps(steep, Vector{1.0}), 0.5 / 22.0);
  // Two-sided game: row sums 3 * 2 + 1 = 7 in both norms.
  EXPECT_DOUBLE_EQ(default_step_eps(testing::two_sided_game(), Vector(4, 1.0)),
                   0.5 / 8.0);
}

TEST(Equilibrium, RecordsIteratesAndRespectsX0) {
  SolveOptions opt;
  opt.x0 = {0.0, 2.5};
  opt.record_iterates = true;
  const SolveResult r = solve_ne(testing::symmetric_pair_game(), opt);
  ASSERT_EQ(r.iterates.size(), r.iterations + 1);
  EXPECT_EQ(r.iterates.front(), opt.x0);
  EXPECT_EQ(r.iterates.back(), r.x_star);
}

TEST(Equilibrium, MaxIterIsReported) {
  SolveOptions opt;
  opt.max_iter = 3;
  const SolveResult r = solve_ne(testing::symmetric_pair_game(), opt);
  EXPECT_EQ(r.status, SolveStatus::kMaxIter);
  EXPECT_EQ(r.iterations, 3u);
}

TEST(Equilibrium, RejectsBadOptions) {
  const Game g = testing::single_player_game();
  SolveOptions opt;
  opt.x0 = {5.0};
  EXPECT_THROW(solve_ne(g, opt), InvalidArgument);
  opt = {};
  opt.gamma = {-1.0};
  EXPECT_THROW(solve_ne(g, opt), InvalidArgument);
  opt = {};
  opt.step_eps = 0.0;
  EXPECT_THROW(solve_ne(g, opt), InvalidArgument);
}

TEST(Equilibrium, VerifyNe) {
  const Game g = testing::two_sided_game();
  EXPECT_TRUE(verify_ne(g, Vector{0, 0, 1, 1}, 1e-8).is_ne);
  const NeCheck bad = verify_ne(g, Vector{0, 0, 0, 0}, 1e-8);
  EXPECT_FALSE(bad.is_ne);
  EXPECT_GT(bad.gap, 1e-8);
}

TEST(Equilibrium, RegularizeAddsQuadraticTerm) {
  const Game g = testing::two_sided_game();
  const Game r = regularize(g, 0.25);
  EXPECT_EQ(r.W(), g.W());
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.cost(i), F::Regularized(g.cost(i), 0.25));
    EXPECT_DOUBLE_EQ(r.cost(i).eval(0.6).value, g.cost(i).eval(0.6).value + 0.09);
  }
  EXPECT_THROW(regularize(g, 0.0), InvalidArgument);
}

TEST(Equilibrium, RegularizedPathReachesAnEquilibrium) {
  const Game g = linear_cost_triple();
  const Vector schedule{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const RegularizedPath path = solve_regularized(g, schedule);
  EXPECT_EQ(path.betas, schedule);
  EXPECT_EQ(path.stages.size(), schedule.size());
  EXPECT_TRUE(path.check.is_ne) << path.check.gap;
  EXPECT_THROW(solve_regularized(g, Vector{}), InvalidArgument);
  EXPECT_THROW(solve_regularized(g, Vector{1e-2, 1e-1}), InvalidArgument);
  EXPECT_THROW(solve_regularized(g, Vector{0.0}), InvalidArgument);
}

TEST(Equilibrium, GridOracleFindsAllThreeEquilibria) {
  const Game g = testing::two_sided_game();
  std::vector<Vector> found = grid_oracle(g, 15, 1e-8);
  ASSERT_EQ(found.size(), 3u);
  const double t = 3.0 / 7.0;
  const std::vector<Vector> expected{{0, 0, 1, 1}, {t, t, t, t}, {1, 1, 0, 0}};
  for (const Vector& e : expected) {
    const bool hit = std::any_of(found.begin(), found.end(),
                                 [&](const Vector& f) { return dist_inf(e, f) < 1e-12; });
    EXPECT_TRUE(hit);
  }
}

TEST(Equilibrium, GridOracleMatchesBruteForceOnSinglePlayer) {
  // X = [0, 2], m = 5: grid {0, .5, 1, 1.5, 2}; only x = 1 is an NE.
  const std::vector<Vector> found = grid_oracle(testing::single_player_game(), 5, 1e-12);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_DOUBLE_EQ(found[0][0], 1.0);
}

TEST(Equilibrium, GridOracleRejectsLargeInstances) {
  const Game g = testing::two_sided_game();
  EXPECT_THROW(grid_oracle(g, 1, 1e-8), InvalidArgument);
  EXPECT_THROW(grid_oracle(g, 200, 1e-8), InvalidArgument);
  EXPECT_THROW(grid_oracle(g, 5, 1e-8, 0), InvalidArgument);
}

TEST(Equilibrium, RandomStartsAreDeterministic) {
  const Game g = testing::two_sided_game();
  for (std::size_t s = 0; s < 20; ++s) {
    const Vector a = random_start(g, 42, s);
    EXPECT_EQ(a, random_start(g, 42, s));
    EXPECT_TRUE(feasible(g, a, 0.0));
  }
  EXPECT_NE(random_start(g, 42, 0), random_start(g, 43, 0));
}

TEST(Equilibrium, ProbeClustersStarts) {
  ProbeResult p = multi_start_probe(testing::symmetric_pair_game(), 10, 1);
  ASSERT_EQ(p.clusters.size(), 1u);
  EXPECT_EQ(p.counts[0], 10u);
  EXPECT_EQ(p.failed, 0u);

  p = multi_start_probe(testing::two_sided_game(), 50, 1);
  EXPECT_GE(p.clusters.size(), 2u);
  std::size_t total = p.failed;
  for (std::size_t c : p.counts) total += c;
  EXPECT_EQ(total, 50u);
  for (const SolveResult& r : p.clusters)
    EXPECT_TRUE(verify_ne(testing::two_sided_game(), r.x_star, 1e-8).is_ne);
}

TEST(Equilibrium, BackwardInductionOnTriangularGame) {
  const Vector x = backward_induction(testing::triangular_pair_game());
  EXPECT_NEAR(x[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(x[1], 1.0, 1e-12);
  EXPECT_LE(br_gap(testing::triangular_pair_game(), x).gap, 1e-14);
  const SolveResult r = solve_ne(testing::triangular_pair_game());
  EXPECT_LE(dist_inf(r.x_star, x), 1e-8);
  EXPECT_THROW(backward_induction(testing::two_sided_game()), InvalidArgument);
}

}  // namespace
}  // namespace pgnet
