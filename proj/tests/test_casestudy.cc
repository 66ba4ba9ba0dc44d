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

#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "pgnet/casestudy.h"
#include "pgnet/error.h"

namespace pgnet {
namespace {

// Exact mean and variance of delta_0 over every 0/1 network on n nodes.
std::pair<double, double> enumerate_delta_moments(std::size_t n, double p) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  double m1 = 0, m2 = 0;
  for (std::uint64_t mask = 0; mask < (1ull << cells.size()); ++mask) {
    Matrix w = Matrix::Identity(n);
    double prob = 1.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const bool on = (mask >> c) & 1u;
      w(cells[c].first, cells[c].second) = on ? 1.0 : 0.0;
      prob *= on ? p : 1.0 - p;
    }
    const double d = delta_row_stats(w).delta[0];
    m1 += prob * d;
    m2 += prob * d * d;
  }
  return {m1, m2 - m1 * m1};
}

TEST(CaseStudy, ErNetworkIsDeterministicAndBinary) {
  const Matrix a = random_er_network(30, 3.0, 5);
  EXPECT_EQ(a, random_er_network(30, 3.0, 5));
  EXPECT_NE(a, random_er_network(30, 3.0, 6));
  double ones = 0;
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) {
      if (i == j) {
        EXPECT_EQ(a(i, j), 1.0);
      } else {
        EXPECT_TRUE(a(i, j) == 0.0 || a(i, j) == 1.0);
        ones += a(i, j);
      }
    }
  // 870 Bernoulli(0.1) draws.
  EXPECT_NEAR(ones / 870.0, 0.1, 0.04);
  EXPECT_THROW(random_er_network(2, 3.0, 1), InvalidArgument);
}

TEST(CaseStudy, DeltaIsTheRowSumOfSigma) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix w = random_er_network(12, 3.0, seed);
    const Matrix s = case1_sigma(w);
    const DeltaStats st = delta_row_stats(w);
    double norm = 0;
    for (std::size_t i = 0; i < 12; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < 12; ++j) {
        double e = 0;
        for (std::size_t k = 0; k < 12; ++k)
          if (k != i) e += w(k, i) * w(k, j);
        EXPECT_EQ(s(i, j), e);
        row += e;
      }
      EXPECT_EQ(st.delta[i], row);
      norm = std::max(norm, row);
    }
    EXPECT_EQ(st.inf_norm_sigma, norm);
  }
  EXPECT_THROW(delta_row_stats(Matrix{{1, 0.5}, {0, 1}}), InvalidArgument);
  EXPECT_THROW(delta_row_stats(Matrix{{1, 0}, {0, 0}}), InvalidArgument);
}

TEST(CaseStudy, ClosedFormMatchesExactEnumeration) {
  for (std::size_t n : {3u, 4u}) {
    for (double p : {0.1, 0.3, 0.7}) {
      const auto [mean, var] = enumerate_delta_moments(n, p);
      const Case1ClosedForm c = case1_closed_form(n, p * n);
      EXPECT_NEAR(c.mean, mean, 1e-12);
      EXPECT_NEAR(c.variance, var, 1e-12);
    }
  }
  // The printed polynomial disagrees with enumeration.
  const auto [mean, var] = enumerate_delta_moments(4, 0.3);
  EXPECT_GT(std::abs(case1_closed_form(4, 1.2).variance_printed - var), 1e-3);
}

TEST(CaseStudy, ClosedFormConstants) {
  const Case1ClosedForm c = case1_closed_form(50, 1.0);
  EXPECT_NEAR(c.mean, 2.9008, 1e-12);
  EXPECT_DOUBLE_EQ(c.variance_bound, 11.0);
  EXPECT_NEAR(c.bound, 3.0 + std::sqrt(50.0 * 22.0), 1e-12);
  EXPECT_NEAR(c.bound, 36.166, 1e-3);
}

TEST(CaseStudy, MonteCarloIsReproducible) {
  const Case1Report a = monte_carlo_case1(20, 1.0, 3.0, 1.0, 1.0, 100, 9);
  const Case1Report b = monte_carlo_case1(20, 1.0, 3.0, 1.0, 1.0, 100, 9);
  ASSERT_EQ(a.rows.size(), 100u);
  EXPECT_EQ(a.empirical_mean, b.empirical_mean);
  EXPECT_EQ(a.empirical_variance, b.empirical_variance);
  EXPECT_NEAR(a.empirical_mean, a.closed_form.mean, a.mean_tolerance);
  EXPECT_NEAR(a.empirical_variance, a.closed_form.variance, a.variance_tolerance);
  for (const Case1Sample& s : a.rows) {
    EXPECT_GE(s.sigma_max, 0.0);
    EXPECT_LE(s.sigma_max, s.inf_norm_sigma + 1e-9);
    EXPECT_EQ(s.within_bound, s.inf_norm_sigma <= a.closed_form.bound);
  }
  EXPECT_THROW(monte_carlo_case1(20, 1.0, 3.0, 1.0, 1.0, 99, 9), InvalidArgument);
}

TEST(CaseStudy, Case2TwoPlayers) {
  const Case2Report r = case2_pipeline(2, 3.0, 1.0, 1.0, 1.0, 1);
  EXPECT_EQ(r.w, (Matrix{{1, 1}, {0, 1}}));
  EXPECT_DOUBLE_EQ(r.eps, 0.225);
  EXPECT_TRUE(r.certificate.pass);
  EXPECT_GT(r.certificate.margin, 0.0);
  EXPECT_NEAR(r.x_backward[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.x_backward[1], 1.0, 1e-12);
  EXPECT_TRUE(r.agree);
  EXPECT_LT(r.max_disagreement, 1e-6);
}

TEST(CaseStudy, Case2RejectsBadDensity) {
  EXPECT_THROW(case2_pipeline(3, 3.0, 1.0, 1.0, 1.5, 1), InvalidArgument);
}

}  // namespace
}  // namespace pgnet
