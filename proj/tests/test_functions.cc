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
#include <limits>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "pgnet/error.h"
#include "pgnet/functions.h"

namespace pgnet {
namespace {

using F = ScalarFunctionSpec;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Functions, ClippedQuadraticBranches) {
  const F f = F::QuadraticClippedValue(3, 1);
  Derivatives d = f.eval(1.0);
  EXPECT_DOUBLE_EQ(d.value, 2.0);
  EXPECT_DOUBLE_EQ(d.d1, 1.0);
  EXPECT_DOUBLE_EQ(d.d2, -2.0);
  d = f.eval(2.0);
  EXPECT_DOUBLE_EQ(d.value, 2.25);
  EXPECT_EQ(d.d1, 0.0);
  EXPECT_EQ(d.d2, 0.0);
  // The kink belongs to the quadratic branch.
  d = f.eval(1.5);
  EXPECT_DOUBLE_EQ(d.value, 2.25);
  EXPECT_EQ(d.d1, 0.0);
  EXPECT_EQ(d.d2, -2.0);
  EXPECT_EQ(f.kink(), 1.5);
  EXPECT_EQ(f.saturation_point(), 1.5);
  EXPECT_TRUE(f.piecewise_quadratic());
  EXPECT_EQ(f.curvature(), Curvature::kConcave);
}

TEST(Functions, CostsAndDomains) {
  const F c = F::QuadraticCost(2);
  EXPECT_DOUBLE_EQ(c.eval(3).value, 9.0);
  EXPECT_DOUBLE_EQ(c.eval(3).d1, 6.0);
  EXPECT_THROW(c.eval(-1.0), DomainError);
  EXPECT_EQ(c.eval_clamped(-1e-10).value, 0.0);
  EXPECT_THROW(c.eval_clamped(-1e-3), DomainError);
  const F lin = F::LinearCost(0.5);
  EXPECT_DOUBLE_EQ(lin.eval(-4).value, -2.0);
  EXPECT_EQ(lin.eval(7).d2, 0.0);

  const F log = F::LogValue(2, 1);
  EXPECT_FALSE(log.in_domain(-1.0));
  EXPECT_TRUE(log.in_domain(-0.999));
  EXPECT_THROW(log.eval(-1.0), DomainError);
  EXPECT_DOUBLE_EQ(log.eval(0).value, 0.0);
  EXPECT_DOUBLE_EQ(log.eval(1).d1, 1.0);
  EXPECT_DOUBLE_EQ(log.eval(1).d2, -0.5);
}

TEST(Functions, RejectsBadParameters) {
  EXPECT_THROW(F::QuadraticClippedValue(0, 1), InvalidArgument);
  EXPECT_THROW(F::QuadraticClippedValue(1, -1), InvalidArgument);
  EXPECT_THROW(F::QuadraticCost(0), InvalidArgument);
  EXPECT_THROW(F::LinearCost(std::nan("")), InvalidArgument);
  EXPECT_THROW(F::LogValue(1, 0), InvalidArgument);
  EXPECT_THROW(F::ExpValue(-1, 1), InvalidArgument);
  EXPECT_THROW(F::AffineReparam(F::LinearCost(1), 0, 0), InvalidArgument);
  EXPECT_THROW(F::Regularized(F::LogValue(1, 1), 0.1), InvalidArgument);
  EXPECT_THROW(F::Regularized(F::LinearCost(1), 0), InvalidArgument);
}

TEST(Functions, DerivativesMatchFiniteDifferences) {
  const std::vector<F> specs = {
      F::QuadraticClippedValue(3, 1), F::QuadraticCost(1.3), F::LinearCost(2),
      F::LogValue(2, 0.7), F::ExpValue(1.5, 2),
      F::AffineReparam(F::LogValue(1, 1), 2.5, -0.3),
      F::Regularized(F::LinearCost(1), 0.25)};
  const double h = 1e-5;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (int k = 0; k < 20; ++k) {
      const double x = testing::uniform(11, s, k, 0.05, 1.4);
      const Derivatives d = specs[s].eval(x);
      const double fd1 = (specs[s].eval(x + h).value - specs[s].eval(x - h).value) / (2 * h);
      const double fd2 = (specs[s].eval(x + h).d1 - specs[s].eval(x - h).d1) / (2 * h);
      EXPECT_NEAR(d.d1, fd1, 1e-6) << "spec " << s << " at " << x;
      EXPECT_NEAR(d.d2, fd2, 1e-6) << "spec " << s << " at " << x;
    }
  }
}

TEST(Functions, SmoothnessConstants) {
  const F f = F::QuadraticClippedValue(3, 1);
  SmoothnessReport r = f.smoothness({0, 1});
  EXPECT_EQ(r.modulus, 2.0);
  EXPECT_EQ(r.lipschitz_d1, 2.0);
  EXPECT_EQ(r.lipschitz_d2, 0.0);
  EXPECT_TRUE(r.strictly_increasing);
  r = f.smoothness({0, 2});
  EXPECT_EQ(r.modulus, 0.0);
  EXPECT_EQ(r.lipschitz_d2, kInf);
  EXPECT_FALSE(r.strictly_increasing);
  r = f.smoothness({2, 3});
  EXPECT_EQ(r.modulus, 0.0);
  EXPECT_EQ(r.lipschitz_d2, 0.0);
  EXPECT_FALSE(r.strictly_increasing);

  r = F::QuadraticCost(1.5).smoothness({0, 4});
  EXPECT_EQ(r.modulus, 1.5);
  EXPECT_EQ(r.lipschitz_d1, 1.5);
  EXPECT_TRUE(r.strictly_increasing);

  r = F::LogValue(2, 1).smoothness({0, 1});
  EXPECT_DOUBLE_EQ(r.modulus, 0.5);
  EXPECT_DOUBLE_EQ(r.lipschitz_d1, 2.0);
  EXPECT_DOUBLE_EQ(r.lipschitz_d2, 4.0);

  r = F::ExpValue(1, 1).smoothness({0, 2});
  EXPECT_DOUBLE_EQ(r.modulus, std::exp(-2.0));
  EXPECT_DOUBLE_EQ(r.lipschitz_d1, 1.0);

  r = F::Regularized(F::LinearCost(1), 0.5).smoothness({0, 1});
  EXPECT_DOUBLE_EQ(r.modulus, 1.0);

  EXPECT_THROW(F::LogValue(1, 1).smoothness({-2, 0}), DomainError);
  EXPECT_THROW(f.smoothness({1, 1}), InvalidArgument);
}

TEST(Functions, AffineReparamScalesConstants) {
  const F inner = F::QuadraticClippedValue(3, 1);
  const F g = F::AffineReparam(inner, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(g.eval(3.0).value, inner.eval(1.0).value);
  EXPECT_DOUBLE_EQ(g.eval(3.0).d1, inner.eval(1.0).d1 / 2.0);
  EXPECT_DOUBLE_EQ(g.eval(3.0).d2, inner.eval(1.0).d2 / 4.0);
  EXPECT_EQ(g.kink(), 4.0);
  EXPECT_EQ(g.saturation_point(), 4.0);
  const SmoothnessReport r = g.smoothness({1, 3});
  EXPECT_DOUBLE_EQ(r.modulus, 0.5);
  EXPECT_DOUBLE_EQ(r.lipschitz_d1, 0.5);

  const F log = F::AffineReparam(F::LogValue(1, 1), 2.0, 1.0);
  EXPECT_EQ(log.domain().lo, -1.0);
  EXPECT_FALSE(log.in_domain(-1.0));
}

TEST(Functions, AffineReparamCollapses) {
  const F inner = F::LogValue(1, 2);
  const F once = F::AffineReparam(F::AffineReparam(inner, 2, 1), 3, 4);
  EXPECT_EQ(once, F::AffineReparam(inner, 6, 7));
  EXPECT_EQ(F::AffineReparam(inner, 1, 0), inner);
  EXPECT_EQ(once.family(), Family::kAffineReparam);
  const auto& p = std::get<family::AffineReparam>(once.params());
  EXPECT_EQ(p.inner->family(), Family::kLogValue);
  for (double y : {0.5, 2.0, 9.0})
    EXPECT_NEAR(once.eval(y).value, inner.eval(((y - 4) / 3 - 1) / 2).value, 1e-14);
}

TEST(Functions, EqualityIsDeep) {
  EXPECT_EQ(F::QuadraticCost(1), F::QuadraticCost(1));
  EXPECT_NE(F::QuadraticCost(1), F::QuadraticCost(2));
  EXPECT_NE(F::QuadraticCost(1), F::LinearCost(1));
  EXPECT_EQ(F::Regularized(F::QuadraticCost(1), 0.1),
            F::Regularized(F::QuadraticCost(1), 0.1));
  EXPECT_NE(F::Regularized(F::QuadraticCost(1), 0.1),
            F::Regularized(F::QuadraticCost(2), 0.1));
}

TEST(Functions, ClosenessExactForPiecewiseQuadratics) {
  const F f = F::QuadraticClippedValue(3, 1);
  EXPECT_EQ(closeness_sigma(f, f, 1.0, {0, 3}), 0.0);
  const F g = F::QuadraticClippedValue(3, 2);  // kink at 0.75
  // On [0, 0.75): |(-2) - (-4)|; on (0.75, 1.5): |-2 - 0|; beyond: 0.
  EXPECT_DOUBLE_EQ(closeness_sigma(f, g, 1.0, {0, 3}), 2.0);
  EXPECT_DOUBLE_EQ(closeness_sigma(f, g, 2.0, {0, 0.5}), 0.0);
}

TEST(Functions, ClosenessGridBoundsSmoothPairs) {
  const F fi = F::LogValue(2, 1);
  const F f = F::LogValue(1, 1);
  // h = gamma fi' - f' = (2 gamma - 1)/(1 + k); |h'| is largest at k = 0.
  const double gamma = 1.5;
  const double exact = (2 * gamma - 1);
  const double got = closeness_sigma(fi, f, gamma, {0, 2});
  EXPECT_GE(got, exact);
  EXPECT_LE(got, 1.06 * exact);
  EXPECT_EQ(closeness_sigma(f, f, 1.0, {0, 2}), 0.0);
  EXPECT_THROW(closeness_sigma(fi, f, 1.0, {-2, 0}), DomainError);
}

}  // namespace
}  // namespace pgnet
