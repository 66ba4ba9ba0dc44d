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

#ifndef PGNET_FUNCTIONS_H_
#define PGNET_FUNCTIONS_H_

#include <memory>
#include <optional>
#include <string_view>
#include <variant>

namespace pgnet {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Derivatives {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Concave families model values f_i, convex families model costs c_i.
enum class Curvature { kConcave, kConvex };

enum class Family {
  kQuadraticClippedValue,
  kQuadraticCost,
  kLinearCost,
  kLogValue,
  kExpValue,
  kAffineReparam,
  kRegularized,
};

std::string_view family_tag(Family family);

// Interval constants of a spec. `modulus` is the strong concavity (values)
// or strong convexity (costs) constant; the Lipschitz constants are for the
// first and second derivatives and may be +inf when the derivative jumps.
struct SmoothnessReport {
  Interval interval;
  double modulus = 0.0;
  double lipschitz_d1 = 0.0;
  double lipschitz_d2 = 0.0;
  bool strictly_increasing = false;
};

class ScalarFunctionSpec;

namespace family {

// f(k) = a k - b k^2 for k <= a/(2b), a^2/(4b) beyond.
struct QuadraticClippedValue {
  double a;
  double b;
};
// c(x) = (c0/2) x^2 on [0, inf).
struct QuadraticCost {
  double c0;
};
// c(x) = c1 x.
struct LinearCost {
  double c1;
};
// f(k) = a ln(s + k) on (-s, inf).
struct LogValue {
  double a;
  double s;
};
// f(k) = a (1 - exp(-k/s)); curvature vanishes as k grows.
struct ExpValue {
  double a;
  double s;
};
// g(y) = inner((y - shift) / scale).
struct AffineReparam {
  std::shared_ptr<const ScalarFunctionSpec> inner;
  double scale;
  double shift;
};
// g(x) = inner(x) + beta x^2, a convex inner only.
struct Regularized {
  std::shared_ptr<const ScalarFunctionSpec> inner;
  double beta;
};

}  // namespace family

// Immutable closed-form scalar function with exact derivative oracles.
// Copies share composite children, so specs are cheap to pass by value.
class ScalarFunctionSpec {
 public:
  using Params =
      std::variant<family::QuadraticClippedValue, family::QuadraticCost,
                   family::LinearCost, family::LogValue, family::ExpValue,
                   family::AffineReparam, family::Regularized>;

  static ScalarFunctionSpec QuadraticClippedValue(double a, double b);
  static ScalarFunctionSpec QuadraticCost(double c0);
  static ScalarFunctionSpec LinearCost(double c1);
  static ScalarFunctionSpec LogValue(double a, double s);
  static ScalarFunctionSpec ExpValue(double a, double s);
  // Nested reparameterisations collapse into one; the identity map returns
  // `inner` itself.
  static ScalarFunctionSpec AffineReparam(const ScalarFunctionSpec& inner,
                                          double scale, double shift);
  static ScalarFunctionSpec Regularized(const ScalarFunctionSpec& inner,
                                        double beta);

  Family family() const;
  Curvature curvature() const;
  const Params& params() const { return params_; }

  // Domain as a closed hull; LogValue excludes its lower end.
  Interval domain() const;
  bool in_domain(double x) const;

  // Throws DomainError outside the domain. At the QuadraticClippedValue kink
  // the derivatives are those of the quadratic branch.
  Derivatives eval(double x) const;
  // Same as eval, but points within `tol` of the domain are clamped onto it.
  Derivatives eval_clamped(double x, double tol = 1e-9) const;

  SmoothnessReport smoothness(Interval interval) const;

  // Point where the second derivative jumps, if any.
  std::optional<double> kink() const;
  // Smallest point beyond which the first derivative is identically zero
  // (+inf when there is none).
  double saturation_point() const;
  // Second derivative is piecewise constant with breaks only at kink().
  bool piecewise_quadratic() const;

  friend bool operator==(const ScalarFunctionSpec& a,
                         const ScalarFunctionSpec& b);

 private:
  explicit ScalarFunctionSpec(Params p) : params_(std::move(p)) {}
  Params params_;
};

// Free-function forms of the member operations.
inline Derivatives eval(const ScalarFunctionSpec& spec, double x) {
  return spec.eval(x);
}
inline SmoothnessReport smoothness(const ScalarFunctionSpec& spec,
                                   Interval interval) {
  return spec.smoothness(interval);
}

// Lipschitz constant of h(k) = gamma f_i'(k) - f'(k) on `interval`. Exact for
// piecewise-quadratic pairs; otherwise the largest secant slope on a uniform
// 10^4-step grid, inflated by 5%.
double closeness_sigma(const ScalarFunctionSpec& f_i,
                       const ScalarFunctionSpec& f, double gamma,
                       Interval interval);

inline constexpr int kClosenessGridSteps = 10000;
inline constexpr double kClosenessInflation = 1.05;

}  // namespace pgnet

#endif  // PGNET_FUNCTIONS_H_
