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

#include "pgnet/functions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pgnet/error.h"

namespace pgnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKinkSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be a positive finite number, got " << v;
    throw InvalidArgument(os.str());
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string_view family_tag(Family f) {
  switch (f) {
    case Family::kQuadraticClippedValue: return "quadratic_clipped_value";
    case Family::kQuadraticCost: return "quadratic_cost";
    case Family::kLinearCost: return "linear_cost";
    case Family::kLogValue: return "log_value";
    case Family::kExpValue: return "exp_value";
    case Family::kAffineReparam: return "affine_reparam";
    case Family::kRegularized: return "regularized";
  }
  return "unknown";
}

ScalarFunctionSpec ScalarFunctionSpec::QuadraticClippedValue(double a,
                                                             double b) {
  require_positive(a, "quadratic_clipped_value.a");
  require_positive(b, "quadratic_clipped_value.b");
  return ScalarFunctionSpec(family::QuadraticClippedValue{a, b});
}

ScalarFunctionSpec ScalarFunctionSpec::QuadraticCost(double c0) {
  require_positive(c0, "quadratic_cost.c0");
  return ScalarFunctionSpec(family::QuadraticCost{c0});
}

ScalarFunctionSpec ScalarFunctionSpec::LinearCost(double c1) {
  require_positive(c1, "linear_cost.c1");
  return ScalarFunctionSpec(family::LinearCost{c1});
}

ScalarFunctionSpec ScalarFunctionSpec::LogValue(double a, double s) {
  require_positive(a, "log_value.a");
  require_positive(s, "log_value.s");
  return ScalarFunctionSpec(family::LogValue{a, s});
}

ScalarFunctionSpec ScalarFunctionSpec::ExpValue(double a, double s) {
  require_positive(a, "exp_value.a");
  require_positive(s, "exp_value.s");
  return ScalarFunctionSpec(family::ExpValue{a, s});
}

ScalarFunctionSpec ScalarFunctionSpec::AffineReparam(
    const ScalarFunctionSpec& inner, double scale, double shift) {
  require_positive(scale, "affine_reparam.scale");
  if (!std::isfinite(shift))
    throw InvalidArgument("affine_reparam.shift must be finite");
  if (const auto* nested = std::get_if<family::AffineReparam>(&inner.params_)) {
    // g(y) = h(((y - m2)/d2 - m1)/d1) = h((y - m2 - d2 m1) / (d1 d2))
    return AffineReparam(*nested->inner, nested->scale * scale,
                         shift + scale * nested->shift);
  }
  if (scale == 1.0 && shift == 0.0) return inner;
  return ScalarFunctionSpec(family::AffineReparam{
      std::make_shared<const ScalarFunctionSpec>(inner), scale, shift});
}

ScalarFunctionSpec ScalarFunctionSpec::Regularized(
    const ScalarFunctionSpec& inner, double beta) {
  require_positive(beta, "regularized.beta");
  if (inner.curvature() != Curvature::kConvex)
    throw InvalidArgument("regularized.inner must be a cost (convex) family");
  return ScalarFunctionSpec(family::Regularized{
      std::make_shared<const ScalarFunctionSpec>(inner), beta});
}

Family ScalarFunctionSpec::family() const {
  return std::visit(
      Overloaded{
          [](const family::QuadraticClippedValue&) {
            return Family::kQuadraticClippedValue;
          },
          [](const family::QuadraticCost&) { return Family::kQuadraticCost; },
          [](const family::LinearCost&) { return Family::kLinearCost; },
          [](const family::LogValue&) { return Family::kLogValue; },
          [](const family::ExpValue&) { return Family::kExpValue; },
          [](const family::AffineReparam&) { return Family::kAffineReparam; },
          [](const family::Regularized&) { return Family::kRegularized; },
      },
      params_);
}

Curvature ScalarFunctionSpec::curvature() const {
  return std::visit(
      Overloaded{
          [](const family::QuadraticClippedValue&) {
            return Curvature::kConcave;
          },
          [](const family::QuadraticCost&) { return Curvature::kConvex; },
          [](const family::LinearCost&) { return Curvature::kConvex; },
          [](const family::LogValue&) { return Curvature::kConcave; },
          [](const family::ExpValue&) { return Curvature::kConcave; },
          [](const family::AffineReparam& p) { return p.inner->curvature(); },
          [](const family::Regularized&) { return Curvature::kConvex; },
      },
      params_);
}

Interval ScalarFunctionSpec::domain() const {
  return std::visit(
      Overloaded{
          [](const family::QuadraticClippedValue&) {
            return Interval{-kInf, kInf};
          },
          [](const family::QuadraticCost&) { return Interval{0.0, kInf}; },
          [](const family::LinearCost&) { return Interval{-kInf, kInf}; },
          [](const family::LogValue& p) { return Interval{-p.s, kInf}; },
          [](const family::ExpValue&) { return Interval{-kInf, kInf}; },
          [](const family::AffineReparam& p) {
            const Interval in = p.inner->domain();
            return Interval{p.scale * in.lo + p.shift,
                            p.scale * in.hi + p.shift};
          },
          [](const family::Regularized& p) { return p.inner->domain(); },
      },
      params_);
}

bool ScalarFunctionSpec::in_domain(double x) const {
  if (!std::isfinite(x)) return false;
  return std::visit(
      Overloaded{
          [x](const family::LogValue& p) { return x > -p.s; },
          [x](const family::AffineReparam& p) {
            return p.inner->in_domain((x - p.shift) / p.scale);
          },
          [x](const family::Regularized& p) { return p.inner->in_domain(x); },
          [this, x](const auto&) { return domain().contains(x); },
      },
      params_);
}

Derivatives ScalarFunctionSpec::eval(double x) const {
  if (!in_domain(x)) {
    throw DomainError(std::string(family_tag(family())) + ": point " + fmt(x) +
                      " outside domain");
  }
  return std::visit(
      Overloaded{
          [x](const family::QuadraticClippedValue& p) {
            const double kink = p.a / (2.0 * p.b);
            if (x <= kink) {
              return Derivatives{p.a * x - p.b * x * x, p.a - 2.0 * p.b * x,
                                 -2.0 * p.b};
            }
            return Derivatives{p.a * p.a / (4.0 * p.b), 0.0, 0.0};
          },
          [x](const family::QuadraticCost& p) {
            return Derivatives{0.5 * p.c0 * x * x, p.c0 * x, p.c0};
          },
          [x](const family::LinearCost& p) {
            return Derivatives{p.c1 * x, p.c1, 0.0};
          },
          [x](const family::LogValue& p) {
            const double z = p.s + x;
            return Derivatives{p.a * std::log(z), p.a / z, -p.a / (z * z)};
          },
          [x](const family::ExpValue& p) {
            const double e = std::exp(-x / p.s);
            return Derivatives{p.a * (1.0 - e), p.a / p.s * e,
                               -p.a / (p.s * p.s) * e};
          },
          [x](const family::AffineReparam& p) {
            const Derivatives in = p.inner->eval((x - p.shift) / p.scale);
            return Derivatives{in.value, in.d1 / p.scale,
                               in.d2 / (p.scale * p.scale)};
          },
          [x](const family::Regularized& p) {
            const Derivatives in = p.inner->eval(x);
            return Derivatives{in.value + p.beta * x * x,
                               in.d1 + 2.0 * p.beta * x, in.d2 + 2.0 * p.beta};
          },
      },
      params_);
}

Derivatives ScalarFunctionSpec::eval_clamped(double x, double tol) const {
  if (in_domain(x)) return eval(x);
  const Interval d = domain();
  if (x < d.lo && d.lo - x <= tol && in_domain(d.lo)) return eval(d.lo);
  if (x > d.hi && x - d.hi <= tol && in_domain(d.hi)) return eval(d.hi);
  return eval(x);  // throws DomainError
}

std::optional<double> ScalarFunctionSpec::kink() const {
  return std::visit(
      Overloaded{
          [](const family::QuadraticClippedValue& p) -> std::optional<double> {
            return p.a / (2.0 * p.b);
          },
          [](const family::AffineReparam& p) -> std::optional<double> {
            if (auto k = p.inner->kink()) return p.scale * *k + p.shift;
            return std::nullopt;
          },
          [](const family::Regularized& p) -> std::optional<double> {
            return p.inner->kink();
          },
          [](const auto&) -> std::optional<double> { return std::nullopt; },
      },
      params_);
}

double ScalarFunctionSpec::saturation_point() const {
  return std::visit(
      Overloaded{
          [](const family::QuadraticClippedValue& p) {
            return p.a / (2.0 * p.b);
          },
          [](const family::AffineReparam& p) {
            const double s = p.inner->saturation_point();
            return std::isfinite(s) ? p.scale * s + p.shift : kInf;
          },
          [](const auto&) { return kInf; },
      },
      params_);
}

bool ScalarFunctionSpec::piecewise_quadratic() const {
  return std::visit(
      Overloaded{
          [](const family::QuadraticClippedValue&) { return true; },
          [](const family::QuadraticCost&) { return true; },
          [](const family::LinearCost&) { return true; },
          [](const family::AffineReparam& p) {
            return p.inner->piecewise_quadratic();
          },
          [](const family::Regularized& p) {
            return p.inner->piecewise_quadratic();
          },
          [](const auto&) { return false; },
      },
      params_);
}

SmoothnessReport ScalarFunctionSpec::smoothness(Interval iv) const {
  if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw InvalidArgument("smoothness: interval [" + fmt(iv.lo) + ", " +
                          fmt(iv.hi) + "] is empty or unbounded");
  }
  if (!in_domain(iv.lo) || !in_domain(iv.hi)) {
    throw DomainError(std::string(family_tag(family())) + ": interval [" +
                      fmt(iv.lo) + ", " + fmt(iv.hi) + "] leaves the domain");
  }
  SmoothnessReport r = std::visit(
      Overloaded{
          [iv](const family::QuadraticClippedValue& p) {
            // Intervals ending within a few ulps of the kink (typically
            // after an affine round trip) count as ending on it.
            const double kink = p.a / (2.0 * p.b);
            const double slack = kKinkSlack * std::max(1.0, std::abs(kink));
            SmoothnessReport s;
            s.modulus = iv.hi <= kink + slack ? 2.0 * p.b : 0.0;
            s.lipschitz_d1 = 2.0 * p.b;
            s.lipschitz_d2 =
                (iv.lo <= kink && kink + slack < iv.hi) ? kInf : 0.0;
            return s;
          },
          [](const family::QuadraticCost& p) {
            return SmoothnessReport{{}, p.c0, p.c0, 0.0, false};
          },
          [](const family::LinearCost&) {
            return SmoothnessReport{{}, 0.0, 0.0, 0.0, false};
          },
          [iv](const family::LogValue& p) {
            const double zlo = p.s + iv.lo;
            const double zhi = p.s + iv.hi;
            return SmoothnessReport{{},
                                    p.a / (zhi * zhi),
                                    p.a / (zlo * zlo),
                                    2.0 * p.a / (zlo * zlo * zlo),
                                    false};
          },
          [iv](const family::ExpValue& p) {
            const double s2 = p.s * p.s;
            return SmoothnessReport{{},
                                    p.a / s2 * std::exp(-iv.hi / p.s),
                                    p.a / s2 * std::exp(-iv.lo / p.s),
                                    p.a / (s2 * p.s) * std::exp(-iv.lo / p.s),
                                    false};
          },
          [iv](const family::AffineReparam& p) {
            const Interval pre{(iv.lo - p.shift) / p.scale,
                               (iv.hi - p.shift) / p.scale};
            SmoothnessReport s = p.inner->smoothness(pre);
            const double d2 = p.scale * p.scale;
            s.modulus /= d2;
            s.lipschitz_d1 /= d2;
            s.lipschitz_d2 /= d2 * p.scale;
            return s;
          },
          [iv](const family::Regularized& p) {
            SmoothnessReport s = p.inner->smoothness(iv);
            s.modulus += 2.0 * p.beta;
            s.lipschitz_d1 += 2.0 * p.beta;
            return s;
          },
      },
      params_);
  r.interval = iv;
  // Monotone derivative: the worst end decides strict increase.
  if (curvature() == Curvature::kConvex) {
    const double d1 = eval(iv.lo).d1;
    r.strictly_increasing = d1 > 0.0 || (d1 >= 0.0 && r.modulus > 0.0);
  } else {
    const double d1 = eval(iv.hi).d1;
    r.strictly_increasing = d1 > 0.0 || (d1 >= 0.0 && r.modulus > 0.0);
  }
  return r;
}

bool operator==(const ScalarFunctionSpec& a, const ScalarFunctionSpec& b) {
  if (a.params_.index() != b.params_.index()) return false;
  return std::visit(
      Overloaded{
          [&](const family::QuadraticClippedValue& p) {
            const auto& q = std::get<family::QuadraticClippedValue>(b.params_);
            return p.a == q.a && p.b == q.b;
          },
          [&](const family::QuadraticCost& p) {
            return p.c0 == std::get<family::QuadraticCost>(b.params_).c0;
          },
          [&](const family::LinearCost& p) {
            return p.c1 == std::get<family::LinearCost>(b.params_).c1;
          },
          [&](const family::LogValue& p) {
            const auto& q = std::get<family::LogValue>(b.params_);
            return p.a == q.a && p.s == q.s;
          },
          [&](const family::ExpValue& p) {
            const auto& q = std::get<family::ExpValue>(b.params_);
            return p.a == q.a && p.s == q.s;
          },
          [&](const family::AffineReparam& p) {
            const auto& q = std::get<family::AffineReparam>(b.params_);
            return p.scale == q.scale && p.shift == q.shift &&
                   *p.inner == *q.inner;
          },
          [&](const family::Regularized& p) {
            const auto& q = std::get<family::Regularized>(b.params_);
            return p.beta == q.beta && *p.inner == *q.inner;
          },
      },
      a.params_);
}

double closeness_sigma(const ScalarFunctionSpec& f_i,
                       const ScalarFunctionSpec& f, double gamma,
                       Interval iv) {
  if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
    throw InvalidArgument("closeness_sigma: empty or unbounded interval");
  if (!f_i.in_domain(iv.lo) || !f_i.in_domain(iv.hi) || !f.in_domain(iv.lo) ||
      !f.in_domain(iv.hi)) {
    throw DomainError("closeness_sigma: interval [" + fmt(iv.lo) + ", " +
                      fmt(iv.hi) + "] not inside both domains");
  }

  if (f_i.piecewise_quadratic() && f.piecewise_quadratic()) {
    std::vector<double> cuts{iv.lo, iv.hi};
    for (const auto& k : {f_i.kink(), f.kink()})
      if (k && *k > iv.lo && *k < iv.hi) cuts.push_back(*k);
    std::sort(cuts.begin(), cuts.end());
    double sigma = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      if (cuts[p + 1] <= cuts[p]) continue;
      const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
      sigma = std::max(sigma, std::abs(gamma * f_i.eval(mid).d2 - f.eval(mid).d2));
    }
    return sigma;
  }

  const double step = iv.width() / kClosenessGridSteps;
  auto h = [&](double k) { return gamma * f_i.eval(k).d1 - f.eval(k).d1; };
  double prev = h(iv.lo);
  double slope = 0.0;
  for (int s = 1; s <= kClosenessGridSteps; ++s) {
    const double k = s == kClosenessGridSteps ? iv.hi : iv.lo + s * step;
    const double cur = h(k);
    slope = std::max(slope, std::abs(cur - prev) / step);
    prev = cur;
  }
  return kClosenessInflation * slope;
}

}  // namespace pgnet
