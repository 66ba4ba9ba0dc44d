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

#include "pgnet/casestudy.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pgnet/error.h"
#include "pgnet/rng.h"

namespace pgnet {
namespace {

constexpr std::uint64_t kSampleStream = 0x5a17;
constexpr std::uint64_t kEntryStream = 0;
constexpr std::uint64_t kTriangularStream = 1;

}  // namespace

Game clipped_quadratic_game(Matrix w, Vector lower, Vector upper, double a,
                            double b, double c0) {
  return Game::Homogeneous(std::move(w), std::move(lower), std::move(upper),
                           ScalarFunctionSpec::QuadraticClippedValue(a, b),
                           ScalarFunctionSpec::QuadraticCost(c0));
}

Matrix random_er_network(std::size_t n, double p0, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("n must be at least 1");
  const double p = p0 / static_cast<double>(n);
  if (!(p0 >= 0.0) || !(p <= 1.0))
    throw InvalidArgument("p0/n must be a probability");
  Matrix w = Matrix::Identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && counter_uniform(seed, kEntryStream, i * n + j) < p)
        w(i, j) = 1.0;
  return w;
}

Game random_er_game(std::size_t n, double p0, double a, double b, double c0,
                    std::uint64_t seed) {
  const double top = a / (2.0 * b) + 1.0;
  return clipped_quadratic_game(random_er_network(n, p0, seed), Vector(n, 0.0),
                                Vector(n, top), a, b, c0);
}

Matrix case1_sigma(const Matrix& w) {
  const std::size_t n = w.rows();
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || w(k, i) == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) s(i, j) += w(k, i) * w(k, j);
    }
  return s;
}

DeltaStats delta_row_stats(const Matrix& w) {
  const std::size_t n = w.rows();
  if (!w.square()) throw InvalidArgument("W: must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = w(i, j);
      if (i == j ? v != 1.0 : (v != 0.0 && v != 1.0)) {
        std::ostringstream os;
        os << "W[" << i << "][" << j << "]: expected a 0/1 network with unit "
           << "diagonal, got " << v;
        throw InvalidArgument(os.str());
      }
    }
  DeltaStats out{Vector(n, 0.0), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      d += 2.0 * w(j, i);
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) d += w(k, i) * w(k, j);
    }
    out.delta[i] = d;
    out.inf_norm_sigma = std::max(out.inf_norm_sigma, d);
  }
  return out;
}

Case1ClosedForm case1_closed_form(std::size_t n_in, double p0) {
  const double n = static_cast<double>(n_in);
  const double p = p0 / n;
  const double m = n - 2.0;
  Case1ClosedForm c;
  c.mean = 2.0 * (n - 1.0) * p + (n - 1.0) * (n - 2.0) * p * p;
  // delta_i is a sum of n-1 iid terms w_ki (2 + B_k), B_k ~ Bin(n-2, p).
  c.variance = (n - 1.0) * (4.0 * p + (5.0 * m - 4.0) * p * p +
                            (m * m - 5.0 * m) * std::pow(p, 3) -
                            m * m * std::pow(p, 4));
  c.variance_printed = 4.0 * (n - 1.0) * p +
                       (n - 1.0) * (5.0 * n - 14.0) * p * p +
                       (n - 1.0) * (n - 2.0) * (2.0 * n - 8.0) * std::pow(p, 3) +
                       (n - 1.0) * (n - 2.0) * (3.0 - 2.0 * n) * std::pow(p, 4);
  c.variance_bound = 4.0 * p0 + 5.0 * p0 * p0 + 2.0 * std::pow(p0, 3);
  c.bound = 2.0 * p0 + p0 * p0 +
            std::sqrt(n * (8.0 * p0 + 10.0 * p0 * p0 + 4.0 * std::pow(p0, 3)));
  return c;
}

Case1Report monte_carlo_case1(std::size_t n, double p0, double a, double b,
                              double c0, std::size_t samples,
                              std::uint64_t seed) {
  if (samples < 100) throw InvalidArgument("samples must be at least 100");
  Case1Report r;
  r.n = n;
  r.p0 = p0;
  r.samples = samples;
  r.seed = seed;
  r.a = a;
  r.b = b;
  r.c0 = c0;
  r.closed_form = case1_closed_form(n, p0);
  // Validates the parameters once.
  (void)random_er_game(n, p0, a, b, c0, seed);

  Vector all;
  all.reserve(samples * n);
  std::size_t within = 0, certified = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    Case1Sample row;
    row.seed = counter_bits(seed, kSampleStream, s);
    const Matrix w = random_er_network(n, p0, row.seed);
    const DeltaStats ds = delta_row_stats(w);
    all.insert(all.end(), ds.delta.begin(), ds.delta.end());
    row.inf_norm_sigma = ds.inf_norm_sigma;
    row.sigma_max = spectral_bounds(case1_sigma(w)).sigma_max;
    row.within_bound = row.inf_norm_sigma <= r.closed_form.bound;
    row.certified = row.sigma_max < c0 / (2.0 * b);
    within += row.within_bound;
    certified += row.certified;
    r.rows.push_back(row);
  }
  const double count = static_cast<double>(all.size());
  double mean = 0.0;
  for (double v : all) mean += v;
  mean /= count;
  double m2 = 0.0, m4 = 0.0;
  for (double v : all) {
    const double d = (v - mean) * (v - mean);
    m2 += d;
    m4 += d * d;
  }
  r.empirical_mean = mean;
  r.empirical_variance = m2 / (count - 1.0);
  m4 /= count;
  r.mean_tolerance = 4.0 * std::sqrt(r.closed_form.variance / count);
  r.variance_tolerance = 4.0 * std::sqrt(
      std::max(0.0, m4 - std::pow(m2 / count, 2)) / count);
  r.fraction_within_bound = static_cast<double>(within) / samples;
  r.fraction_certified = static_cast<double>(certified) / samples;
  return r;
}

Case2Report case2_pipeline(std::size_t n, double a, double b, double c0,
                           double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0))
    throw InvalidArgument("density must lie in [0, 1]");
  Case2Report r;
  r.n = n;
  r.a = a;
  r.b = b;
  r.c0 = c0;
  r.density = density;
  r.seed = seed;
  r.w = Matrix::Identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (counter_uniform(seed, kTriangularStream, i * n + j) < density)
        r.w(i, j) = 1.0;
  const Game g1 = clipped_quadratic_game(r.w, Vector(n, 0.0),
                                         Vector(n, a / (2.0 * b)), a, b, c0);

  r.eps = auto_normalizer_eps(g1);
  const EquivalenceMap map = upper_triangular_normalizer(g1, r.eps);
  r.d = map.d();
  const Game g2 = transform_game(g1, map);
  r.certificate = cert_near_symmetric(g2, Matrix::Identity(n));
  r.certificate.transform =
      "upper_triangular_normalizer(eps=" + std::to_string(r.eps) + ")";
  r.certificate.map = map;

  r.x_backward = backward_induction(g1);

  const SolveResult direct = solve_ne(g1);
  if (direct.status != SolveStatus::kConverged)
    throw ComputationError("case2: solver did not converge on the original "
                           "game");
  r.x_solver = direct.x_star;

  // Scaling gamma by d^2 makes the transformed iteration the image of the
  // original one, so the step size does not collapse with d.
  SolveOptions opt;
  opt.gamma.resize(n);
  for (std::size_t i = 0; i < n; ++i) opt.gamma[i] = r.d[i] * r.d[i];
  const SolveResult transformed = solve_ne(g2, opt);
  if (transformed.status != SolveStatus::kConverged)
    throw ComputationError("case2: solver did not converge on the normalised "
                           "game");
  r.x_transformed = transformed.x_star;
  r.transformed_gap = br_gap(g2, r.x_transformed).gap;
  r.x_mapped_back =
      map_profile(map, r.x_transformed, MapDirection::kInverse);

  r.max_disagreement = std::max(
      {distance_inf(r.x_backward, r.x_solver),
       distance_inf(r.x_backward, r.x_mapped_back),
       distance_inf(r.x_solver, r.x_mapped_back)});
  r.agree = r.max_disagreement <= 1e-6;
  return r;
}

}  // namespace pgnet
