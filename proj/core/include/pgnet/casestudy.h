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

#ifndef PGNET_CASESTUDY_H_
#define PGNET_CASESTUDY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pgnet/certificates.h"
#include "pgnet/equilibrium.h"
#include "pgnet/equivalence.h"
#include "pgnet/game.h"

namespace pgnet {

// Values a k - b k^2 clipped at a/(2b), costs (c0/2) x^2, shared by all.
Game clipped_quadratic_game(Matrix w, Vector lower, Vector upper, double a,
                            double b, double c0);

// Off-diagonal w_ij drawn independently as Bernoulli(p0/n), unit diagonal.
Matrix random_er_network(std::size_t n, double p0, std::uint64_t seed);

// random_er_network with the clipped quadratic family on X_i = [0, a/(2b)+1].
Game random_er_game(std::size_t n, double p0, double a, double b, double c0,
                    std::uint64_t seed);

// sigma_ij = sum_{k != i} w_ki w_kj for a 0/1 network.
Matrix case1_sigma(const Matrix& w);

struct DeltaStats {
  // delta_i = 2 sum_{j != i} w_ji + sum_{j != i} sum_{k != i,j} w_ki w_kj
  Vector delta;
  // max_i delta_i, the row-sum norm of case1_sigma(w).
  double inf_norm_sigma = 0.0;
};

// Throws InvalidArgument on a non-binary or non-unit-diagonal network.
DeltaStats delta_row_stats(const Matrix& w);

struct Case1ClosedForm {
  double mean = 0.0;
  double variance = 0.0;
  // Variance polynomial with the coefficients as printed in the source
  // derivation; its p^3 and p^4 terms disagree with exact enumeration.
  double variance_printed = 0.0;
  double variance_bound = 0.0;  // 4 p0 + 5 p0^2 + 2 p0^3
  double bound = 0.0;           // 2 p0 + p0^2 + sqrt(n (8 p0 + 10 p0^2 + 4 p0^3))
};

Case1ClosedForm case1_closed_form(std::size_t n, double p0);

struct Case1Sample {
  std::uint64_t seed = 0;
  double inf_norm_sigma = 0.0;
  double sigma_max = 0.0;
  bool within_bound = false;
  bool certified = false;
};

struct Case1Report {
  std::size_t n = 0;
  double p0 = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double a = 0.0, b = 0.0, c0 = 0.0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  // Monte Carlo half-widths: 4 sqrt(Var / N) for the mean and
  // 4 sqrt((m4 - s^4) / N) for the variance, N = samples * n.
  double mean_tolerance = 0.0;
  double variance_tolerance = 0.0;
  Case1ClosedForm closed_form;
  double fraction_within_bound = 0.0;
  // sigma_max(Sigma) < c0 / (2b).
  double fraction_certified = 0.0;
  std::vector<Case1Sample> rows;
};

Case1Report monte_carlo_case1(std::size_t n, double p0, double a, double b,
                              double c0, std::size_t samples,
                              std::uint64_t seed);

struct Case2Report {
  std::size_t n = 0;
  double a = 0.0, b = 0.0, c0 = 0.0, density = 0.0;
  std::uint64_t seed = 0;
  Matrix w;
  double eps = 0.0;
  Vector d;
  CertificateReport certificate;
  Vector x_backward;      // backward induction on the original game
  Vector x_solver;        // solve_ne on the original game
  Vector x_transformed;   // solve_ne on the normalised game
  Vector x_mapped_back;   // x_transformed pulled back to the original game
  double transformed_gap = 0.0;
  double max_disagreement = 0.0;
  bool agree = false;
};

// Upper-triangular 0/1 network with density-many ones above the diagonal,
// X_i = [0, a/(2b)], normalised by d_i = eps^-(i+1), certified with W0 = I.
Case2Report case2_pipeline(std::size_t n, double a, double b, double c0,
                           double density, std::uint64_t seed);

}  // namespace pgnet

#endif  // PGNET_CASESTUDY_H_
