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

#ifndef PGNET_CERTIFICATES_H_
#define PGNET_CERTIFICATES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgnet/equivalence.h"
#include "pgnet/functions.h"
#include "pgnet/game.h"
#include "pgnet/linalg.h"

namespace pgnet {

enum class Theorem { kNearIndividual, kNearPotential, kNearSymmetric };

std::string_view theorem_tag(Theorem theorem);

struct CertificateReport {
  Theorem theorem = Theorem::kNearIndividual;
  Vector gamma;
  // Sigma or B; entries are non-negative.
  Matrix matrix;
  double sigma_max = 0.0;
  // Multiplies sigma_max in the inequality: L0 for near-individual, else 1.
  double scale = 1.0;
  // Left side of the inequality: c, c, or sigma_0.
  double threshold = 0.0;
  // threshold - scale * sigma_max.
  double margin = 0.0;
  bool pass = false;
  bool applicable = true;
  std::vector<std::string> notes;
  // Which game was certified: "identity" or a description of the map.
  std::string transform = "identity";
  std::optional<EquivalenceMap> map;
};

// Smallest strong-concavity modulus of y -> f(y + d) over y in X (the
// width of `x_box`) and d in `shifts`. Endpoints plus an interior grid.
double min_shifted_modulus(const ScalarFunctionSpec& f, Interval x_box,
                           Interval shifts);

// Factor multiplying |w_ij| in the near-symmetric Sigma for player i:
// 2 L_i / C_i, with L_i the Lipschitz constant of c_i' on X_i and C_i the
// concavity modulus of f_i on the gains below saturation. When saturation
// cuts the gain interval the factor is at least 1. Empty when C_i = 0.
std::optional<double> near_symmetric_ratio(const Game& game, std::size_t i);

CertificateReport cert_near_individual(const Game& game,
                                       std::span<const double> gamma);

CertificateReport cert_near_potential(const Game& game,
                                      const ScalarFunctionSpec& f_common,
                                      std::span<const double> gamma);

// Throws InvalidArgument unless W0 is symmetric with unit diagonal.
CertificateReport cert_near_symmetric(const Game& game, const Matrix& w0);

struct CertifyOptions {
  Vector gamma;                                  // empty means all ones
  std::optional<ScalarFunctionSpec> f_common;
  std::vector<Matrix> w0;                        // empty: I, and W if symmetric
  std::vector<EquivalenceMap> maps;
  // Also try upper_triangular_normalizer when W is upper-triangular.
  bool auto_normalize = true;
};

// Every applicable certificate on the game and on each transformed game.
std::vector<CertificateReport> certify_all(const Game& game,
                                           const CertifyOptions& options = {});

// Largest margin among certify_all; inapplicable reports lose to applicable.
CertificateReport certify_any(const Game& game,
                              const CertifyOptions& options = {});

}  // namespace pgnet

#endif  // PGNET_CERTIFICATES_H_
