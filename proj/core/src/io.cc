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

#include "pgnet/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pgnet/error.h"

namespace pgnet {
namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InvalidArgument(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    throw InvalidArgument(path + "." + key + ": missing field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InvalidArgument(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidArgument(path + ": must be finite");
  return v;
}

double param(const Json& params, const char* key, const std::string& path) {
  return number(field(params, key, path), path + "." + key);
}

// Factory errors carry the parameter name; prefix them with the path.
template <class F>
ScalarFunctionSpec build(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

}  // namespace

ScalarFunctionSpec spec_from_json(const Json& j, const std::string& path) {
  const Json& fam = field(j, "family", path);
  if (!fam.is_string())
    throw InvalidArgument(path + ".family: expected a string");
  const std::string tag = fam.get<std::string>();
  const std::string pp = path + ".params";
  const Json& p = field(j, "params", path);
  if (!p.is_object()) throw InvalidArgument(pp + ": expected an object");
  if (tag == "quadratic_clipped_value") {
    const double a = param(p, "a", pp), b = param(p, "b", pp);
    return build(path, [&] { return ScalarFunctionSpec::QuadraticClippedValue(a, b); });
  }
  if (tag == "quadratic_cost") {
    const double c0 = param(p, "c0", pp);
    return build(path, [&] { return ScalarFunctionSpec::QuadraticCost(c0); });
  }
  if (tag == "linear_cost") {
    const double c1 = param(p, "c1", pp);
    return build(path, [&] { return ScalarFunctionSpec::LinearCost(c1); });
  }
  if (tag == "log_value") {
    const double a = param(p, "a", pp), s = param(p, "s", pp);
    return build(path, [&] { return ScalarFunctionSpec::LogValue(a, s); });
  }
  if (tag == "exp_value") {
    const double a = param(p, "a", pp), s = param(p, "s", pp);
    return build(path, [&] { return ScalarFunctionSpec::ExpValue(a, s); });
  }
  if (tag == "affine_reparam") {
    const ScalarFunctionSpec inner =
        spec_from_json(field(p, "inner", pp), pp + ".inner");
    const double scale = param(p, "scale", pp), shift = param(p, "shift", pp);
    return build(path, [&] {
      return ScalarFunctionSpec::AffineReparam(inner, scale, shift);
    });
  }
  if (tag == "regularized") {
    const ScalarFunctionSpec inner =
        spec_from_json(field(p, "inner", pp), pp + ".inner");
    const double beta = param(p, "beta", pp);
    return build(path, [&] { return ScalarFunctionSpec::Regularized(inner, beta); });
  }
  throw InvalidArgument(path + ".family: unknown family \"" + tag + "\"");
}

Json to_json(const ScalarFunctionSpec& spec) {
  Json params = std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, family::QuadraticClippedValue>)
          return {{"a", p.a}, {"b", p.b}};
        else if constexpr (std::is_same_v<T, family::QuadraticCost>)
          return {{"c0", p.c0}};
        else if constexpr (std::is_same_v<T, family::LinearCost>)
          return {{"c1", p.c1}};
        else if constexpr (std::is_same_v<T, family::LogValue> ||
                           std::is_same_v<T, family::ExpValue>)
          return {{"a", p.a}, {"s", p.s}};
        else if constexpr (std::is_same_v<T, family::AffineReparam>)
          return {{"inner", to_json(*p.inner)},
                  {"scale", p.scale},
                  {"shift", p.shift}};
        else
          return {{"inner", to_json(*p.inner)}, {"beta", p.beta}};
      },
      spec.params());
  return {{"family", std::string(family_tag(spec.family()))},
          {"params", std::move(params)}};
}

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InvalidArgument(path + ": expected an array");
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Matrix matrix_from_json(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) throw InvalidArgument(path + ": expected an array");
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != n)
      throw InvalidArgument(path + ": expected " + std::to_string(n) + " rows");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string rp = path + "[" + std::to_string(i) + "]";
      const Vector row = vector_from_json(j[i], rp);
      if (row.size() != n)
        throw InvalidArgument(rp + ": expected " + std::to_string(n) + " entries");
      for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
    }
    return m;
  }
  const Vector flat = vector_from_json(j, path);
  if (flat.size() != n * n)
    throw InvalidArgument(path + ": expected " + std::to_string(n * n) +
                          " row-major entries, got " + std::to_string(flat.size()));
  return Matrix::FromRowMajor(n, n, flat);
}

Game game_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("game: expected an object");
  const Json& jn = field(j, "n", "game");
  if (!jn.is_number_unsigned() || jn.get<std::size_t>() == 0)
    throw InvalidArgument("n: expected a positive integer");
  const std::size_t n = jn.get<std::size_t>();
  Matrix w = matrix_from_json(field(j, "W", "game"), n, "W");
  Vector lower = vector_from_json(field(j, "lower", "game"), "lower");
  Vector upper = vector_from_json(field(j, "upper", "game"), "upper");
  if (lower.size() != n)
    throw InvalidArgument("lower: expected " + std::to_string(n) + " entries");
  if (upper.size() != n)
    throw InvalidArgument("upper: expected " + std::to_string(n) + " entries");
  const Json& players = field(j, "players", "game");
  if (!players.is_array() || players.size() != n)
    throw InvalidArgument("players: expected an array of " + std::to_string(n) +
                          " entries");
  std::vector<ScalarFunctionSpec> values, costs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = "players[" + std::to_string(i) + "]";
    values.push_back(spec_from_json(field(players[i], "value", p), p + ".value"));
    costs.push_back(spec_from_json(field(players[i], "cost", p), p + ".cost"));
  }
  return Game(std::move(w), std::move(lower), std::move(upper),
              std::move(values), std::move(costs));
}

Json to_json(const Game& game) {
  Json players = Json::array();
  for (std::size_t i = 0; i < game.n(); ++i)
    players.push_back({{"value", to_json(game.value(i))},
                       {"cost", to_json(game.cost(i))}});
  return {{"n", game.n()},
          {"W", game.W().data()},
          {"lower", game.lower()},
          {"upper", game.upper()},
          {"players", std::move(players)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

Game load_game(const std::filesystem::path& path) {
  return game_from_json(read_json_file(path));
}

void save_game(const Game& game, const std::filesystem::path& path) {
  write_text_file(path, dump_canonical(to_json(game)));
}

EquivalenceMap map_from_json(const Json& j, const Game& source) {
  Vector d = vector_from_json(field(j, "d", "map"), "d");
  Vector b = vector_from_json(field(j, "b", "map"), "b");
  return EquivalenceMap::Bind(source, std::move(d), std::move(b));
}

Json to_json(const EquivalenceMap& map) {
  return {{"d", map.d()}, {"b", map.b()}, {"m", map.m()}};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(Vector(r.begin(), r.end()));
  }
  return rows;
}

Json to_json(const SolveResult& r) {
  return {{"x_star", r.x_star},
          {"status", std::string(status_tag(r.status))},
          {"iterations", r.iterations},
          {"final_gap", r.final_gap},
          {"residual", r.residual},
          {"step_eps", r.step_eps}};
}

Json to_json(const NeCheck& c) {
  return {{"is_ne", c.is_ne}, {"gap", c.gap}, {"worst", c.worst}};
}

Json to_json(const RegularizedPath& p) {
  Json stages = Json::array();
  for (std::size_t s = 0; s < p.stages.size(); ++s) {
    Json st = to_json(p.stages[s]);
    st["beta"] = p.betas[s];
    stages.push_back(std::move(st));
  }
  return {{"x", p.x}, {"verify", to_json(p.check)}, {"stages", std::move(stages)}};
}

Json to_json(const ProbeResult& p) {
  Json clusters = Json::array();
  for (std::size_t c = 0; c < p.clusters.size(); ++c) {
    Json j = to_json(p.clusters[c]);
    j["count"] = p.counts[c];
    clusters.push_back(std::move(j));
  }
  return {{"clusters", std::move(clusters)}, {"failed", p.failed}};
}

Json to_json(const CertificateReport& r) {
  Json j = {{"theorem", std::string(theorem_tag(r.theorem))},
            {"gamma", r.gamma},
            {"matrix", to_json(r.matrix)},
            {"sigma_max", r.sigma_max},
            {"scale", r.scale},
            {"threshold", r.threshold},
            {"margin", r.margin},
            {"pass", r.pass},
            {"applicable", r.applicable},
            {"notes", r.notes},
            {"transform", r.transform}};
  if (r.map) j["map"] = to_json(*r.map);
  return j;
}

Json to_json(const StaticsResult& r) {
  return {{"du_dt", r.du_dt},
          {"dx_dt", r.dx_dt},
          {"condition_number", r.condition_number},
          {"lu_residual", r.lu_residual},
          {"boundary_margin", r.boundary_margin},
          {"warnings", r.warnings}};
}

Json to_json(const FdReport& r) {
  return {{"closed_form", to_json(r.closed_form)},
          {"du_fd", r.du_fd},
          {"dx_fd", r.dx_fd},
          {"du_rel_error", r.du_rel_error},
          {"dx_rel_error", r.dx_rel_error},
          {"max_rel_error", r.max_rel_error},
          {"displacement", r.displacement},
          {"jump", r.jump}};
}

Json to_json(const RateFit& f) {
  return {{"model", f.model == RateModel::kExponential ? "exponential"
                                                       : "inverse_linear"},
          {"rate", f.rate},
          {"r_squared", f.r_squared},
          {"exponential", {{"rate", f.exponential_rate}, {"r_squared", f.exponential_r2}}},
          {"inverse_linear",
           {{"rate", f.inverse_linear_rate}, {"r_squared", f.inverse_linear_r2}}}};
}

Json to_json(const Case1Report& r) {
  const Case1ClosedForm& c = r.closed_form;
  return {{"n", r.n},
          {"p0", r.p0},
          {"samples", r.samples},
          {"seed", r.seed},
          {"a", r.a},
          {"b", r.b},
          {"c0", r.c0},
          {"empirical", {{"mean", r.empirical_mean}, {"variance", r.empirical_variance}}},
          {"tolerance", {{"mean", r.mean_tolerance}, {"variance", r.variance_tolerance}}},
          {"closed_form",
           {{"mean", c.mean},
            {"variance", c.variance},
            {"variance_printed", c.variance_printed},
            {"variance_bound", c.variance_bound},
            {"bound", c.bound}}},
          {"fraction_within_bound", r.fraction_within_bound},
          {"fraction_certified", r.fraction_certified}};
}

Json to_json(const Case2Report& r) {
  return {{"n", r.n},
          {"a", r.a},
          {"b", r.b},
          {"c0", r.c0},
          {"density", r.density},
          {"seed", r.seed},
          {"W", to_json(r.w)},
          {"eps", r.eps},
          {"d", r.d},
          {"certificate", to_json(r.certificate)},
          {"x_backward", r.x_backward},
          {"x_solver", r.x_solver},
          {"x_transformed", r.x_transformed},
          {"x_mapped_back", r.x_mapped_back},
          {"transformed_gap", r.transformed_gap},
          {"max_disagreement", r.max_disagreement},
          {"agree", r.agree}};
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pgnet
