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

#ifndef PGNET_IO_H_
#define PGNET_IO_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "pgnet/casestudy.h"
#include "pgnet/certificates.h"
#include "pgnet/dynamics.h"
#include "pgnet/equilibrium.h"
#include "pgnet/equivalence.h"
#include "pgnet/functions.h"
#include "pgnet/game.h"
#include "pgnet/statics.h"

namespace pgnet {

using Json = nlohmann::json;

// Schema errors name the offending field, e.g. "players[2].cost.params.c0".
ScalarFunctionSpec spec_from_json(const Json& j, const std::string& path);
Json to_json(const ScalarFunctionSpec& spec);

// {"n", "W" (row-major, n*n), "lower", "upper",
//  "players": [{"value": spec, "cost": spec}, ...]}
Game game_from_json(const Json& j);
Json to_json(const Game& game);

Game load_game(const std::filesystem::path& path);
void save_game(const Game& game, const std::filesystem::path& path);

// {"d": [...], "b": [...]}, bound to `source`.
EquivalenceMap map_from_json(const Json& j, const Game& source);
Json to_json(const EquivalenceMap& map);

Vector vector_from_json(const Json& j, const std::string& path);
Matrix matrix_from_json(const Json& j, std::size_t n, const std::string& path);

Json to_json(const Matrix& m);
Json to_json(const SolveResult& r);
Json to_json(const NeCheck& c);
Json to_json(const RegularizedPath& p);
Json to_json(const ProbeResult& p);
Json to_json(const CertificateReport& r);
Json to_json(const StaticsResult& r);
Json to_json(const FdReport& r);
Json to_json(const RateFit& f);
Json to_json(const Case1Report& r);
Json to_json(const Case2Report& r);

// Sorted keys, two-space indent, shortest round-trip doubles, non-finite
// numbers as null, trailing newline.
std::string dump_canonical(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pgnet

#endif  // PGNET_IO_H_
