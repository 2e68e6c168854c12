// Copyright 2026 The plantedbins Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Planting files and generator strings.
//
// File format (JSON, 0-based indices, omitted sparse indices are 0):
//
//   {"n": 4, "a": [2, 0, 1, 0]}
//   {"n": 4, "sparse": {"0": 2, "2": 1}}
//
// Generator strings:
//
//   flat:<k>        a_i = k/n; n must divide k
//   singlebin:<k>   a_0 = k, all other bins empty
//   file:<path>     a planting file; a bare path is accepted too

#ifndef PLANTEDBINS_PLANTING_IO_H_
#define PLANTEDBINS_PLANTING_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "plantedbins/core_model.h"

namespace plantedbins {

// Throws kInvalidPlanting on schema violations.
Planting PlantingFromJson(const nlohmann::json& doc);

nlohmann::json PlantingToJson(const Planting& planting);

// Throws kIoError if the file cannot be read or is not JSON.
Planting LoadPlantingFile(const std::string& path);

// `n` is required by the flat and singlebin generators. For files it is
// optional and, when given, must match the file.
Planting ResolvePlantingSource(std::string_view source,
                               std::optional<Count> n);

}  // namespace plantedbins

#endif  // PLANTEDBINS_PLANTING_IO_H_
