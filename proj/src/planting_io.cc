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

#include "plantedbins/planting_io.h"

#include <charconv>
#include <fstream>
#include <vector>

#include "plantedbins/error.h"

namespace plantedbins {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidPlanting, message);
}

Count ReadCount(const json& value, const std::string& what) {
  if (!value.is_number_integer()) Invalid(what + " must be an integer");
  const Count v = value.get<Count>();
  if (v < 0) Invalid(what + " must be non-negative");
  return v;
}

Count ParseCount(std::string_view text, const std::string& what) {
  Count value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    Invalid(what + " '" + std::string(text) + "' is not an integer");
  }
  if (value < 0) Invalid(what + " must be non-negative");
  return value;
}

Count RequireN(std::optional<Count> n, std::string_view generator) {
  if (!n.has_value()) {
    Invalid("generator '" + std::string(generator) + "' needs --n");
  }
  if (*n < 1) Invalid("n must be >= 1");
  return *n;
}

}  // namespace

Planting PlantingFromJson(const json& doc) {
  if (!doc.is_object()) Invalid("planting must be a JSON object");
  if (!doc.contains("n")) Invalid("planting needs an \"n\" field");
  const Count n = ReadCount(doc.at("n"), "n");
  if (n < 1) Invalid("n must be >= 1");

  const bool dense = doc.contains("a");
  const bool sparse = doc.contains("sparse");
  if (dense == sparse) {
    Invalid("planting needs exactly one of \"a\" or \"sparse\"");
  }

  std::vector<Count> a;
  if (dense) {
    const json& list = doc.at("a");
    if (!list.is_array()) Invalid("\"a\" must be an array");
    if (static_cast<Count>(list.size()) != n) {
      Invalid("\"a\" has " + std::to_string(list.size()) +
              " entries, expected n = " + std::to_string(n));
    }
    a.reserve(list.size());
    for (const json& v : list) a.push_back(ReadCount(v, "planting entry"));
  } else {
    const json& entries = doc.at("sparse");
    if (!entries.is_object()) Invalid("\"sparse\" must be an object");
    a.assign(static_cast<size_t>(n), 0);
    for (const auto& [key, value] : entries.items()) {
      const Count index = ParseCount(key, "sparse index");
      if (index >= n) {
        Invalid("sparse index " + key + " is out of range for n = " +
                std::to_string(n));
      }
      a[static_cast<size_t>(index)] = ReadCount(value, "planting entry");
    }
  }
  return Planting(std::move(a));
}

json PlantingToJson(const Planting& planting) {
  return json{{"n", planting.n()},
              {"a", std::vector<Count>(planting.a().begin(),
                                       planting.a().end())}};
}

Planting LoadPlantingFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open planting file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIoError,
                "planting file '" + path + "' is not valid JSON: " + e.what());
  }
  return PlantingFromJson(doc);
}

Planting ResolvePlantingSource(std::string_view source,
                               std::optional<Count> n) {
  constexpr std::string_view kFlat = "flat:";
  constexpr std::string_view kSingleBin = "singlebin:";
  constexpr std::string_view kFile = "file:";

  if (source.starts_with(kFlat)) {
    const Count bins = RequireN(n, "flat");
    const Count k = ParseCount(source.substr(kFlat.size()), "flat k");
    if (k % bins != 0) {
      Invalid("flat:" + std::to_string(k) + " needs n to divide k (n = " +
              std::to_string(bins) + ")");
    }
    return Planting(std::vector<Count>(static_cast<size_t>(bins), k / bins));
  }
  if (source.starts_with(kSingleBin)) {
    const Count bins = RequireN(n, "singlebin");
    std::vector<Count> a(static_cast<size_t>(bins), 0);
    a[0] = ParseCount(source.substr(kSingleBin.size()), "singlebin k");
    return Planting(std::move(a));
  }
  std::string_view path = source;
  if (source.starts_with(kFile)) path = source.substr(kFile.size());
  if (path.empty()) Invalid("empty planting source");
  Planting planting = LoadPlantingFile(std::string(path));
  if (n.has_value() && *n != planting.n()) {
    Invalid("planting file has n = " + std::to_string(planting.n()) +
            " but --n = " + std::to_string(*n));
  }
  return planting;
}

}  // namespace plantedbins
