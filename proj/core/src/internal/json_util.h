// Copyright 2026 The collcert Authors
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

#ifndef COLLCERT_INTERNAL_JSON_UTIL_H_
#define COLLCERT_INTERNAL_JSON_UTIL_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "collcert/errors.h"
#include "json.hpp"

namespace collcert::internal {

using Json = nlohmann::json;

inline std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void WriteTextFile(const std::filesystem::path& path,
                          const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

// Parses `text`, converting nlohmann parse errors into InputError with a
// 1-based line number.
inline Json ParseJsonText(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw InputError(origin + ":" + std::to_string(line) +
                     ": JSON parse error: " + e.what());
  }
}

// Typed field access that reports the offending field on failure.
template <typename T>
T GetField(const Json& obj, const char* key, const std::string& origin) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(origin + ": missing field \"" + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(origin + ": field \"" + key + "\" has the wrong type");
  }
}

template <typename T>
T GetFieldOr(const Json& obj, const char* key, T fallback,
             const std::string& origin) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  return GetField<T>(obj, key, origin);
}

}  // namespace collcert::internal

#endif  // COLLCERT_INTERNAL_JSON_UTIL_H_
