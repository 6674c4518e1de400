/*
 * Copyright 2026 The ALTL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ALTL_SRC_JSON_UTIL_HPP_
#define ALTL_SRC_JSON_UTIL_HPP_

#include <initializer_list>
#include <string>
#include <string_view>

#include "altl/error.hpp"
#include "json.hpp"

namespace altl::detail {

using Json = nlohmann::json;

inline void require_object(const Json& j, std::string_view what,
                           std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(ErrorCode::kInvalidArgument, std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto name : allowed) known = known || key == name;
    if (!known) fail(ErrorCode::kInvalidArgument, "unknown key '" + key + "' in " + std::string(what));
  }
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const Json::exception&) {
    fail(ErrorCode::kInvalidArgument, std::string("bad value for '") + key + "'");
  }
}

}  // namespace altl::detail

#endif  // ALTL_SRC_JSON_UTIL_HPP_
