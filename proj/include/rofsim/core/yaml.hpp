/*
 * Copyright (c) 2026, rofsim authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <initializer_list>
#include <optional>
#include <string>

#include <yaml-cpp/yaml.h>

#include "rofsim/core/error.hpp"

namespace rofsim::yaml {

inline std::string where(const YAML::Node& n) {
    const auto m = n.Mark();
    return m.line >= 0 ? " (line " + std::to_string(m.line + 1) + ")" : "";
}

/// Rejects keys outside `allowed` so typos do not silently fall back to defaults.
inline void check_keys(const YAML::Node& n, std::initializer_list<const char*> allowed, const std::string& ctx) {
    if (!n) return;
    if (!n.IsMap()) throw ValidationError(ctx + ": expected a mapping" + where(n));
    for (const auto& kv : n) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ValidationError(ctx + ": unknown field '" + key + "'" + where(kv.first));
    }
}

template <typename T>
T as(const YAML::Node& v, const std::string& ctx) {
    try {
        return v.as<T>();
    } catch (const YAML::Exception&) {
        throw ValidationError(ctx + ": cannot read value '" + YAML::Dump(v) + "'" + where(v));
    }
}

template <typename T>
T get(const YAML::Node& n, const char* key, const T& fallback, const std::string& ctx) {
    const auto v = n[key];
    if (!v || v.IsNull()) return fallback;
    return as<T>(v, ctx + "." + key);
}

template <typename T>
T require(const YAML::Node& n, const char* key, const std::string& ctx) {
    const auto v = n[key];
    if (!v || v.IsNull()) throw ValidationError(ctx + ": missing field '" + key + "'" + where(n));
    return as<T>(v, ctx + "." + key);
}

template <typename T>
std::optional<T> optional(const YAML::Node& n, const char* key, const std::string& ctx) {
    const auto v = n[key];
    if (!v || v.IsNull()) return std::nullopt;
    return as<T>(v, ctx + "." + key);
}

/// Parses a whole file; syntax errors become ValidationError with the line number.
inline YAML::Node load_file(const std::string& path) {
    try {
        return YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw ValidationError("cannot open '" + path + "'");
    } catch (const YAML::ParserException& e) {
        throw ValidationError(path + ": parse error at line " + std::to_string(e.mark.line + 1) + ", column " +
                              std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
}

}  // namespace rofsim::yaml
