// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "splitedge/errors.hpp"

namespace splitedge::detail {

using nlohmann::json;

inline json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
}

inline json parse_json(std::istream& in, const std::string& origin) {
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + origin + "': " + e.what());
    }
}

inline const json& require(const json& j, const char* key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(context + ": missing field '" + key + "'");
    }
    return *it;
}

/// Numeric config fields may be bare numbers or annotated objects of the
/// form {"value": 144, "source": "datasheet"}; only the value is consumed.
inline double annotated_number(const json& j, const char* key, const std::string& context) {
    const json& field = require(j, key, context);
    const json& v = field.is_object() ? require(field, "value", context + "." + key) : field;
    if (!v.is_number()) {
        throw ParseError(context + ": field '" + key + "' is not numeric");
    }
    return v.get<double>();
}

inline double annotated_number_or(const json& j, const char* key, const std::string& context,
                                  double fallback) {
    if (!j.contains(key)) return fallback;
    return annotated_number(j, key, context);
}

}  // namespace splitedge::detail
