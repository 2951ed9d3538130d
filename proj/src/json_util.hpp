#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "osar/errors.hpp"

namespace osar::jsonu {

using nlohmann::json;

inline std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigPathError(path, "expected an object");
}

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigPathError(child(path, it.key()), "unknown field");
    }
}

inline const json& require(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigPathError(child(path, key), "missing required field");
    return *it;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigPathError(path, "expected a number");
    return j.get<double>();
}

inline long long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigPathError(path, "expected an integer");
    return j.get<long long>();
}

inline std::size_t count(const json& j, const std::string& path, long long min_value) {
    const long long v = integer(j, path);
    if (v < min_value) throw ConfigPathError(path, "must be >= " + std::to_string(min_value));
    return static_cast<std::size_t>(v);
}

inline std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigPathError(path, "expected a string");
    return j.get<std::string>();
}

inline bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigPathError(path, "expected a boolean");
    return j.get<bool>();
}

inline double positive(const json& j, const std::string& path) {
    const double v = number(j, path);
    if (!(v > 0.0)) throw ConfigPathError(path, "must be positive");
    return v;
}

}  // namespace osar::jsonu
