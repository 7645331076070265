#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ragleak::toml {

/// A deliberately small TOML subset, enough for experiment configs:
/// comments, [tables], [[arrays of tables]], bare/quoted keys, basic and
/// literal strings, integers, floats, booleans, and single-line arrays.
/// No dotted keys, no inline tables, no dates.
struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<std::string, std::int64_t, double, bool, Array> data;

    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
    bool is_float() const { return std::holds_alternative<double>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_array() const { return std::holds_alternative<Array>(data); }
};

using Table = std::map<std::string, Value>;

struct Document {
    Table root;
    std::map<std::string, Table> tables;
    std::map<std::string, std::vector<Table>> table_arrays;

    /// Keys in document order, for stable iteration over [[...]] groups.
    std::vector<std::string> table_array_order;
};

/// Throws ConfigError with the offending line number on any syntax error.
Document parse(const std::string& content, const std::string& context_name = "<string>");
Document parse_file(const std::string& path);

// Typed lookups; all throw ConfigError naming the key on a type mismatch.
std::optional<std::string> get_string(const Table& table, const std::string& key);
std::optional<std::int64_t> get_int(const Table& table, const std::string& key);
std::optional<double> get_float(const Table& table, const std::string& key);  // accepts integer values too
std::optional<bool> get_bool(const Table& table, const std::string& key);
std::optional<std::vector<std::string>> get_string_array(const Table& table, const std::string& key);

}  // namespace ragleak::toml
