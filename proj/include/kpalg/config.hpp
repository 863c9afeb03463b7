#pragma once

// Algebra description files.
//
// Line-oriented text; '#' starts a comment. Keys:
//
//   generators: x, y, z
//   relations: <poly>[, <poly> ...]          (repeatable)
//   denominators: <poly>[, <poly> ...]       (repeatable)
//   order: grevlex | lex
//   bracket <i> <j> : <elem>                 (i, j: 1-based index or generator name)
//   levelset <name> = <poly>                 ({x^i,x^j} = eps^{ijk} d_k C, plus C as a relation)
//   metric: euclidean | construct
//   metric <i> <j> : <elem>                  (upper triangle; unlisted entries are 0)
//   eta: <elem> | construct
//   defer-kp: yes | no
//
// JSON input uses the same keys as an object: lists for generators,
// relations and denominators, "brackets" / "metric" as lists of
// [i, j, value] triples or the metric keyword, and "levelset" as a string.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpalg/poly.hpp"

namespace kpalg {

/// A value string with its source position (line 0 for JSON input).
struct ConfigText {
    std::string text;
    std::size_t line = 0;
    /// 1-based column where `text` starts.
    std::size_t column = 1;
};

struct ConfigEntry {
    std::string row;
    std::string col;
    ConfigText value;
};

enum class MetricMode { none, entries, euclidean, construct };

struct AlgebraConfig {
    std::vector<std::string> generators;
    std::vector<ConfigText> relations;
    std::vector<ConfigText> denominators;
    OrderKind order = OrderKind::grevlex;
    std::vector<ConfigEntry> brackets;
    std::optional<ConfigText> levelset;
    std::string levelset_name;
    MetricMode metric = MetricMode::none;
    std::vector<ConfigEntry> metric_entries;
    std::optional<ConfigText> eta;
    bool eta_construct = false;
    bool defer_kp = false;
    std::string source = "<string>";
};

AlgebraConfig parse_config(std::string_view text, std::string source = "<string>");
AlgebraConfig parse_config_json(std::string_view text, std::string source = "<string>");
/// Dispatches on a ".json" extension or a leading '{'.
AlgebraConfig load_config(const std::string& path);

}  // namespace kpalg
