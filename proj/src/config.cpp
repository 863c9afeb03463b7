#include "kpalg/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "kpalg/error.hpp"

namespace kpalg {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool valid_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

class LineReader {
public:
    LineReader(std::string_view line, std::size_t lineno) : s_(line), line_(lineno) {}

    void skip_ws() {
        while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    std::size_t column() const { return pos_ + 1; }

    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_word_char(s_[pos_])) ++pos_;
        if (start == pos_) fail("expected a name or index");
        return std::string(s_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    /// Rest of the line, trimmed, with its starting column.
    ConfigText rest() {
        skip_ws();
        std::size_t end = s_.size();
        while (end > pos_ && is_space(s_[end - 1])) --end;
        ConfigText t{std::string(s_.substr(pos_, end - pos_)), line_, pos_ + 1};
        pos_ = s_.size();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1, line_); }
    [[noreturn]] void fail_at(std::size_t column, const std::string& msg) const {
        throw ParseError(msg, column, line_);
    }

private:
    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

std::vector<ConfigText> split_list(const ConfigText& value, const LineReader& r) {
    std::vector<ConfigText> out;
    std::size_t start = 0;
    const std::string& s = value.text;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] != ',') continue;
        std::size_t a = start, b = i;
        while (a < b && is_space(s[a])) ++a;
        while (b > a && is_space(s[b - 1])) --b;
        if (a == b) r.fail_at(value.column + start, "empty list item");
        out.push_back({s.substr(a, b - a), value.line, value.column + a});
        start = i + 1;
    }
    return out;
}

void set_generators(AlgebraConfig& cfg, std::vector<std::string> names,
                    const std::function<void(const std::string&)>& fail) {
    if (!cfg.generators.empty()) fail("duplicate key 'generators'");
    if (names.empty()) fail("at least one generator is required");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!valid_identifier(n)) fail("invalid generator name '" + n + "'");
        if (!seen.insert(n).second) fail("generator '" + n + "' declared twice");
    }
    cfg.generators = std::move(names);
}

void set_metric_keyword(AlgebraConfig& cfg, const std::string& word, const std::function<void(const std::string&)>& fail) {
    if (cfg.metric != MetricMode::none) fail("metric given twice");
    if (word == "euclidean")
        cfg.metric = MetricMode::euclidean;
    else if (word == "construct")
        cfg.metric = MetricMode::construct;
    else
        fail("metric must be 'euclidean', 'construct' or entries 'metric i j : value'");
}

void set_eta(AlgebraConfig& cfg, ConfigText value, const std::function<void(const std::string&)>& fail) {
    if (cfg.eta || cfg.eta_construct) fail("duplicate key 'eta'");
    if (value.text.empty()) fail("empty value for 'eta'");
    if (value.text == "construct")
        cfg.eta_construct = true;
    else
        cfg.eta = std::move(value);
}

void set_order(AlgebraConfig& cfg, std::string_view word, bool& seen, const std::function<void(const std::string&)>& fail) {
    if (seen) fail("duplicate key 'order'");
    auto k = parse_order_kind(word);
    if (!k) fail("unknown monomial order '" + std::string(word) + "' (use grevlex or lex)");
    cfg.order = *k;
    seen = true;
}

}  // namespace

AlgebraConfig parse_config(std::string_view text, std::string source) {
    AlgebraConfig cfg;
    cfg.source = std::move(source);
    bool order_seen = false, defer_seen = false;

    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        LineReader r(line, lineno);
        if (r.at_end()) continue;
        std::size_t key_col = r.column();
        std::string key = r.word();
        auto fail = [&](const std::string& msg) { r.fail_at(key_col, msg); };

        if ((key == "bracket" || key == "metric") && !r.peek(':')) {
            ConfigEntry e;
            e.row = r.word();
            e.col = r.word();
            r.expect(':');
            e.value = r.rest();
            if (e.value.text.empty()) r.fail("missing value");
            if (key == "bracket") {
                cfg.brackets.push_back(std::move(e));
            } else {
                if (cfg.metric != MetricMode::none && cfg.metric != MetricMode::entries)
                    fail("metric entries mixed with a metric keyword");
                cfg.metric = MetricMode::entries;
                cfg.metric_entries.push_back(std::move(e));
            }
            continue;
        }
        if (key == "levelset") {
            if (cfg.levelset) fail("duplicate key 'levelset'");
            std::size_t name_col = r.column();
            cfg.levelset_name = r.word();
            if (!valid_identifier(cfg.levelset_name)) r.fail_at(name_col, "invalid level-set name");
            r.expect('=');
            cfg.levelset = r.rest();
            if (cfg.levelset->text.empty()) r.fail("missing polynomial");
            continue;
        }

        r.expect(':');
        ConfigText value = r.rest();
        if (key == "generators") {
            std::vector<std::string> names;
            for (auto& item : split_list(value, r)) names.push_back(item.text);
            set_generators(cfg, std::move(names), fail);
        } else if (key == "relations") {
            for (auto& item : split_list(value, r)) cfg.relations.push_back(std::move(item));
        } else if (key == "denominators") {
            for (auto& item : split_list(value, r)) cfg.denominators.push_back(std::move(item));
        } else if (key == "order") {
            set_order(cfg, value.text, order_seen, fail);
        } else if (key == "metric") {
            set_metric_keyword(cfg, value.text, fail);
        } else if (key == "eta") {
            set_eta(cfg, std::move(value), fail);
        } else if (key == "defer-kp") {
            if (defer_seen) fail("duplicate key 'defer-kp'");
            defer_seen = true;
            if (value.text == "yes" || value.text == "true")
                cfg.defer_kp = true;
            else if (value.text != "no" && value.text != "false")
                r.fail_at(value.column, "defer-kp must be yes or no");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (cfg.generators.empty()) throw ParseError("missing 'generators'", 1, 1);
    return cfg;
}

AlgebraConfig parse_config_json(std::string_view text, std::string source) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 1 : e.byte);
    }
    if (!doc.is_object()) throw ParseError("JSON config must be an object", 1);

    AlgebraConfig cfg;
    cfg.source = std::move(source);
    bool order_seen = false;
    auto fail = [](const std::string& msg) { throw ParseError(msg, 1); };
    auto str = [&](const json& v, const std::string& what) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        fail(what + " must be a string");
        return {};
    };
    auto strings = [&](const json& v, const std::string& what) {
        std::vector<std::string> out;
        if (v.is_string()) {
            out.push_back(v.get<std::string>());
        } else if (v.is_array()) {
            for (const auto& x : v) out.push_back(str(x, what));
        } else {
            fail(what + " must be a string or a list of strings");
        }
        return out;
    };
    auto entries = [&](const json& v, const std::string& what) {
        std::vector<ConfigEntry> out;
        if (!v.is_array()) fail(what + " must be a list of [i, j, value]");
        for (const auto& t : v) {
            if (!t.is_array() || t.size() != 3) fail(what + " entries must be [i, j, value]");
            out.push_back({str(t[0], what), str(t[1], what), {str(t[2], what), 0, 1}});
        }
        return out;
    };

    for (const auto& [key, v] : doc.items()) {
        if (key == "generators") {
            set_generators(cfg, strings(v, key), fail);
        } else if (key == "relations") {
            for (auto& s : strings(v, key)) cfg.relations.push_back({s, 0, 1});
        } else if (key == "denominators") {
            for (auto& s : strings(v, key)) cfg.denominators.push_back({s, 0, 1});
        } else if (key == "order") {
            set_order(cfg, str(v, key), order_seen, fail);
        } else if (key == "brackets") {
            cfg.brackets = entries(v, key);
        } else if (key == "levelset") {
            cfg.levelset_name = "C";
            cfg.levelset = ConfigText{str(v, key), 0, 1};
        } else if (key == "metric") {
            if (v.is_string()) {
                set_metric_keyword(cfg, v.get<std::string>(), fail);
            } else {
                cfg.metric = MetricMode::entries;
                cfg.metric_entries = entries(v, key);
            }
        } else if (key == "eta") {
            set_eta(cfg, {str(v, key), 0, 1}, fail);
        } else if (key == "defer-kp") {
            if (!v.is_boolean()) fail("defer-kp must be a boolean");
            cfg.defer_kp = v.get<bool>();
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (cfg.generators.empty()) fail("missing 'generators'");
    return cfg;
}

AlgebraConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    bool json = (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) ||
                (first != std::string::npos && text[first] == '{');
    return json ? parse_config_json(text, path) : parse_config(text, path);
}

}  // namespace kpalg
