#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace kpalg {

/// Ordered command output: status lines and named values. The text and JSON
/// renderings carry the same strings.
class Report {
public:
    explicit Report(std::string command, std::string source = {});

    void check(const std::string& name, bool ok, const std::string& detail = {});
    void value(const std::string& key, const std::string& text);

    const std::string& command() const noexcept { return command_; }
    bool ok() const noexcept { return ok_; }

    /// Text of a named value, or nullptr.
    const std::string* find(const std::string& key) const;
    /// Status of a named check, or nullptr.
    const bool* find_check(const std::string& name) const;

    std::string text() const;
    nlohmann::ordered_json json() const;

private:
    struct Item {
        bool is_check;
        std::string key;
        std::string text;
        bool ok;
    };

    std::string command_;
    std::string source_;
    std::vector<Item> items_;
    bool ok_ = true;
};

}  // namespace kpalg
