#include "kpalg/report.hpp"

namespace kpalg {

Report::Report(std::string command, std::string source) : command_(std::move(command)), source_(std::move(source)) {}

void Report::check(const std::string& name, bool ok, const std::string& detail) {
    items_.push_back({true, name, detail, ok});
    ok_ = ok_ && ok;
}

void Report::value(const std::string& key, const std::string& text) { items_.push_back({false, key, text, true}); }

const std::string* Report::find(const std::string& key) const {
    for (const auto& it : items_)
        if (!it.is_check && it.key == key) return &it.text;
    return nullptr;
}

const bool* Report::find_check(const std::string& name) const {
    for (const auto& it : items_)
        if (it.is_check && it.key == name) return &it.ok;
    return nullptr;
}

std::string Report::text() const {
    std::string out;
    for (const auto& it : items_) {
        if (it.is_check) {
            out += it.key + ": " + (it.ok ? "PASS" : "FAIL");
            if (!it.text.empty()) out += "  " + it.text;
        } else {
            out += it.key + " = " + it.text;
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json Report::json() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["config"] = source_;
    j["status"] = ok_ ? "PASS" : "FAIL";
    j["checks"] = nlohmann::ordered_json::array();
    j["values"] = nlohmann::ordered_json::object();
    for (const auto& it : items_) {
        if (it.is_check) {
            nlohmann::ordered_json c;
            c["name"] = it.key;
            c["status"] = it.ok ? "PASS" : "FAIL";
            if (!it.text.empty()) c["detail"] = it.text;
            j["checks"].push_back(std::move(c));
        } else {
            j["values"][it.key] = it.text;
        }
    }
    return j;
}

}  // namespace kpalg
