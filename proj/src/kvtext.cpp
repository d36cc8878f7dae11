#include "crnepi/kvtext.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crnepi/errors.hpp"

namespace crnepi {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

int depth_change(const std::string& s) {
    int d = 0;
    for (char c : s) d += (c == '[') - (c == ']');
    return d;
}

nlohmann::json parse_value(const std::string& text, int line) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        throw SyntaxError(line, 1, "malformed value '" + text + "'");
    }
}

}  // namespace

KeyValueText::KeyValueText(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    std::string key;
    Entry cur;
    int depth = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (depth > 0) {
            cur.text += ' ' + line;
            depth += depth_change(line);
        } else {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw SyntaxError(lineno, 1, "expected 'key = value'");
            key = trim(std::string_view(line).substr(0, eq));
            if (key.empty()) throw SyntaxError(lineno, 1, "missing key");
            if (values_.count(key)) throw SyntaxError(lineno, 1, "duplicate key '" + key + "'");
            cur = Entry{trim(std::string_view(line).substr(eq + 1)), lineno};
            if (cur.text.empty()) throw SyntaxError(lineno, static_cast<int>(eq) + 2, "missing value");
            depth = depth_change(cur.text);
        }
        if (depth < 0) throw SyntaxError(lineno, 1, "unbalanced ']'");
        if (depth == 0) values_[key] = cur;
    }
    if (depth != 0) throw SyntaxError(cur.line, 1, "unterminated '[' in value of '" + key + "'");
}

const KeyValueText::Entry& KeyValueText::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(ErrorCode::InputError, "missing key '" + key + "'");
    return it->second;
}

double KeyValueText::scalar(const std::string& key) const {
    const Entry& e = get(key);
    const auto j = parse_value(e.text, e.line);
    if (!j.is_number()) throw SyntaxError(e.line, 1, "'" + key + "' must be a number");
    return j.get<double>();
}

double KeyValueText::scalar(const std::string& key, double fallback) const {
    return has(key) ? scalar(key) : fallback;
}

Vec KeyValueText::vector(const std::string& key) const {
    const Entry& e = get(key);
    const auto j = parse_value(e.text, e.line);
    if (!j.is_array()) throw SyntaxError(e.line, 1, "'" + key + "' must be a list");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw SyntaxError(e.line, 1, "'" + key + "' must hold numbers");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

Mat KeyValueText::matrix(const std::string& key) const {
    const Entry& e = get(key);
    const auto j = parse_value(e.text, e.line);
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw SyntaxError(e.line, 1, "'" + key + "' must be a list of rows");
    const std::size_t cols = j[0].size();
    Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            fail(ErrorCode::DimensionMismatch, "ragged rows in '" + key + "'");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw SyntaxError(e.line, 1, "'" + key + "' must hold numbers");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
        }
    }
    return m;
}

void KeyValueText::restrict_keys(std::initializer_list<const char*> allowed) const {
    for (const auto& [k, e] : values_) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw SyntaxError(e.line, 1, "unknown key '" + k + "'");
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::InputError, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace crnepi
