#pragma once

#include <map>
#include <string>
#include <string_view>

#include "crnepi/linalg.hpp"

namespace crnepi {

// `key = value` blocks, values are numbers or (nested) bracketed lists and may
// span lines; `#` starts a comment.
class KeyValueText {
public:
    explicit KeyValueText(std::string_view text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double scalar(const std::string& key) const;
    double scalar(const std::string& key, double fallback) const;
    Vec vector(const std::string& key) const;
    Mat matrix(const std::string& key) const;
    // Throws SyntaxError on keys outside the allowed list.
    void restrict_keys(std::initializer_list<const char*> allowed) const;

private:
    struct Entry {
        std::string text;
        int line = 0;
    };
    const Entry& get(const std::string& key) const;
    std::map<std::string, Entry> values_;
};

std::string read_text_file(const std::string& path);

}  // namespace crnepi
