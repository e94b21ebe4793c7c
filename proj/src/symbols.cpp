#include "gt/symbols.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace gt {

namespace {

struct Table {
    std::mutex mu;
    std::vector<std::string> names{""}; // id 0 reserved
    std::unordered_map<std::string, uint32_t> ids;
};

Table& table() {
    static Table t;
    return t;
}

} // namespace

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0]))))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

Symbol Symbol::intern(std::string_view name) {
    if (!is_identifier(name))
        throw std::invalid_argument("not a valid identifier: '" + std::string(name) + "'");
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.ids.find(std::string(name));
    if (it != t.ids.end())
        return Symbol(it->second);
    uint32_t id = static_cast<uint32_t>(t.names.size());
    t.names.emplace_back(name);
    t.ids.emplace(std::string(name), id);
    return Symbol(id);
}

bool Symbol::known(std::string_view name) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.ids.count(std::string(name)) != 0;
}

const std::string& Symbol::name() const {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    if (id_ == 0 || id_ >= t.names.size())
        throw std::logic_error("invalid symbol id");
    return t.names[id_];
}

Symbol fresh_symbol(std::string_view stem) {
    std::string base(stem);
    if (!Symbol::known(base))
        return Symbol::intern(base);
    for (int i = 2;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!Symbol::known(cand))
            return Symbol::intern(cand);
    }
}

} // namespace gt
