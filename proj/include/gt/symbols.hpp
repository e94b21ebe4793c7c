#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gt {

// Interned identifier. Ids are process-global and stable, so alphabets can
// grow (tower stable letters) without re-encoding existing words.
class Symbol {
  public:
    Symbol() : id_(0) {}
    explicit Symbol(uint32_t id) : id_(id) {}

    static Symbol intern(std::string_view name);
    static bool known(std::string_view name);

    const std::string& name() const;
    uint32_t id() const { return id_; }
    bool valid() const { return id_ != 0; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }
    friend bool operator<(Symbol a, Symbol b) { return a.id_ < b.id_; }

  private:
    uint32_t id_;
};

// Fresh symbol with the given stem, e.g. fresh("u") -> "u", "u_2", "u_3", ...
// skipping names that are already interned.
Symbol fresh_symbol(std::string_view stem);

bool is_identifier(std::string_view s);

} // namespace gt
