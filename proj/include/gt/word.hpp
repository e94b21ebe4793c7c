#pragma once

#include "gt/symbols.hpp"

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gt {

struct Letter {
    Symbol symbol;
    int sign; // +1 or -1

    Letter inverse() const { return Letter{symbol, -sign}; }
    friend bool operator==(const Letter& a, const Letter& b) {
        return a.symbol == b.symbol && a.sign == b.sign;
    }
};

// Freely reduced word over interned symbols. The empty word is the identity.
// All constructors and operations reduce eagerly, so a Word is always reduced.
// Words are immutable values; everything here is pure.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);
    Word(std::initializer_list<Letter> letters);

    static Word letter(Symbol s, int sign = 1) { return Word({Letter{s, sign}}); }

    size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const { return letters_; }

    Word inverse() const;
    Word pow(int n) const;

    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word& a, const Word& b);
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    friend bool operator<(const Word& a, const Word& b); // shortlex

    size_t hash() const;
    std::string str() const;

  private:
    std::vector<Letter> letters_;
    void reduce_in_place();
};

inline Word reduce(const Word& w) { return w; } // words are kept reduced
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
Word conjugate(const Word& u, const Word& v);  // v^-1 u v
Word commutator(const Word& u, const Word& v); // u^-1 v^-1 u v

// core cyclically reduced with w = conjugator^-1 * core * conjugator.
struct CyclicReduction {
    Word core;
    Word conjugator;
};
CyclicReduction cyclic_reduce(const Word& w);

bool is_cyclically_reduced(const Word& w);

// All cyclic rotations of a cyclically reduced word.
std::vector<Word> cyclic_rotations(const Word& w);

// Largest n with w = r^n (w cyclically reduced); returns the primitive root r
// and the exponent n >= 1. The empty word has root "" and exponent 1.
struct RootPower {
    Word root;
    int exponent;
};
RootPower primitive_root(const Word& w);

// Word syntax: identifiers, "^-1" inverses, integer exponents "g^3",
// whitespace juxtaposition, "[u,v]" = u^-1 v^-1 u v, "(u)^(v)" = v^-1 u v,
// and "1" for the empty word.
struct WordSyntaxError : std::runtime_error {
    size_t line, column;
    WordSyntaxError(const std::string& msg, size_t line_, size_t col_)
        : std::runtime_error(msg), line(line_), column(col_) {}
};

Word parse_word(std::string_view text);
std::string print_word(const Word& w);

std::ostream& operator<<(std::ostream& os, const Word& w);

struct WordHash {
    size_t operator()(const Word& w) const { return w.hash(); }
};

} // namespace gt
