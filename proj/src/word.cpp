#include "gt/word.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace gt {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (const Letter& l : letters_) {
        if (!l.symbol.valid() || (l.sign != 1 && l.sign != -1))
            throw std::invalid_argument("malformed letter");
    }
    reduce_in_place();
}

Word::Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

void Word::reduce_in_place() {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const Letter& l : letters_) {
        if (!out.empty() && out.back().symbol == l.symbol && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(l);
    }
    letters_ = std::move(out);
}

Word Word::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.push_back(it->inverse());
    Word w;
    w.letters_ = std::move(out); // inverse of reduced is reduced
    return w;
}

Word Word::pow(int n) const {
    if (n == 0)
        return Word();
    Word base = n > 0 ? *this : inverse();
    Word acc;
    for (int i = 0; i < std::abs(n); ++i)
        acc = acc * base;
    return acc;
}

Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> out = a.letters_;
    size_t i = 0;
    while (!out.empty() && i < b.letters_.size() && out.back().symbol == b.letters_[i].symbol &&
           out.back().sign == -b.letters_[i].sign) {
        out.pop_back();
        ++i;
    }
    out.insert(out.end(), b.letters_.begin() + static_cast<ptrdiff_t>(i), b.letters_.end());
    Word w;
    w.letters_ = std::move(out);
    return w;
}

bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
}

bool operator<(const Word& a, const Word& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        const Letter &x = a[i], &y = b[i];
        if (x.symbol != y.symbol)
            return x.symbol < y.symbol;
        if (x.sign != y.sign)
            return x.sign > y.sign; // positive first
    }
    return false;
}

size_t Word::hash() const {
    size_t h = 1469598103934665603ull;
    for (const Letter& l : letters_) {
        h ^= (static_cast<size_t>(l.symbol.id()) << 1) ^ static_cast<size_t>(l.sign + 2);
        h *= 1099511628211ull;
    }
    return h;
}

Word multiply(const Word& u, const Word& v) { return u * v; }
Word invert(const Word& w) { return w.inverse(); }
Word conjugate(const Word& u, const Word& v) { return v.inverse() * u * v; }
Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

CyclicReduction cyclic_reduce(const Word& w) {
    size_t i = 0, j = w.size();
    while (j >= i + 2 && w[i] == w[j - 1].inverse()) {
        ++i;
        --j;
    }
    std::vector<Letter> core(w.letters().begin() + static_cast<ptrdiff_t>(i),
                             w.letters().begin() + static_cast<ptrdiff_t>(j));
    std::vector<Letter> conj(w.letters().begin() + static_cast<ptrdiff_t>(j), w.letters().end());
    return CyclicReduction{Word(std::move(core)), Word(std::move(conj))};
}

bool is_cyclically_reduced(const Word& w) {
    return w.size() < 2 || !(w[0] == w[w.size() - 1].inverse());
}

std::vector<Word> cyclic_rotations(const Word& w) {
    std::vector<Word> out;
    if (w.empty()) {
        out.push_back(w);
        return out;
    }
    for (size_t i = 0; i < w.size(); ++i) {
        std::vector<Letter> rot;
        rot.reserve(w.size());
        for (size_t k = 0; k < w.size(); ++k)
            rot.push_back(w[(i + k) % w.size()]);
        out.emplace_back(std::move(rot));
    }
    return out;
}

RootPower primitive_root(const Word& w) {
    if (w.empty())
        return {Word(), 1};
    size_t n = w.size();
    for (size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0)
            continue;
        bool periodic = true;
        for (size_t i = 0; periodic && i + p < n; ++i)
            if (!(w[i] == w[i + p]))
                periodic = false;
        if (periodic) {
            std::vector<Letter> root(w.letters().begin(), w.letters().begin() + static_cast<ptrdiff_t>(p));
            return {Word(std::move(root)), static_cast<int>(n / p)};
        }
    }
    return {w, 1};
}

namespace {

struct Lexer {
    std::string_view text;
    size_t pos = 0, line = 1, col = 1;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            advance();
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw WordSyntaxError(msg, line, col); }
};

Word parse_word_inner(Lexer& lx, char stop1, char stop2);

int parse_int(Lexer& lx) {
    int sign = 1;
    if (lx.peek() == '-') {
        sign = -1;
        lx.advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(lx.peek())))
        lx.fail("expected integer exponent");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
        v = v * 10 + (lx.peek() - '0');
        if (v > 1000000)
            lx.fail("exponent too large");
        lx.advance();
    }
    return sign * static_cast<int>(v);
}

Word parse_factor(Lexer& lx) {
    char c = lx.peek();
    if (c == '1') {
        lx.advance();
        return Word();
    }
    if (c == '(') {
        lx.advance();
        Word w = parse_word_inner(lx, ')', '\0');
        if (lx.peek() != ')')
            lx.fail("expected ')'");
        lx.advance();
        return w;
    }
    if (c == '[') {
        lx.advance();
        Word u = parse_word_inner(lx, ',', '\0');
        if (lx.peek() != ',')
            lx.fail("expected ',' in commutator");
        lx.advance();
        Word v = parse_word_inner(lx, ']', '\0');
        if (lx.peek() != ']')
            lx.fail("expected ']'");
        lx.advance();
        return commutator(u, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        size_t start = lx.pos;
        while (std::isalnum(static_cast<unsigned char>(lx.peek())) || lx.peek() == '_')
            lx.advance();
        std::string_view name = lx.text.substr(start, lx.pos - start);
        return Word::letter(Symbol::intern(name));
    }
    lx.fail(std::string("unexpected character '") + c + "'");
}

Word parse_term(Lexer& lx) {
    Word base = parse_factor(lx);
    while (lx.peek() == '^') {
        lx.advance();
        if (lx.peek() == '(') {
            lx.advance();
            Word by = parse_word_inner(lx, ')', '\0');
            if (lx.peek() != ')')
                lx.fail("expected ')'");
            lx.advance();
            base = conjugate(base, by);
        } else {
            base = base.pow(parse_int(lx));
        }
    }
    return base;
}

Word parse_word_inner(Lexer& lx, char stop1, char stop2) {
    Word acc;
    for (;;) {
        lx.skip_ws();
        char c = lx.peek();
        if (c == '\0' || c == stop1 || c == stop2)
            return acc;
        acc = acc * parse_term(lx);
    }
}

} // namespace

Word parse_word(std::string_view text) {
    Lexer lx{text};
    Word w = parse_word_inner(lx, '\0', '\0');
    lx.skip_ws();
    if (lx.pos != text.size())
        lx.fail("trailing input in word");
    return w;
}

std::string print_word(const Word& w) {
    if (w.empty())
        return "1";
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i])
            ++j;
        long exp = static_cast<long>(j - i) * w[i].sign;
        if (!first)
            os << ' ';
        first = false;
        os << w[i].symbol.name();
        if (exp != 1)
            os << '^' << exp;
        i = j;
    }
    return os.str();
}

std::string Word::str() const { return print_word(*this); }

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << print_word(w); }

} // namespace gt
