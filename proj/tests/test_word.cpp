#include "gt/word.hpp"

#include "doctest.h"

#include <random>

using namespace gt;

namespace {

Word random_word(std::mt19937_64& rng, const std::vector<Symbol>& alpha, int len) {
    std::vector<Letter> ls;
    std::uniform_int_distribution<size_t> pick(0, alpha.size() - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    for (int i = 0; i < len; ++i)
        ls.push_back({alpha[pick(rng)], sgn(rng) ? 1 : -1});
    return Word(std::move(ls));
}

} // namespace

TEST_CASE("free reduction") {
    CHECK(parse_word("a a^-1 b") == parse_word("b"));
    CHECK(parse_word("") == Word());
    CHECK(parse_word("1") == Word());
    CHECK(parse_word("a b b^-1 a") == parse_word("a a"));
    CHECK(parse_word("a b b^-1 a").str() == "a^2");
}

TEST_CASE("multiplication and inverse identities") {
    CHECK(multiply(parse_word("a"), parse_word("a^-1")).empty());
    CHECK(conjugate(parse_word("c"), parse_word("z")) == parse_word("z^-1 c z"));
    CHECK(commutator(parse_word("a"), parse_word("a")).empty());
    CHECK(parse_word("[a,b]") == parse_word("a^-1 b^-1 a b"));
    CHECK(parse_word("(a)^(b c)") == parse_word("c^-1 b^-1 a b c"));
    CHECK(parse_word("g^3") == parse_word("g g g"));
    CHECK(parse_word("g^-2") == parse_word("g^-1 g^-1"));
}

TEST_CASE("word properties on random samples") {
    std::mt19937_64 rng(12345);
    std::vector<Symbol> alpha{Symbol::intern("a"), Symbol::intern("b"), Symbol::intern("c")};
    for (int i = 0; i < 500; ++i) {
        Word w = random_word(rng, alpha, 1 + static_cast<int>(rng() % 12));
        Word v = random_word(rng, alpha, 1 + static_cast<int>(rng() % 12));
        CAPTURE(w.str());
        CHECK(w.inverse().inverse() == w);
        CHECK((w * v).inverse() == v.inverse() * w.inverse());
        CHECK((w * w.inverse()).empty());
        // round trip through the text syntax
        CHECK(parse_word(w.str()) == w);
    }
}

TEST_CASE("cyclic reduction satisfies its defining identity") {
    auto check_identity = [](const Word& w) {
        CyclicReduction cr = cyclic_reduce(w);
        CHECK(is_cyclically_reduced(cr.core));
        CHECK(cr.conjugator.inverse() * cr.core * cr.conjugator == w);
    };
    SUBCASE("examples") {
        CyclicReduction cr = cyclic_reduce(parse_word("b^-1 a b"));
        CHECK(cr.core == parse_word("a"));
        CHECK(cr.conjugator == parse_word("b"));
        cr = cyclic_reduce(parse_word("a b"));
        CHECK(cr.core == parse_word("a b"));
        CHECK(cr.conjugator.empty());
        check_identity(parse_word("b^-1 a^-1 b a b^-1 a b"));
    }
    SUBCASE("random") {
        std::mt19937_64 rng(99);
        std::vector<Symbol> alpha{Symbol::intern("a"), Symbol::intern("b")};
        for (int i = 0; i < 300; ++i)
            check_identity(random_word(rng, alpha, static_cast<int>(rng() % 14)));
    }
}

TEST_CASE("primitive roots") {
    CHECK(primitive_root(parse_word("a a a")).root == parse_word("a"));
    CHECK(primitive_root(parse_word("a a a")).exponent == 3);
    CHECK(primitive_root(parse_word("a b")).exponent == 1);
    Word w = parse_word("a b a^-1");
    Word p = w * w * w;
    CyclicReduction cr = cyclic_reduce(p);
    RootPower rp = primitive_root(cr.core);
    CHECK(cr.conjugator.inverse() * rp.root * cr.conjugator == w);
}

TEST_CASE("word syntax errors carry positions") {
    CHECK_THROWS_AS(parse_word("a^"), WordSyntaxError);
    CHECK_THROWS_AS(parse_word("[a b"), WordSyntaxError);
    CHECK_THROWS_AS(parse_word("a )"), WordSyntaxError);
}
