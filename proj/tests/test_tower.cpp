#include "gt/tower.hpp"

#include "doctest.h"

#include <random>
#include <set>

using namespace gt;

namespace {

Tower height1() {
    auto f2 = Presentation::free_group({"a", "b"}, "F2");
    return Tower(f2, "H1").extend_centralizer(parse_word("a"), 1, {Symbol::intern("t")});
}

Word random_tower_word(std::mt19937_64& rng, const std::vector<Symbol>& alpha, int len) {
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i)
        ls.push_back({alpha[rng() % alpha.size()], rng() % 2 ? 1 : -1});
    return Word(std::move(ls));
}

// A pinch is a subword t v t^-1 (v free of t) with [v, u] trivial below.
bool pinch_free(const Tower& t, const Word& w) {
    for (size_t li = t.height(); li-- > 0;) {
        Symbol stable = t.levels()[li]->stable;
        Tower below = t.prefix(li);
        std::vector<std::pair<size_t, int>> occ;
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i].symbol == stable)
                occ.emplace_back(i, w[i].sign);
        for (size_t k = 0; k + 1 < occ.size(); ++k) {
            if (occ[k].second != -occ[k + 1].second)
                continue;
            std::vector<Letter> seg(w.letters().begin() + static_cast<ptrdiff_t>(occ[k].first + 1),
                                    w.letters().begin() + static_cast<ptrdiff_t>(occ[k + 1].first));
            Word v(std::move(seg));
            if (below.trivial(commutator(v, t.levels()[li]->witness)))
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("extend_centralizer and the parabolic registry") {
    auto f2 = Presentation::free_group({"a", "b"}, "F2");
    Tower t0(f2, "H");
    Tower t1 = t0.extend_centralizer(parse_word("a"), 1, {Symbol::intern("t")});
    REQUIRE(t1.height() == 1);
    CHECK(t1.levels()[0]->center_gens.size() == 1);
    CHECK(t1.levels()[0]->center_gens[0] == parse_word("a"));

    // rank 2 desugars into two levels; the second sees the first letter
    Tower t2 = t0.extend_centralizer(parse_word("a"), 2,
                                     {Symbol::intern("t1"), Symbol::intern("t2")});
    REQUIRE(t2.height() == 2);
    CHECK(t2.levels()[1]->center_gens.size() == 2);
    CHECK(t2.trivial(commutator(parse_word("t1"), parse_word("t2"))));

    // conjugate witness: centralizer generators via root extraction
    Tower t3 = t0.extend_centralizer(parse_word("a b a^-1"), 1, {Symbol::intern("t3")});
    CHECK(t3.levels()[0]->center_gens[0] == parse_word("a b a^-1"));

    CHECK_THROWS_AS(t0.extend_centralizer(parse_word("a a^-1"), 1), std::invalid_argument);

    // registry soundness: all generator pairs commute
    for (const Parabolic& p : t2.registry())
        for (size_t i = 0; i < p.gens.size(); ++i)
            for (size_t j = i + 1; j < p.gens.size(); ++j)
                CHECK(t2.trivial(commutator(p.gens[i], p.gens[j])));
}

TEST_CASE("britton_reduce pinches") {
    Tower t = height1();
    CHECK(t.britton_reduce(parse_word("t a t^-1")) == parse_word("a"));
    CHECK(t.britton_reduce(parse_word("t b t^-1")) == parse_word("t b t^-1"));
    CHECK(t.britton_reduce(parse_word("t a^2 t^-1 a^-2")).empty());
    CHECK(t.britton_reduce(parse_word("t^-1 a^5 t")) == parse_word("a^5"));
}

TEST_CASE("tower word problem") {
    Tower t = height1();
    CHECK(t.trivial(parse_word("[t, a]")));
    CHECK(!t.trivial(parse_word("[t, b]")));

    // Form IV tower of the free-product construction
    auto f2 = Presentation::free_group({"a", "b"}, "F2");
    Tower h(f2, "H");
    h = h.extend_centralizer(parse_word("a"), 1, {Symbol::intern("tt")});
    h = h.extend_centralizer(parse_word("b"), 1, {Symbol::intern("ss")});
    h = h.extend_centralizer(parse_word("a ss tt"), 1, {Symbol::intern("rr")});
    CHECK(h.trivial(parse_word("[rr, a ss tt]")));
    CHECK(!h.trivial(parse_word("[rr, a]")));
    CHECK(!h.trivial(parse_word("[tt, ss]")));
}

TEST_CASE("britton invariants on random words") {
    Tower t = height1();
    auto f2 = Presentation::free_group({"a", "b"}, "F2");
    Tower h3 = Tower(f2, "H3")
                   .extend_centralizer(parse_word("a"), 1, {Symbol::intern("p")})
                   .extend_centralizer(parse_word("b"), 1, {Symbol::intern("q")});
    h3 = h3.extend_centralizer(parse_word("a q p"), 1, {Symbol::intern("r2")});

    std::mt19937_64 rng(5150);
    for (const Tower& tw : {t, h3}) {
        std::vector<Symbol> alpha = tw.alphabet();
        for (int i = 0; i < 1000; ++i) {
            Word w = random_tower_word(rng, alpha, static_cast<int>(rng() % 16));
            CHECK(tw.britton_reduce(w * w.inverse()).empty());
        }
        for (int i = 0; i < 100; ++i) {
            Word w = random_tower_word(rng, alpha, static_cast<int>(rng() % 12));
            Word r = tw.britton_reduce(w);
            CHECK(pinch_free(tw, r));
            if (tw.trivial(w)) {
                // cross-oracle: trivial words have zero abelianization residue
                std::vector<long> res = tw.abelian_residue(w);
                bool zero = std::all_of(res.begin(), res.end(), [](long x) { return x == 0; });
                CHECK(zero);
            }
        }
    }
}

TEST_CASE("tower centralizer") {
    Tower t = height1();
    auto ca = t.centralizer(parse_word("a"), 4);
    REQUIRE(ca.gens.size() == 2); // {a, t}: the registry parabolic
    std::set<std::string> names{ca.gens[0].str(), ca.gens[1].str()};
    CHECK(names.count("a"));
    CHECK(names.count("t"));

    auto cb = t.centralizer(parse_word("b"), 4);
    REQUIRE(cb.gens.size() == 1);
    CHECK(cb.gens[0] == parse_word("b"));

    auto ct = t.centralizer(parse_word("t"), 4);
    CHECK(ct.gens.size() == 2);

    for (const auto& res : {ca, cb, ct})
        for (const Word& g : res.gens)
            CHECK(t.trivial(commutator(g, g))); // sanity

    // commutation with the defining witness
    for (const Word& g : ca.gens)
        CHECK(t.trivial(commutator(g, parse_word("a"))));
}

TEST_CASE("verify_hom") {
    Tower t = height1();
    auto tower = std::make_shared<Tower>(t);

    SUBCASE("identity map on the base") {
        GroupHom h;
        h.source = SourceGroup::from_presentation(Presentation::free_group({"a", "b"}, "F2"));
        h.target = tower;
        auto v = verify_hom(h);
        CHECK(v.ok);
        CHECK(h.status == HomStatus::RelatorsVerified);
    }
    SUBCASE("map with a failing relator is reported") {
        GroupHom h;
        h.source.name = "Z2";
        Symbol x = Symbol::intern("vx"), y = Symbol::intern("vy");
        h.source.generators = {x, y};
        h.source.relators = {commutator(Word::letter(x), Word::letter(y))};
        h.target = tower;
        h.images[x.id()] = parse_word("a");
        h.images[y.id()] = parse_word("b");
        auto v = verify_hom(h);
        CHECK(!v.ok);
        CHECK(v.failing_relator == 0);

        h.images[y.id()] = parse_word("t");
        auto v2 = verify_hom(h);
        CHECK(v2.ok);
    }
}

TEST_CASE("injectivity_sample finds collisions and passes identities") {
    Tower t = height1();
    auto tower = std::make_shared<Tower>(t);

    SUBCASE("constant map collides immediately") {
        GroupHom h;
        Symbol x = Symbol::intern("cx"), y = Symbol::intern("cy");
        h.source = SourceGroup::free({x, y}, "F");
        h.target = tower;
        h.images[x.id()] = Word();
        h.images[y.id()] = Word();
        auto rep = injectivity_sample(h, 1);
        CHECK(!rep.pass);
        REQUIRE(rep.counterexample);
    }
    SUBCASE("base inclusion passes") {
        GroupHom h;
        h.source = SourceGroup::from_presentation(Presentation::free_group({"a", "b"}, "F2"));
        h.target = tower;
        auto rep = injectivity_sample(h, 3);
        CHECK(rep.pass);
        CHECK(rep.elements_checked > 100);
        CHECK(h.status == HomStatus::InjectivitySampled);
    }
}

TEST_CASE("free product with abelian oracle") {
    auto f2 = Presentation::free_group({"a", "b"}, "F2");
    Tower base(f2, "B");
    Symbol x = Symbol::intern("px"), y = Symbol::intern("py");
    SourceGroup fp = SourceGroup::free_product_abelian(base, {x, y});
    CHECK(fp.is_trivial(parse_word("px py px^-1 py^-1")));
    CHECK(fp.is_trivial(parse_word("a px a^-1 a px^-1 a^-1")));
    CHECK(!fp.is_trivial(parse_word("px a px^-1 a^-1")));
    CHECK(!fp.is_trivial(parse_word("a px")));
    CHECK(!fp.is_trivial(parse_word("px")));
    CHECK(fp.is_trivial(parse_word("px py a a^-1 py^-1 px^-1")));
}
