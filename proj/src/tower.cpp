#include "gt/tower.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace gt {

namespace {

std::string encode(const Word& w) {
    std::string s;
    s.reserve(w.size() * 5);
    for (const Letter& l : w.letters()) {
        uint32_t id = l.symbol.id();
        s.push_back(static_cast<char>(l.sign > 0 ? 'p' : 'n'));
        s.append(reinterpret_cast<const char*>(&id), 4);
    }
    return s;
}

} // namespace

class WpCache {
  public:
    std::optional<bool> lookup(size_t height, const Word& w) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(key(height, w));
        if (it == map_.end())
            return std::nullopt;
        return it->second;
    }
    void insert(size_t height, const Word& w, bool value) {
        std::unique_lock lock(mu_);
        if (map_.size() > 200000)
            map_.clear();
        map_[key(height, w)] = value; // last write wins
    }

  private:
    static std::string key(size_t height, const Word& w) {
        return std::to_string(height) + ":" + encode(w);
    }
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, bool> map_;
};

Tower::Tower(std::shared_ptr<const Presentation> base, std::string name)
    : base_(std::move(base)), name_(std::move(name)), cache_(std::make_shared<WpCache>()) {
    if (!base_)
        throw std::invalid_argument("tower needs a base presentation");
    std::vector<std::vector<long>> rows;
    for (const Word& r : base_->relators()) {
        std::vector<long> row = base_->abelianize(r);
        rows.push_back(std::move(row));
    }
    ab_lattice_ = hermite_rows(std::move(rows));
}

std::vector<Symbol> Tower::alphabet() const {
    std::vector<Symbol> a = base_->generators();
    for (const auto& lv : levels_)
        a.push_back(lv->stable);
    return a;
}

bool Tower::owns_letters(const Word& w) const {
    std::vector<Symbol> a = alphabet();
    for (const Letter& l : w.letters())
        if (std::find(a.begin(), a.end(), l.symbol) == a.end())
            return false;
    return true;
}

bool Tower::is_stable_letter(Symbol s) const {
    for (const auto& lv : levels_)
        if (lv->stable == s)
            return true;
    return false;
}

Tower Tower::prefix(size_t height) const {
    if (height > levels_.size())
        throw std::out_of_range("prefix height exceeds tower height");
    Tower t(base_, name_);
    t.levels_.assign(levels_.begin(), levels_.begin() + static_cast<ptrdiff_t>(height));
    for (const Parabolic& p : registry_)
        if (p.height <= height)
            t.registry_.push_back(p);
    t.cache_ = cache_;
    return t;
}

Tower Tower::extend_centralizer(const Word& u, int rank, std::vector<Symbol> names,
                                int bound) const {
    if (rank < 1)
        throw std::invalid_argument("extension rank must be positive");
    if (!owns_letters(u))
        throw std::invalid_argument("witness uses letters outside the tower");
    if (trivial(u))
        throw std::invalid_argument("cannot extend the centralizer of a trivial element");
    if (base_->sc_report().has_proper_power_relator)
        throw UnsupportedPresentation("base presentation has a proper-power relator; not torsion-free");

    CentralizerResult cb = centralizer(u, bound);
    Tower t = *this;
    t.cache_ = std::make_shared<WpCache>();

    std::vector<Word> gens = cb.gens;
    std::vector<Word> added;
    for (int i = 0; i < rank; ++i) {
        Symbol s = static_cast<size_t>(i) < names.size() ? names[static_cast<size_t>(i)]
                                                         : fresh_symbol("t");
        if (t.is_stable_letter(s) ||
            std::find(base_->generators().begin(), base_->generators().end(), s) !=
                base_->generators().end())
            throw std::invalid_argument("stable letter '" + s.name() + "' already in use");
        auto level = std::make_shared<TowerLevel>();
        level->stable = s;
        level->witness = u;
        level->center_gens = gens;
        t.levels_.push_back(level);
        Word ws = Word::letter(s);
        gens.push_back(ws); // later letters commute with the earlier ones
        added.push_back(ws);
    }

    // Registry: the maximal abelian subgroup containing u is now non-cyclic.
    bool merged = false;
    for (Parabolic& p : t.registry_) {
        if (t.trivial(commutator(u, p.rep))) {
            p.gens.insert(p.gens.end(), added.begin(), added.end());
            p.height = t.levels_.size();
            merged = true;
            break;
        }
    }
    if (!merged)
        t.registry_.push_back(Parabolic{u, gens, t.levels_.size()});
    return t;
}

bool Tower::is_central(size_t level_index, const Word& v) const {
    if (v.empty())
        return true;
    const TowerLevel& lv = *levels_[level_index];
    auto cached = cache_->lookup(level_index + 100000, v); // membership namespace
    if (cached)
        return *cached;
    bool result = wp_at(level_index, commutator(v, lv.witness));
    cache_->insert(level_index + 100000, v, result);
    return result;
}

bool Tower::wp_at(size_t height, const Word& w) const {
    auto cached = cache_->lookup(height, w);
    if (cached)
        return *cached;
    Word r = britton_reduce_at(height, w);
    bool triv = true;
    for (const Letter& l : r.letters()) {
        for (size_t i = 0; i < height; ++i) {
            if (levels_[i]->stable == l.symbol) {
                triv = false; // Britton's Lemma
                break;
            }
        }
        if (!triv)
            break;
    }
    if (triv)
        triv = base_->trivial(r);
    cache_->insert(height, w, triv);
    return triv;
}

Word Tower::britton_reduce_at(size_t height, const Word& w) const {
    if (height == 0)
        return w;
    Symbol t = levels_[height - 1]->stable;

    // Split w on t^e letters, eliminating pinches t^e v t^-e with v central.
    std::vector<Word> segs{Word()};
    std::vector<int> signs;
    std::vector<Letter> run;
    auto flush_run = [&]() {
        if (!run.empty()) {
            segs.back() = segs.back() * Word(run);
            run.clear();
        }
    };
    for (const Letter& l : w.letters()) {
        if (l.symbol != t) {
            run.push_back(l);
            continue;
        }
        flush_run();
        if (!signs.empty() && signs.back() == -l.sign && is_central(height - 1, segs.back())) {
            Word v = segs.back();
            segs.pop_back();
            signs.pop_back();
            segs.back() = segs.back() * v;
        } else {
            signs.push_back(l.sign);
            segs.push_back(Word());
        }
    }
    flush_run();

    Word out;
    for (size_t i = 0; i < segs.size(); ++i) {
        out = out * britton_reduce_at(height - 1, segs[i]);
        if (i < signs.size())
            out = out * Word::letter(t, signs[i]);
    }
    return out;
}

Word Tower::britton_reduce(const Word& w) const {
    if (!owns_letters(w))
        throw std::invalid_argument("word uses letters outside the tower");
    return britton_reduce_at(levels_.size(), w);
}

Triviality Tower::wp(const Word& w) const {
    if (!owns_letters(w))
        throw std::invalid_argument("word uses letters outside the tower");
    return wp_at(levels_.size(), w) ? Triviality::Trivial : Triviality::Nontrivial;
}

CentralizerResult Tower::centralizer(const Word& g, int bound) const {
    if (trivial(g))
        throw std::invalid_argument("centralizer of the trivial element is the whole group");

    // Conjugate into a registry parabolic? Try the identity conjugator first,
    // then a bounded search.
    for (const Parabolic& p : registry_) {
        if (trivial(commutator(g, p.rep)))
            return {p.gens, true};
    }
    for (const Parabolic& p : registry_) {
        for (const Word& h : ball(std::min(bound, 3))) {
            if (h.empty())
                continue;
            if (trivial(commutator(conjugate(g, h.inverse()), p.rep))) {
                // h g h^-1 lies in the parabolic; conjugate its generators back.
                std::vector<Word> gens;
                gens.reserve(p.gens.size());
                for (const Word& x : p.gens)
                    gens.push_back(conjugate(x, h));
                return {gens, true};
            }
        }
    }

    // Cyclic case: root extraction.
    if (levels_.empty() || (base_->is_free() && base_->owns_letters(g))) {
        CentralizerGenerator cg = base_->centralizer_base(g, bound);
        return {{cg.generator}, cg.exact};
    }
    Word red = britton_reduce(g);
    CyclicReduction cr = cyclic_reduce(red);
    RootPower rp = primitive_root(cr.core);
    Word root = cr.conjugator.inverse() * rp.root * cr.conjugator;
    if (!trivial(commutator(root, g)))
        root = red; // periodicity was only literal; fall back to g itself
    return {{root}, false};
}

std::vector<Word> Tower::defining_relators() const {
    std::vector<Word> rels = base_->relators();
    for (const auto& lv : levels_) {
        Word t = Word::letter(lv->stable);
        for (const Word& c : lv->center_gens)
            rels.push_back(commutator(t, c));
    }
    return rels;
}

std::vector<long> Tower::abelianize(const Word& w) const {
    std::vector<Symbol> a = alphabet();
    std::vector<long> v(a.size(), 0);
    for (const Letter& l : w.letters()) {
        auto it = std::find(a.begin(), a.end(), l.symbol);
        if (it == a.end())
            throw std::invalid_argument("abelianize: foreign letter");
        v[static_cast<size_t>(it - a.begin())] += l.sign;
    }
    return v;
}

std::vector<long> Tower::abelian_residue(const Word& w) const {
    std::vector<long> v = abelianize(w);
    size_t n_base = base_->generators().size();
    std::vector<long> head(v.begin(), v.begin() + static_cast<ptrdiff_t>(n_base));
    lattice_reduce(ab_lattice_, head);
    std::copy(head.begin(), head.end(), v.begin());
    return v;
}

std::vector<Word> Tower::ball(int radius) const {
    return enumerate_ball(alphabet(), radius);
}

SourceGroup SourceGroup::from_presentation(const std::shared_ptr<const Presentation>& p) {
    SourceGroup s;
    s.name = p->name();
    s.generators = p->generators();
    s.relators = p->relators();
    if (p->wp_supported()) {
        std::vector<std::vector<long>> rows;
        for (const Word& r : p->relators())
            rows.push_back(p->abelianize(r));
        auto hnf = hermite_rows(std::move(rows));
        s.is_trivial = [p](const Word& w) { return p->trivial(w); };
        s.residue = [p, hnf](const Word& w) {
            std::vector<long> v = p->abelianize(w);
            lattice_reduce(hnf, v);
            return v;
        };
    }
    return s;
}

SourceGroup SourceGroup::from_tower(const Tower& t) {
    SourceGroup s;
    s.name = t.name();
    s.generators = t.alphabet();
    s.relators = t.defining_relators();
    Tower copy = t;
    s.is_trivial = [copy](const Word& w) { return copy.trivial(w); };
    s.residue = [copy](const Word& w) { return copy.abelian_residue(w); };
    return s;
}

SourceGroup SourceGroup::free(std::vector<Symbol> gens, std::string name) {
    SourceGroup s;
    s.name = std::move(name);
    s.generators = std::move(gens);
    s.is_trivial = [](const Word& w) { return w.empty(); };
    return s;
}

SourceGroup SourceGroup::free_product_abelian(const Tower& t, std::vector<Symbol> vars) {
    SourceGroup s;
    s.name = t.name() + "*Z^" + std::to_string(vars.size());
    s.generators = t.alphabet();
    for (Symbol v : vars)
        s.generators.push_back(v);
    s.relators = t.defining_relators();
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            s.relators.push_back(commutator(Word::letter(vars[i]), Word::letter(vars[j])));

    Tower copy = t;
    std::set<Symbol> vset(vars.begin(), vars.end());
    std::vector<Symbol> vorder = vars;
    // Free product normal form: alternate tower and Z^k syllables, drop
    // trivial ones, merge neighbours, repeat.
    s.is_trivial = [copy, vset, vorder](const Word& w) {
        auto side = [&](Symbol sym) { return vset.count(sym) ? 1 : 0; };
        auto syl_trivial = [&](int sd, const Word& syl) {
            if (syl.empty())
                return true;
            if (sd == 1) {
                std::map<Symbol, long> e;
                for (const Letter& l : syl.letters())
                    e[l.symbol] += l.sign;
                for (auto& [k, v] : e)
                    if (v != 0)
                        return false;
                return true;
            }
            return copy.trivial(syl);
        };
        std::vector<std::pair<int, Word>> stack;
        size_t i = 0;
        while (i < w.size()) {
            int sd = side(w[i].symbol);
            std::vector<Letter> run;
            while (i < w.size() && side(w[i].symbol) == sd)
                run.push_back(w[i++]);
            Word syl(std::move(run));
            // merge with the top syllable while sides match, dropping
            // syllables that become trivial
            for (;;) {
                if (!stack.empty() && stack.back().first == sd) {
                    syl = stack.back().second * syl;
                    stack.pop_back();
                }
                if (!syl_trivial(sd, syl)) {
                    stack.emplace_back(sd, std::move(syl));
                    break;
                }
                if (stack.empty())
                    break;
                sd = stack.back().first;
                syl = stack.back().second;
                stack.pop_back();
            }
        }
        return stack.empty();
    };
    s.residue = [copy, vorder](const Word& w) {
        std::vector<Letter> tower_part, ab_part;
        std::set<Symbol> vset2(vorder.begin(), vorder.end());
        for (const Letter& l : w.letters())
            (vset2.count(l.symbol) ? ab_part : tower_part).push_back(l);
        std::vector<long> v = copy.abelian_residue(Word(std::move(tower_part)));
        for (Symbol s2 : vorder) {
            long e = 0;
            for (const Letter& l : ab_part)
                if (l.symbol == s2)
                    e += l.sign;
            v.push_back(e);
        }
        return v;
    };
    return s;
}

Word substitute(const Word& w, const std::unordered_map<uint32_t, Word>& images) {
    Word out;
    for (const Letter& l : w.letters()) {
        auto it = images.find(l.symbol.id());
        if (it == images.end())
            out = out * Word::letter(l.symbol, l.sign);
        else
            out = out * (l.sign > 0 ? it->second : it->second.inverse());
    }
    return out;
}

Word GroupHom::apply(const Word& w) const { return substitute(w, images); }

HomVerification verify_hom(GroupHom& h) {
    for (size_t i = 0; i < h.source.relators.size(); ++i) {
        if (!h.target->trivial(h.apply(h.source.relators[i])))
            return {false, static_cast<int>(i)};
    }
    if (h.status == HomStatus::Unverified)
        h.status = HomStatus::RelatorsVerified;
    return {true, -1};
}

InjectivityReport injectivity_sample(GroupHom& h, int radius) {
    if (!h.source.is_trivial)
        throw std::invalid_argument("injectivity_sample: source has no equality oracle");

    // Distinct source elements in the ball, bucketed to keep the pairwise
    // dedup affordable.
    std::vector<Word> raw = enumerate_ball(h.source.generators, radius);
    std::map<std::vector<long>, std::vector<Word>> buckets;
    std::vector<Word> elements;
    for (const Word& w : raw) {
        std::vector<long> key = h.source.residue ? h.source.residue(w) : std::vector<long>{};
        auto& bucket = buckets[key];
        bool dup = false;
        if (h.source.residue || key.empty()) {
            for (const Word& seen : bucket) {
                if (h.source.is_trivial(w * seen.inverse())) {
                    dup = true;
                    break;
                }
            }
        }
        if (!dup) {
            bucket.push_back(w);
            elements.push_back(w);
        }
    }

    std::map<std::vector<long>, std::vector<size_t>> image_buckets;
    std::vector<Word> images(elements.size());
    for (size_t i = 0; i < elements.size(); ++i) {
        images[i] = h.target->britton_reduce(h.apply(elements[i]));
        image_buckets[h.target->abelian_residue(images[i])].push_back(i);
    }
    for (auto& [key, idxs] : image_buckets) {
        for (size_t a = 0; a < idxs.size(); ++a) {
            for (size_t b = a + 1; b < idxs.size(); ++b) {
                if (h.target->trivial(images[idxs[a]] * images[idxs[b]].inverse()))
                    return {false, elements.size(),
                            std::make_pair(elements[idxs[a]], elements[idxs[b]])};
            }
        }
    }
    h.status = HomStatus::InjectivitySampled;
    h.sampled_radius = radius;
    return {true, elements.size(), std::nullopt};
}

} // namespace gt
