#include "gt/presentation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace gt {

Presentation::Presentation(std::string name, std::vector<Symbol> generators,
                           std::vector<Word> relators, bool dehn_override)
    : name_(std::move(name)), generators_(std::move(generators)), dehn_override_(dehn_override) {
    std::set<Symbol> gens(generators_.begin(), generators_.end());
    if (gens.size() != generators_.size())
        throw std::invalid_argument("duplicate generator");
    for (Word& r : relators) {
        CyclicReduction cr = cyclic_reduce(r);
        if (cr.core.empty())
            throw std::invalid_argument("trivial relator");
        for (const Letter& l : cr.core.letters())
            if (!gens.count(l.symbol))
                throw std::invalid_argument("relator uses undeclared generator '" + l.symbol.name() + "'");
        relators_.push_back(cr.core);
    }
    symmetrize();
    measure_small_cancellation();

    std::vector<std::vector<long>> rows;
    for (const Word& r : relators_)
        rows.push_back(abelianize(r));
    relator_lattice_ = hermite_rows(std::move(rows));
}

std::shared_ptr<const Presentation> Presentation::free_group(std::vector<std::string> gens,
                                                             std::string name) {
    std::vector<Symbol> syms;
    syms.reserve(gens.size());
    for (const std::string& g : gens)
        syms.push_back(Symbol::intern(g));
    return std::make_shared<Presentation>(std::move(name), std::move(syms), std::vector<Word>{});
}

bool Presentation::owns_letters(const Word& w) const {
    for (const Letter& l : w.letters())
        if (std::find(generators_.begin(), generators_.end(), l.symbol) == generators_.end())
            return false;
    return true;
}

void Presentation::symmetrize() {
    std::set<std::string> seen;
    for (const Word& r : relators_) {
        for (const Word& base : {r, r.inverse()}) {
            for (const Word& rot : cyclic_rotations(base)) {
                if (seen.insert(rot.str()).second)
                    symmetrized_.push_back(rot);
            }
        }
    }
}

void Presentation::measure_small_cancellation() {
    sc_ = ScReport{};
    if (symmetrized_.empty()) {
        sc_.metric_ok = true; // free: vacuously C'(1/6)
        return;
    }
    sc_.min_relator = static_cast<long>(symmetrized_.front().size());
    for (const Word& r : symmetrized_)
        sc_.min_relator = std::min(sc_.min_relator, static_cast<long>(r.size()));
    // Pieces are common prefixes of two distinct symmetrized relators.
    for (size_t i = 0; i < symmetrized_.size(); ++i) {
        for (size_t j = i + 1; j < symmetrized_.size(); ++j) {
            const Word &a = symmetrized_[i], &b = symmetrized_[j];
            size_t k = 0;
            while (k < a.size() && k < b.size() && a[k] == b[k])
                ++k;
            if (static_cast<long>(k) > sc_.max_piece) {
                sc_.max_piece = static_cast<long>(k);
                sc_.witness_pieces.clear();
            }
            if (k > 0 && static_cast<long>(k) == sc_.max_piece && sc_.witness_pieces.size() < 4) {
                std::vector<Letter> p(a.letters().begin(), a.letters().begin() + static_cast<ptrdiff_t>(k));
                sc_.witness_pieces.emplace_back(std::move(p));
            }
        }
    }
    sc_.metric_ok = 6 * sc_.max_piece < sc_.min_relator;
    for (const Word& r : relators_)
        if (primitive_root(r).exponent > 1)
            sc_.has_proper_power_relator = true;
}

namespace {

// Longest prefix of any symmetrized relator matching w starting at position i.
// Returns (relator index, matched length) maximizing matched length.
std::pair<int, size_t> longest_relator_prefix_at(const std::vector<Word>& rels, const Word& w, size_t i) {
    int best = -1;
    size_t best_len = 0;
    for (size_t r = 0; r < rels.size(); ++r) {
        const Word& rel = rels[r];
        size_t k = 0;
        while (k < rel.size() && i + k < w.size() && w[i + k] == rel[k])
            ++k;
        if (k > best_len) {
            best_len = k;
            best = static_cast<int>(r);
        }
    }
    return {best, best_len};
}

} // namespace

Word Presentation::dehn_reduce(const Word& w) const {
    if (symmetrized_.empty())
        return w;
    Word cur = w;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < cur.size() && !changed; ++i) {
            auto [r, len] = longest_relator_prefix_at(symmetrized_, cur, i);
            if (r < 0)
                continue;
            const Word& rel = symmetrized_[static_cast<size_t>(r)];
            if (2 * len > rel.size()) {
                // cur = x u y with rel = u v; replace u by v^-1, strictly shorter.
                std::vector<Letter> pre(cur.letters().begin(), cur.letters().begin() + static_cast<ptrdiff_t>(i));
                std::vector<Letter> post(cur.letters().begin() + static_cast<ptrdiff_t>(i + len), cur.letters().end());
                std::vector<Letter> tail(rel.letters().begin() + static_cast<ptrdiff_t>(len), rel.letters().end());
                cur = Word(std::move(pre)) * Word(std::move(tail)).inverse() * Word(std::move(post));
                changed = true;
            }
        }
    }
    return cur;
}

Triviality Presentation::wp(const Word& w) const {
    if (!wp_supported())
        throw UnsupportedPresentation("presentation '" + name_ +
                                      "' is not verified C'(1/6) and no override is set");
    if (!owns_letters(w))
        throw std::invalid_argument("word uses letters outside presentation '" + name_ + "'");
    return dehn_reduce(w).empty() ? Triviality::Trivial : Triviality::Nontrivial;
}

Word Presentation::cyclic_dehn_reduce(const Word& w) const {
    Word cur = cyclic_reduce(w).core;
    bool changed = true;
    while (changed) {
        changed = false;
        // Dehn steps on every rotation catch subwords that wrap around.
        for (const Word& rot : cyclic_rotations(cur)) {
            Word red = cyclic_reduce(dehn_reduce(rot)).core;
            if (red.size() < cur.size()) {
                cur = red;
                changed = true;
                break;
            }
        }
    }
    return cur;
}

ConjugacyResult Presentation::conjugacy(const Word& u, const Word& v, int bound) const {
    Word cu = cyclic_dehn_reduce(u);
    Word cv = cyclic_dehn_reduce(v);
    if (is_free()) {
        // Conjugate iff the cyclic reductions are rotations of each other.
        CyclicReduction ru = cyclic_reduce(u), rv = cyclic_reduce(v);
        auto rots = cyclic_rotations(ru.core);
        for (size_t i = 0; i < rots.size(); ++i) {
            if (rots[i] == rv.core) {
                // u = a^-1 c a, v = b^-1 (rot_i c) b, rot_i c = p^-1 c p with
                // p the first i letters of c. So t = a^-1 p^-1 b works.
                // rot_i(c) = p^-1 c p with p the first i letters of c, so
                // v = (p b)^-1 c (p b) and t = a^-1 p b conjugates u to v.
                std::vector<Letter> pref(ru.core.letters().begin(),
                                         ru.core.letters().begin() + static_cast<ptrdiff_t>(i));
                Word t = ru.conjugator.inverse() * Word(std::move(pref)) * rv.conjugator;
                return {SearchStatus::Found, ConjugacyWitness{t}};
            }
        }
        return {SearchStatus::NotFound, std::nullopt};
    }
    // Distinct abelianization classes can never be conjugate.
    std::vector<long> diff = abelianize(u);
    std::vector<long> bv = abelianize(v);
    for (size_t i = 0; i < diff.size(); ++i)
        diff[i] -= bv[i];
    if (!lattice_reduce(relator_lattice_, diff))
        return {SearchStatus::NotFound, std::nullopt};
    for (const Word& t : ball(bound)) {
        if (trivial(conjugate(u, t) * v.inverse()))
            return {SearchStatus::Found, ConjugacyWitness{t}};
    }
    return {SearchStatus::BoundExhausted, std::nullopt};
}

CentralizerGenerator Presentation::centralizer_base(const Word& g, int bound) const {
    if (trivial(g))
        throw std::invalid_argument("centralizer_base needs a nontrivial element");
    if (is_free()) {
        CyclicReduction cr = cyclic_reduce(g);
        RootPower rp = primitive_root(cr.core);
        return {cr.conjugator.inverse() * rp.root * cr.conjugator, true};
    }
    if (sc_.has_proper_power_relator)
        throw UnsupportedPresentation("presentation '" + name_ + "' has a proper-power relator; not torsion-free");
    // Bounded substitute for Osin's N and beta: search short roots, keep the
    // one with the maximal exponent.
    Word red = dehn_reduce(g);
    Word best = red;
    int best_exp = 1;
    for (const Word& f : ball(std::min<int>(bound, static_cast<int>(red.size())))) {
        if (f.empty() || trivial(f))
            continue;
        Word p = f;
        for (int n = 1; n * static_cast<int>(f.size()) <= static_cast<int>(red.size()) + 2 * bound; ++n) {
            if (n > best_exp && trivial(p * red.inverse())) {
                best = f;
                best_exp = n;
            }
            p = p * f;
        }
    }
    return {best, false};
}

std::vector<long> Presentation::abelianize(const Word& w) const {
    std::vector<long> v(generators_.size(), 0);
    for (const Letter& l : w.letters()) {
        auto it = std::find(generators_.begin(), generators_.end(), l.symbol);
        if (it == generators_.end())
            throw std::invalid_argument("abelianize: foreign letter '" + l.symbol.name() + "'");
        v[static_cast<size_t>(it - generators_.begin())] += l.sign;
    }
    return v;
}

bool Presentation::abelianization_trivial(const Word& w) const {
    std::vector<long> v = abelianize(w);
    return lattice_reduce(relator_lattice_, v);
}

std::vector<Word> Presentation::ball(int radius) const {
    return enumerate_ball(generators_, radius);
}

std::vector<Word> enumerate_ball(const std::vector<Symbol>& alphabet, int radius) {
    std::vector<Word> out{Word()};
    size_t level_begin = 0;
    for (int len = 1; len <= radius; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_begin; i < level_end; ++i) {
            for (Symbol s : alphabet) {
                for (int sign : {1, -1}) {
                    const Word& base = out[i];
                    if (!base.empty() && base[base.size() - 1].symbol == s &&
                        base[base.size() - 1].sign == -sign)
                        continue;
                    out.push_back(base * Word::letter(s, sign));
                }
            }
        }
        level_begin = level_end;
    }
    return out;
}

std::vector<std::vector<long>> hermite_rows(std::vector<std::vector<long>> rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<long>& r) {
                                  return std::all_of(r.begin(), r.end(), [](long x) { return x == 0; });
                              }),
               rows.end());
    if (rows.empty())
        return rows;
    size_t cols = rows[0].size();
    std::vector<std::vector<long>> basis;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows.size(); ++col) {
        // gcd-eliminate column col below `row`
        for (;;) {
            size_t piv = row;
            long best = 0;
            for (size_t i = row; i < rows.size(); ++i) {
                long a = std::abs(rows[i][col]);
                if (a != 0 && (best == 0 || a < best)) {
                    best = a;
                    piv = i;
                }
            }
            if (best == 0)
                break;
            std::swap(rows[row], rows[piv]);
            bool done = true;
            for (size_t i = row + 1; i < rows.size(); ++i) {
                if (rows[i][col] != 0) {
                    long q = rows[i][col] / rows[row][col];
                    for (size_t c = 0; c < cols; ++c)
                        rows[i][c] -= q * rows[row][c];
                    if (rows[i][col] != 0)
                        done = false;
                }
            }
            if (done)
                break;
        }
        if (rows[row][col] != 0)
            ++row;
    }
    rows.resize(row);
    return rows;
}

bool lattice_reduce(const std::vector<std::vector<long>>& hnf_rows, std::vector<long>& v) {
    for (const std::vector<long>& r : hnf_rows) {
        size_t lead = 0;
        while (lead < r.size() && r[lead] == 0)
            ++lead;
        if (lead == r.size())
            continue;
        if (v[lead] % r[lead] == 0) {
            long q = v[lead] / r[lead];
            for (size_t c = 0; c < v.size(); ++c)
                v[c] -= q * r[c];
        }
    }
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

} // namespace gt
