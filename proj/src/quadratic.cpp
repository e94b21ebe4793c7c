#include "gt/quadratic.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gt {

Word atom_word(const QuadraticAtom& a) {
    if (const auto* c = std::get_if<CommAtom>(&a))
        return commutator(Word::letter(c->x), Word::letter(c->y));
    if (const auto* s = std::get_if<SquareAtom>(&a))
        return Word::letter(s->x) * Word::letter(s->x);
    const auto& j = std::get<ConjAtom>(a);
    return conjugate(j.c, Word::letter(j.z));
}

int StandardQuadratic::genus() const {
    int n = 0;
    for (const auto& a : atoms)
        if (!std::holds_alternative<ConjAtom>(a))
            ++n;
    return n;
}

int StandardQuadratic::num_conj() const {
    int m = 0;
    for (const auto& a : atoms)
        if (std::holds_alternative<ConjAtom>(a))
            ++m;
    return m;
}

int StandardQuadratic::form() const {
    if (orientable)
        return punctured() ? 4 : 3;
    return punctured() ? 6 : 5;
}

Word StandardQuadratic::word() const {
    Word w;
    for (const auto& a : atoms)
        w = w * atom_word(a);
    return w * d;
}

std::vector<Symbol> StandardQuadratic::variables() const {
    std::vector<Symbol> out;
    for (const auto& a : atoms) {
        if (const auto* c = std::get_if<CommAtom>(&a)) {
            out.push_back(c->x);
            out.push_back(c->y);
        } else if (const auto* s = std::get_if<SquareAtom>(&a)) {
            out.push_back(s->x);
        } else {
            out.push_back(std::get<ConjAtom>(a).z);
        }
    }
    return out;
}

namespace {

std::map<Symbol, int> occurrence_counts(const Word& w, const std::vector<Symbol>& vars) {
    std::set<Symbol> vs(vars.begin(), vars.end());
    std::map<Symbol, int> counts;
    for (const Letter& l : w.letters())
        if (vs.count(l.symbol))
            ++counts[l.symbol];
    return counts;
}

} // namespace

Quadraticity is_quadratic_word(const Word& w, const std::vector<Symbol>& vars) {
    auto counts = occurrence_counts(w, vars);
    bool strict = true;
    for (const auto& [v, c] : counts) {
        if (c > 2)
            return Quadraticity::No;
        if (c != 2)
            strict = false;
    }
    return strict ? Quadraticity::StrictlyQuadratic : Quadraticity::Quadratic;
}

Quadraticity is_quadratic(const EqSystem& s) {
    std::map<Symbol, int> counts;
    std::set<Symbol> vs(s.variables.begin(), s.variables.end());
    for (const Word& e : s.equations)
        for (const Letter& l : e.letters())
            if (vs.count(l.symbol))
                ++counts[l.symbol];
    bool strict = true;
    for (const auto& [v, c] : counts) {
        if (c > 2)
            return Quadraticity::No;
        if (c != 2)
            strict = false;
    }
    return strict ? Quadraticity::StrictlyQuadratic : Quadraticity::Quadratic;
}

namespace {

// Normalization state: cur together with the accumulated substitution, kept
// total over the input variables so that substitute(w0, phi) == prefix * cur
// at every step, where prefix is the concatenation of collected atom words.
struct Collector {
    std::vector<Symbol> vars;
    std::set<Symbol> varset;
    Word cur;
    std::unordered_map<uint32_t, Word> phi;
    std::vector<QuadraticAtom> genus_atoms;
    int moves = 0;

    explicit Collector(const Word& w, const std::vector<Symbol>& vs)
        : vars(vs), varset(vs.begin(), vs.end()), cur(w) {
        for (Symbol v : vars)
            phi[v.id()] = Word::letter(v);
    }

    bool is_var(Symbol s) const { return varset.count(s) != 0; }

    void move(Symbol v, const Word& image) {
        if (++moves > 20000)
            throw std::logic_error("quadratic normalization did not terminate");
        std::unordered_map<uint32_t, Word> m{{v.id(), image}};
        cur = substitute(cur, m);
        for (auto& [sym, w] : phi)
            w = substitute(w, m);
    }

    // Positions of the two occurrences of v in cur (first, second).
    std::pair<size_t, size_t> positions(Symbol v) const {
        size_t first = cur.size(), second = cur.size();
        for (size_t i = 0; i < cur.size(); ++i) {
            if (cur[i].symbol == v) {
                if (first == cur.size())
                    first = i;
                else
                    second = i;
            }
        }
        if (second == cur.size())
            throw std::logic_error("variable does not occur twice");
        return {first, second};
    }

    std::vector<Symbol> active_vars() const {
        std::vector<Symbol> out;
        std::set<Symbol> seen;
        for (const Letter& l : cur.letters())
            if (is_var(l.symbol) && seen.insert(l.symbol).second)
                out.push_back(l.symbol);
        return out;
    }

    Word segment(size_t lo, size_t hi) const { // [lo, hi)
        std::vector<Letter> ls(cur.letters().begin() + static_cast<ptrdiff_t>(lo),
                               cur.letters().begin() + static_cast<ptrdiff_t>(hi));
        return Word(std::move(ls));
    }

    bool same_sign(Symbol v) const {
        auto [i, j] = positions(v);
        return cur[i].sign == cur[j].sign;
    }

    // Extract a square to the front of cur: cur -> v^2 rest.
    void extract_square(Symbol v) {
        if (cur[positions(v).first].sign < 0)
            move(v, Word::letter(v, -1));
        auto [i, j] = positions(v);
        Word a = segment(0, i);
        if (!a.empty())
            move(v, a.inverse() * Word::letter(v));
        std::tie(i, j) = positions(v);
        Word b = segment(i + 1, j);
        if (!b.empty())
            move(v, Word::letter(v) * b.inverse());
    }

    // Collect the crossing pair (x, y) to the front: cur -> x^-1 y^-1 x y rest.
    void collect_commutator(Symbol x, Symbol y) {
        if (cur[positions(x).first].sign < 0)
            move(x, Word::letter(x, -1));
        if (cur[positions(y).first].sign < 0)
            move(y, Word::letter(y, -1));
        {
            auto [i, j] = positions(x);
            Word a = segment(0, i);
            if (!a.empty())
                move(x, a.inverse() * Word::letter(x));
        }
        {
            auto [xi, xj] = positions(x);
            auto [yi, yj] = positions(y);
            Word b1 = segment(xi + 1, yi);
            if (!b1.empty())
                move(y, b1.inverse() * Word::letter(y));
        }
        {
            auto [xi, xj] = positions(x);
            auto [yi, yj] = positions(y);
            Word b2 = segment(yi + 1, xj);
            if (!b2.empty())
                move(y, Word::letter(y) * b2.inverse());
        }
        // cur = x y x^-1 C1 y^-1 C2: hop C1 leftwards in three moves
        {
            auto [xi, xj] = positions(x);
            auto [yi, yj] = positions(y);
            Word c1 = segment(xj + 1, yj);
            if (!c1.empty()) {
                move(y, Word::letter(y) * c1);       // x y C1 x^-1 y^-1 C2
                move(x, Word::letter(x) * c1);       // x C1 y x^-1 y^-1 C2
                move(y, c1.inverse() * Word::letter(y)); // x y x^-1 y^-1 C1 C2
            }
        }
        move(x, Word::letter(x, -1));
        move(y, Word::letter(y, -1)); // x^-1 y^-1 x y rest
    }

    // cur starts with the given literal; drop it.
    void pop_prefix(const Word& prefix) {
        if (cur.size() < prefix.size() || !(segment(0, prefix.size()) == prefix))
            throw std::logic_error("expected literal prefix during normalization");
        cur = segment(prefix.size(), cur.size());
    }

    void prepend(const Word& w) { cur = w * cur; }
};

} // namespace

QuadraticNormalization to_standard_form(const Word& w, const std::vector<Symbol>& vars) {
    if (is_quadratic_word(w, vars) != Quadraticity::StrictlyQuadratic)
        throw std::invalid_argument("to_standard_form needs a strictly quadratic word");
    bool has_var = false;
    for (const Letter& l : w.letters())
        if (std::find(vars.begin(), vars.end(), l.symbol) != vars.end())
            has_var = true;
    if (!has_var)
        throw std::invalid_argument("to_standard_form needs at least one variable occurrence");

    Collector col(w, vars);

    // Genus collection: squares and crossing commutators, homogenized so the
    // collected genus atoms end up all squares or all commutators.
    for (;;) {
        std::vector<Symbol> active = col.active_vars();
        Symbol same;
        for (Symbol v : active)
            if (col.same_sign(v)) {
                same = v;
                break;
            }
        if (same.valid()) {
            col.extract_square(same);
            bool have_comm = !col.genus_atoms.empty() &&
                             std::holds_alternative<CommAtom>(col.genus_atoms.back());
            if (have_comm) {
                // comm . square boundary: pop the commutator back and convert
                // it with the kick z -> v z; the loop re-extracts squares.
                CommAtom ca = std::get<CommAtom>(col.genus_atoms.back());
                col.genus_atoms.pop_back();
                col.prepend(atom_word(CommAtom{ca.x, ca.y}));
                // cur = x^-1 y^-1 x y v v rest; normalize to y z y^-1 z^-1 v v
                // by inverting both, then kick.
                col.move(ca.x, Word::letter(ca.x, -1));
                col.move(ca.y, Word::letter(ca.y, -1)); // x y x^-1 y^-1 v v rest
                col.move(ca.y, Word::letter(same) * Word::letter(ca.y));
                continue;
            }
            Word sq = Word::letter(same) * Word::letter(same);
            col.pop_prefix(sq);
            col.genus_atoms.push_back(SquareAtom{same});
            continue;
        }
        // crossing pair: first occurrences i1 < j1 with i1 < j1 < i2 < j2
        Symbol cx, cy;
        size_t best = col.cur.size();
        for (Symbol v : active) {
            auto [i1, i2] = col.positions(v);
            for (Symbol u : active) {
                if (u == v)
                    continue;
                auto [j1, j2] = col.positions(u);
                if (i1 < j1 && j1 < i2 && i2 < j2 && i1 < best) {
                    best = i1;
                    cx = v;
                    cy = u;
                }
            }
        }
        if (!cx.valid())
            break;
        col.collect_commutator(cx, cy);
        bool have_square = !col.genus_atoms.empty() &&
                           std::holds_alternative<SquareAtom>(col.genus_atoms.back());
        if (have_square) {
            // square . comm boundary: pop the square back and kick y -> x^-1 y.
            SquareAtom sa = std::get<SquareAtom>(col.genus_atoms.back());
            col.genus_atoms.pop_back();
            col.prepend(atom_word(sa));
            // cur = x x cx^-1 cy^-1 cx cy rest; bring the commutator to
            // y z y^-1 z^-1 shape, then kick the variable next to the square.
            col.move(cx, Word::letter(cx, -1));
            col.move(cy, Word::letter(cy, -1)); // x x cx cy cx^-1 cy^-1 rest
            col.move(cx, Word::letter(sa.x, -1) * Word::letter(cx));
            continue;
        }
        col.pop_prefix(atom_word(CommAtom{cx, cy}));
        col.genus_atoms.push_back(CommAtom{cx, cy});
    }

    // Conjugate-atom phase: remaining pairs are non-crossing and oriented.
    std::vector<QuadraticAtom> conj_atoms;
    for (;;) {
        std::vector<Symbol> active = col.active_vars();
        if (active.empty())
            break;
        // innermost-leftmost pair: interior free of variables
        Symbol pick;
        size_t pick_pos = col.cur.size();
        for (Symbol v : active) {
            auto [i, j] = col.positions(v);
            bool clean = true;
            for (size_t k = i + 1; k < j && clean; ++k)
                if (col.is_var(col.cur[k].symbol))
                    clean = false;
            if (clean && i < pick_pos) {
                pick_pos = i;
                pick = v;
            }
        }
        if (!pick.valid())
            throw std::logic_error("no innermost pair in conjugate phase");
        if (col.cur[col.positions(pick).first].sign > 0)
            col.move(pick, Word::letter(pick, -1));
        auto [i, j] = col.positions(pick);
        Word p = col.segment(0, i);
        if (!p.empty())
            col.move(pick, Word::letter(pick) * p);
        std::tie(i, j) = col.positions(pick);
        Word c = col.segment(i + 1, j);
        col.pop_prefix(conjugate(c, Word::letter(pick)));
        conj_atoms.push_back(ConjAtom{pick, c});
    }

    StandardQuadratic std_form;
    bool any_square = std::any_of(col.genus_atoms.begin(), col.genus_atoms.end(),
                                  [](const QuadraticAtom& a) { return std::holds_alternative<SquareAtom>(a); });
    std_form.orientable = !any_square;
    std_form.atoms = col.genus_atoms;
    std_form.atoms.insert(std_form.atoms.end(), conj_atoms.begin(), conj_atoms.end());
    std_form.d = col.cur;

    QuadraticNormalization out{std_form, col.phi};
    if (!(substitute(w, out.automorphism) == std_form.word()))
        throw std::logic_error("normalization identity w^phi == s failed");
    return out;
}

int euler_char_surface(bool orientable, int genus, int punctures) {
    return orientable ? 2 - 2 * genus - punctures : 2 - genus - punctures;
}

int euler_char_atoms(const StandardQuadratic& s) {
    int chi = 2;
    for (const auto& a : s.atoms)
        chi += std::holds_alternative<CommAtom>(a) ? -2 : -1;
    if (s.punctured())
        chi -= 1; // the d puncture
    return chi;
}

int euler_char(const StandardQuadratic& s) {
    return euler_char_surface(s.orientable, s.genus(), s.punctured() ? s.num_conj() + 1 : 0);
}

Classification classify_solution(const StandardQuadratic& s, const Assignment& phi,
                                 const Target& target) {
    std::unordered_map<uint32_t, Word> images;
    for (const auto& [v, img] : phi)
        images[v.id()] = img;
    if (!target.trivial(substitute(s.word(), images)))
        throw std::invalid_argument("classify_solution: assignment does not satisfy the equation");

    std::vector<Word> atom_images;
    for (const auto& a : s.atoms)
        atom_images.push_back(substitute(atom_word(a), images));

    Classification out;
    bool degenerate = false;
    for (const Word& r : atom_images)
        if (target.trivial(r))
            degenerate = true;
    bool all_commute = true, none_commute = true;
    for (size_t i = 0; i + 1 < atom_images.size(); ++i) {
        bool commutes = target.trivial(commutator(atom_images[i], atom_images[i + 1]));
        out.consecutive_commutes.push_back(commutes);
        all_commute = all_commute && commutes;
        none_commute = none_commute && !commutes;
    }
    if (degenerate)
        out.cls = SolutionClass::Degenerate;
    else if (all_commute)
        out.cls = SolutionClass::Commutative;
    else if (none_commute)
        out.cls = SolutionClass::GeneralPosition;
    else
        out.cls = SolutionClass::Mixed;
    return out;
}

GeneralPositionSearch detect_general_position(const StandardQuadratic& s, const Target& target,
                                              int radius) {
    if (s.atoms.size() < 2)
        throw std::invalid_argument("detect_general_position needs at least two atoms");
    EqSystem sys;
    sys.name = "quad";
    sys.variables = s.variables();
    sys.equations = {s.word()};
    for (const Assignment& phi : hom_search(sys, target, radius)) {
        Classification c = classify_solution(s, phi, target);
        if (c.cls == SolutionClass::GeneralPosition)
            return {true, phi};
    }
    return {false, std::nullopt};
}

Regularity is_regular(const StandardQuadratic& s, const GeneralPositionSearch& evidence) {
    // Exempt forms: [x,y]d and [x1,y1][x2,y2].
    if (s.orientable && s.genus() == 1 && s.num_conj() == 0 && !s.d.empty())
        return Regularity::Regular;
    if (s.orientable && s.genus() == 2 && s.num_conj() == 0 && s.d.empty())
        return Regularity::Regular;
    if (euler_char(s) > -2)
        return Regularity::NotRegular;
    if (evidence.found)
        return Regularity::Regular;
    return Regularity::Unknown;
}

} // namespace gt
