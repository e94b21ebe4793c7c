#include "gt/embeddings.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gt {

namespace {

struct Builder {
    Tower tower;
    std::vector<Symbol> source_gens;
    std::vector<Word> source_rels;
    std::unordered_map<uint32_t, Word> images;
    std::vector<std::string> trace;
    EmbeddingBounds bounds;

    Builder(std::shared_ptr<const Presentation> base, EmbeddingBounds b)
        : tower(std::move(base), "H"), bounds(b) {
        for (Symbol g : tower.base()->generators())
            source_gens.push_back(g);
        for (const Word& r : tower.base()->relators())
            source_rels.push_back(r);
    }

    Word image_of(const Word& w) const { return substitute(w, images); }

    void note(const std::string& s) { trace.push_back(s); }

    void declare_vars(const std::vector<Symbol>& vars) {
        for (Symbol v : vars) {
            if (std::find(source_gens.begin(), source_gens.end(), v) != source_gens.end())
                throw std::invalid_argument("NTQ variable '" + v.name() + "' reuses a generator name");
            source_gens.push_back(v);
        }
    }

    Symbol stable_name(Symbol wanted) {
        std::vector<Symbol> alpha = tower.alphabet();
        if (std::find(alpha.begin(), alpha.end(), wanted) == alpha.end())
            return wanted;
        return fresh_symbol(wanted.name());
    }

    // Two non-commuting elements, shortlex-first (Lemma 1.1(2) enumeration).
    std::pair<Word, Word> noncommuting_pair() {
        std::vector<Word> ball = tower.ball(2);
        for (const Word& u : ball) {
            if (u.empty() || tower.trivial(u))
                continue;
            for (const Word& v : ball) {
                if (v.empty() || tower.trivial(v))
                    continue;
                if (!tower.trivial(commutator(u, v)))
                    return {u, v};
            }
        }
        throw BoundExhausted("no non-commuting pair found; base appears abelian");
    }

    // Free product with F(letters): the iterated three-extension construction,
    // two letters per triple of extensions.
    void embed_free_letters(const std::vector<Symbol>& letters) {
        size_t i = 0;
        while (i < letters.size()) {
            auto [u, v] = noncommuting_pair();
            Symbol t = fresh_symbol("t");
            tower = tower.extend_centralizer(u, 1, {t}, bounds.centralizer_bound);
            Symbol s = fresh_symbol("s");
            tower = tower.extend_centralizer(v, 1, {s}, bounds.centralizer_bound);
            Word ust = u * Word::letter(s) * Word::letter(t);
            Symbol r = fresh_symbol("r");
            tower = tower.extend_centralizer(ust, 1, {r}, bounds.centralizer_bound);
            Word rw = Word::letter(r);
            images[letters[i].id()] = conjugate(Word::letter(t), rw);
            if (i + 1 < letters.size())
                images[letters[i + 1].id()] = conjugate(Word::letter(s), rw);
            std::ostringstream os;
            os << "form IV: letters";
            for (size_t k = i; k < std::min(letters.size(), i + 2); ++k)
                os << ' ' << letters[k].name();
            os << " via [C(" << u.str() << "),t], [C(" << v.str() << "),s], [C(" << ust.str()
               << "),r], images t^r, s^r";
            note(os.str());
            i += 2;
        }
    }

    // Rank-2 free abelian factor: embeds into a rank-2 extension of any
    // nontrivial centralizer, conjugated away from it. The paper cites the
    // lemma without the map; injectivity is sampled downstream.
    std::pair<Word, Word> embed_abelian_pair(Symbol x, Symbol y) {
        auto [u, h0] = noncommuting_pair();
        Word h = h0;
        Symbol t1 = stable_name(x), t2 = stable_name(y);
        tower = tower.extend_centralizer(u, 2, {t1, t2}, bounds.centralizer_bound);
        Word i1 = conjugate(Word::letter(t1), h);
        Word i2 = conjugate(Word::letter(t2), h);
        images[x.id()] = i1;
        images[y.id()] = i2;
        note("form III: Z^2 on " + x.name() + "," + y.name() + " into rank-2 extension of C(" +
             u.str() + ") conjugated by " + h.str());
        return {i1, i2};
    }

    void do_free(const FreeLevel& lv) {
        declare_vars(lv.vars);
        embed_free_letters(lv.vars);
    }

    // Images for a free abelian block of variables, without touching the
    // source presentation: a pair goes into a rank-2 extension; further
    // letters extend the centralizer of the first pair.
    void abelian_block_images(const std::vector<Symbol>& vars) {
        if (vars.empty())
            return;
        if (vars.size() == 1) {
            embed_free_letters(vars); // Z = one free letter
            return;
        }
        embed_abelian_pair(vars[0], vars[1]);
        if (vars.size() > 2) {
            Word u_img = images.at(vars[0].id());
            std::vector<Symbol> rest(vars.begin() + 2, vars.end());
            centralizer_block_images(u_img, rest);
        }
    }

    void centralizer_block_images(const Word& u_img, const std::vector<Symbol>& vars) {
        std::vector<Symbol> names;
        for (Symbol v : vars)
            names.push_back(stable_name(v));
        tower = tower.extend_centralizer(u_img, static_cast<int>(vars.size()), names,
                                         bounds.centralizer_bound);
        for (size_t i = 0; i < vars.size(); ++i)
            images[vars[i].id()] = Word::letter(names[i]);
        note("form II: rank-" + std::to_string(vars.size()) + " extension of C(" + u_img.str() +
             ")");
    }

    void do_free_abelian(const FreeAbelianLevel& lv) {
        declare_vars(lv.vars);
        for (size_t i = 0; i < lv.vars.size(); ++i)
            for (size_t j = i + 1; j < lv.vars.size(); ++j)
                source_rels.push_back(
                    commutator(Word::letter(lv.vars[i]), Word::letter(lv.vars[j])));
        abelian_block_images(lv.vars);
    }

    void do_centralizer(const CentralizerLevel& lv) {
        declare_vars(lv.vars);
        for (size_t i = 0; i < lv.vars.size(); ++i)
            for (size_t j = i + 1; j < lv.vars.size(); ++j)
                source_rels.push_back(
                    commutator(Word::letter(lv.vars[i]), Word::letter(lv.vars[j])));
        for (const Word& u : lv.u_gens)
            for (Symbol x : lv.vars)
                source_rels.push_back(commutator(Word::letter(x), u));

        // U generating the trivial subgroup degenerates to form III.
        Word u_img = tower.britton_reduce(image_of(lv.u));
        std::vector<Word> gen_imgs;
        bool all_trivial = true;
        for (const Word& g : lv.u_gens) {
            Word gi = image_of(g);
            if (!tower.trivial(gi))
                all_trivial = false;
            gen_imgs.push_back(gi);
        }
        if (all_trivial || tower.trivial(u_img)) {
            note("form II degenerated to form III (trivial U)");
            abelian_block_images(lv.vars);
            return;
        }
        for (const Word& gi : gen_imgs)
            if (!tower.trivial(gi) && !tower.trivial(commutator(gi, u_img)))
                throw std::invalid_argument("form II payload: <U> is not inside C(u)");
        centralizer_block_images(u_img, lv.vars);
    }

    // ---- form I: quadratic case analysis ----

    std::vector<Symbol> pending_free; // variables freed by coefficient erasure

    // Coefficient preprocessing: erase conjugate atoms whose constant is
    // trivial in the current group; a trivial d is folded by turning the
    // rightmost conjugate atom into d. Freed variables become free letters.
    void preprocess(StandardQuadratic& sq) {
        std::vector<QuadraticAtom> kept;
        for (const auto& a : sq.atoms) {
            if (const auto* cj = std::get_if<ConjAtom>(&a)) {
                if (tower.trivial(cj->c)) {
                    pending_free.push_back(cj->z);
                    continue;
                }
            }
            kept.push_back(a);
        }
        sq.atoms = std::move(kept);
        if (!sq.d.empty() && tower.trivial(sq.d))
            sq.d = Word();
        if (sq.d.empty()) {
            for (size_t i = sq.atoms.size(); i-- > 0;) {
                if (const auto* cj = std::get_if<ConjAtom>(&sq.atoms[i])) {
                    sq.d = cj->c;
                    pending_free.push_back(cj->z);
                    sq.atoms.erase(sq.atoms.begin() + static_cast<ptrdiff_t>(i));
                    break;
                }
            }
        }
    }

    void do_quadratic(const QuadraticLevel& lv) {
        declare_vars(lv.vars);
        source_rels.push_back(lv.equation);

        QuadraticNormalization norm = to_standard_form(lv.equation, lv.vars);
        // Map coefficients into the current tower.
        StandardQuadratic sq = norm.standard;
        for (auto& a : sq.atoms)
            if (auto* cj = std::get_if<ConjAtom>(&a))
                cj->c = image_of(cj->c);
        sq.d = image_of(sq.d);

        preprocess(sq);
        dispatch_standard(sq);

        if (!pending_free.empty()) {
            note("freed conjugator variables handled as free letters");
            embed_free_letters(pending_free);
            pending_free.clear();
        }

        // Images for the original variables compose the normalizing
        // substitution with the standard-variable images.
        std::unordered_map<uint32_t, Word> std_images = images;
        for (Symbol v : lv.vars)
            images[v.id()] = substitute(norm.automorphism.at(v.id()), std_images);
    }

    // Assigns images to the *standard* variables of sq.
    void dispatch_standard(const StandardQuadratic& sq) {
        int p = 0, n = 0, m = sq.num_conj();
        for (const auto& a : sq.atoms) {
            if (std::holds_alternative<SquareAtom>(a))
                ++p;
            else if (std::holds_alternative<CommAtom>(a))
                ++n;
        }

        if (n == 0 && p == 0) {
            if (m == 0) {
                if (!sq.d.empty() && !tower.trivial(sq.d))
                    throw UnsupportedCase("degenerate quadratic level: nontrivial constant equation");
                note("form I: vacuous equation");
                return;
            }
            genus_zero(sq);
            return;
        }
        if (n > 0) {
            orientable_case(sq, n, m);
            return;
        }
        nonorientable_case(sq, p, m);
    }

    void orientable_case(const StandardQuadratic& sq, int n, int m) {
        if (n == 1 && m == 0 && sq.d.empty()) {
            // [x,y] = 1 is the rank-2 free abelian case.
            const auto& c = std::get<CommAtom>(sq.atoms[0]);
            embed_abelian_pair(c.x, c.y);
            note("form I: [x,y]=1 handled as Z^2");
            return;
        }
        if (n == 1 && m == 0 && !sq.d.empty())
            throw UnsupportedCase("[x,y]d is regular; its embedding needs the general regular-quadratic theorem");
        if (n == 2 && m == 0 && sq.d.empty())
            throw UnsupportedCase("[x1,y1][x2,y2] is regular; its embedding needs the general regular-quadratic theorem");
        GeneralPositionSearch gp = detect_general_position(sq, Target::from_tower(tower),
                                                           bounds.solution_radius);
        if (gp.found)
            throw UnsupportedCase("regular quadratic equation (chi <= -2, general position); out of scope");
        throw BoundExhausted("orientable quadratic: no general-position solution within radius " +
                             std::to_string(bounds.solution_radius) +
                             "; the all-commutative case cannot occur for this form");
    }

    // c1^{z1} ... ck^{zk} d with k >= 1.
    void genus_zero(const StandardQuadratic& sq) {
        std::vector<ConjAtom> atoms;
        for (const auto& a : sq.atoms)
            atoms.push_back(std::get<ConjAtom>(a));
        if (sq.d.empty() || tower.trivial(sq.d))
            throw UnsupportedCase("genus-zero equation with trivial constant survived preprocessing");

        if (atoms.size() == 1) {
            // c^z d: one extension of C(c), z -> t a.
            EqSystem sys = one_equation_system(sq);
            Assignment sol = find_solution(sys, "c^z d");
            Word a = sol.at(atoms[0].z);
            Symbol t = fresh_symbol("t");
            tower = tower.extend_centralizer(atoms[0].c, 1, {t}, bounds.centralizer_bound);
            images[atoms[0].z.id()] = Word::letter(t) * a;
            note("form I genus zero: c^z d, extension of C(" + atoms[0].c.str() + "), z -> t*" +
                 a.str());
            return;
        }

        GeneralPositionSearch gp = detect_general_position(sq, Target::from_tower(tower),
                                                           bounds.solution_radius);
        if (gp.found) {
            if (euler_char(sq) <= -2)
                throw UnsupportedCase("regular genus-zero equation (chi <= -2, general position); out of scope");
            throw UnsupportedCase("genus-zero equation with two conjugate atoms has a general-position "
                                  "solution; no commutative-case construction applies");
        }
        EqSystem sys = one_equation_system(sq);
        Assignment sol = find_solution(sys, "genus-zero commutative");
        commutative_extension(sq, {}, atoms, sol);
    }

    void nonorientable_case(const StandardQuadratic& sq, int p, int m) {
        std::vector<SquareAtom> squares;
        std::vector<ConjAtom> conjs;
        for (const auto& a : sq.atoms) {
            if (const auto* s = std::get_if<SquareAtom>(&a))
                squares.push_back(*s);
            else
                conjs.push_back(std::get<ConjAtom>(a));
        }

        if (p == 1 && m == 0 && sq.d.empty()) {
            images[squares[0].x.id()] = Word(); // torsion-free: x -> 1
            note("form I: x^2 = 1 forces x -> 1, no extension");
            return;
        }
        if (p == 1 && m == 0 && !sq.d.empty()) {
            EqSystem sys = one_equation_system(sq);
            Assignment sol = find_solution(sys, "x^2 d");
            images[squares[0].x.id()] = sol.at(squares[0].x);
            note("form I: x^2 d has the unique solution x -> " + sol.at(squares[0].x).str());
            return;
        }
        if (p == 2 && m == 0 && sq.d.empty()) {
            // x^2 y^2: xy lies in the radical; free-Z factor.
            Symbol w = fresh_symbol("zf");
            embed_free_letters({w});
            Word img = images.at(w.id());
            images.erase(w.id());
            images[squares[0].x.id()] = img;
            images[squares[1].x.id()] = img.inverse();
            note("form I: x^2 y^2, xy in the radical, free-Z factor");
            return;
        }
        if (p == 3 && m == 0 && sq.d.empty()) {
            GeneralPositionSearch gp = detect_general_position(sq, Target::from_tower(tower),
                                                               bounds.solution_radius);
            if (gp.found) {
                six_extensions(squares, *gp.witness);
                return;
            }
            // commutative: xyz in the radical, G * Z^2.
            auto [ix, iy] = embed_abelian_pair(squares[0].x, squares[1].x);
            images[squares[2].x.id()] = (ix * iy).inverse();
            note("form I: x^2 y^2 z^2 commutative, G * Z^2 with z -> (xy)^-1");
            return;
        }
        if (p >= 4 && m == 0 && sq.d.empty())
            throw UnsupportedCase("x1^2...xp^2 with p >= 4 is regular (general position always exists); out of scope");

        // punctured: d nontrivial here (preprocessing folded trivial d)
        GeneralPositionSearch gp = detect_general_position(sq, Target::from_tower(tower),
                                                           bounds.solution_radius);
        if (gp.found) {
            if (p == 2 && m == 0) {
                xxyyd_noncommutative(squares, sq.d, *gp.witness);
                return;
            }
            if (p == 1 && m == 1) {
                xxczd_noncommutative(squares[0], conjs[0], sq.d, *gp.witness);
                return;
            }
            throw UnsupportedCase("regular non-orientable equation (chi <= -2, general position); out of scope");
        }
        // all solutions commutative within the bound
        if (p == 1) {
            // x is pinned; reduce to the genus-zero equation c1^{z1}..ck^{zk} (d a^2).
            EqSystem sys = one_equation_system(sq);
            Assignment sol = find_solution(sys, "x^2 (conj atoms) d commutative");
            Word a = sol.at(squares[0].x);
            images[squares[0].x.id()] = a;
            StandardQuadratic rest;
            rest.orientable = true;
            for (const auto& c : conjs)
                rest.atoms.push_back(c);
            rest.d = tower.britton_reduce(sq.d * a * a);
            note("form I: x^2 (conj atoms) d commutative pins x -> " + a.str());
            preprocess(rest);
            dispatch_standard(rest);
            return;
        }
        EqSystem sys = one_equation_system(sq);
        Assignment sol = find_solution(sys, "squares+conj commutative");
        commutative_extension(sq, squares, conjs, sol);
    }

    // Common rank-(p+k-1) extension for the commutative mixed case; also the
    // pure genus-zero case (p = 0, rank k).
    void commutative_extension(const StandardQuadratic& sq, const std::vector<SquareAtom>& squares,
                               const std::vector<ConjAtom>& conjs, const Assignment& sol) {
        size_t p = squares.size(), k = conjs.size();
        std::vector<Word> conj_values; // c_j^{a_j}
        for (const ConjAtom& cj : conjs)
            conj_values.push_back(tower.britton_reduce(conjugate(cj.c, sol.at(cj.z))));
        Word sigma;
        for (const SquareAtom& s : squares)
            sigma = sigma * sol.at(s.x);
        sigma = tower.britton_reduce(sigma);

        Word anchor = !conj_values.empty() ? conj_values[0] : sigma;
        if (tower.trivial(anchor))
            throw BoundExhausted("commutative case found only a degenerate solution within the radius");
        for (const Word& cv : conj_values)
            if (!tower.trivial(commutator(cv, anchor)))
                throw std::logic_error("commutative classification violated by conjugate values");
        if (p > 0 && !sigma.empty() && !tower.trivial(commutator(sigma, anchor)))
            throw std::logic_error("commutative classification violated by the square product");

        // Rank k for the pure genus-zero case, p+k-1 when squares share the
        // extension (the last square variable is then determined).
        size_t rank = p == 0 ? k : p + k - 1;
        if (rank == 0)
            throw std::logic_error("commutative extension needs at least two atoms");
        std::vector<Symbol> names;
        for (size_t i = 0; i < rank; ++i)
            names.push_back(fresh_symbol("t"));
        tower = tower.extend_centralizer(anchor, static_cast<int>(rank), names,
                                         bounds.centralizer_bound);

        for (size_t j = 0; j < k; ++j)
            images[conjs[j].z.id()] = sol.at(conjs[j].z) * Word::letter(names[j]);
        if (p > 0) {
            Word tprod;
            for (size_t i = 0; i + 1 < p; ++i) {
                images[squares[i].x.id()] = Word::letter(names[k + i]);
                tprod = tprod * Word::letter(names[k + i]);
            }
            // The last square variable is determined: x_p -> (t_{k+1}..t_{k+p-1})^-1 sigma.
            images[squares[p - 1].x.id()] = tprod.inverse() * sigma;
        }
        std::ostringstream os;
        os << "form I commutative: rank-" << rank << " extension of C(" << anchor.str() << ")";
        if (p > 0)
            os << "; last square variable determined by the others (no free factor)";
        note(os.str());
        (void)sq;
    }

    void xxyyd_noncommutative(const std::vector<SquareAtom>& squares, const Word& d,
                              const Assignment& sol) {
        Word a = sol.at(squares[0].x), b = sol.at(squares[1].x);
        Symbol t = fresh_symbol("t");
        tower = tower.extend_centralizer(tower.britton_reduce(a * b), 1, {t},
                                         bounds.centralizer_bound);
        Word tw = Word::letter(t);
        Symbol s = fresh_symbol("s");
        tower = tower.extend_centralizer(a * tw * a * tw, 1, {s}, bounds.centralizer_bound);
        Word sw = Word::letter(s);
        Symbol r = fresh_symbol("r");
        tower = tower.extend_centralizer(sw.inverse() * a * tw * sw * tw.inverse() * b, 1, {r},
                                         bounds.centralizer_bound);
        Word rw = Word::letter(r);
        images[squares[0].x.id()] = conjugate(a * tw, sw) * rw; // (at)^s r
        images[squares[1].x.id()] = rw.inverse() * tw.inverse() * b;
        note("form I: x^2 y^2 d non-commutative; extensions over C(ab), C(atat), "
             "C(s^-1 a t s t^-1 b); psi(x)=(at)^s r, psi(y)=r^-1 t^-1 b");
        (void)d;
    }

    void xxczd_noncommutative(const SquareAtom& xsq, const ConjAtom& catom, const Word& d,
                              const Assignment& sol) {
        Word a = sol.at(xsq.x), b = sol.at(catom.z);
        Symbol t = fresh_symbol("t");
        tower = tower.extend_centralizer(d, 1, {t}, bounds.centralizer_bound);
        Word tw = Word::letter(t);
        Word cb = tower.britton_reduce(conjugate(catom.c, b));
        Symbol s = fresh_symbol("s");
        tower = tower.extend_centralizer(cb, 1, {s}, bounds.centralizer_bound);
        Word sw = Word::letter(s);
        Symbol r = fresh_symbol("r");
        tower = tower.extend_centralizer(conjugate(cb, tw), 1, {r}, bounds.centralizer_bound);
        Word rw = Word::letter(r);
        images[xsq.x.id()] = conjugate(a, tw);
        images[catom.z.id()] = b * sw * tw * rw;
        note("form I: x^2 c^z d non-commutative; extensions over C(d), C(c^b), C(c^{bt}); "
             "psi(x)=a^t, psi(z)=b s t r");
    }

    void six_extensions(const std::vector<SquareAtom>& squares, const Assignment& sol) {
        Word a = sol.at(squares[0].x), b = sol.at(squares[1].x), c = sol.at(squares[2].x);
        auto ext = [&](const Word& witness, const char* stem) {
            Symbol s = fresh_symbol(stem);
            tower = tower.extend_centralizer(tower.britton_reduce(witness), 1, {s},
                                             bounds.centralizer_bound);
            return Word::letter(s);
        };
        Word s = ext(a * b, "s");
        Word r = ext(s.inverse() * b * c, "r");
        Word v = ext(a * b * r * s.inverse() * b * c, "v");
        Word vas = v * a * s;
        Word t = ext(vas * vas, "t");
        Word sbr = s.inverse() * b * r;
        Word u = ext(sbr * sbr, "u");
        Word rcv = r.inverse() * c * v.inverse();
        Word w = ext(rcv * rcv, "w");
        images[squares[0].x.id()] = conjugate(vas, t);
        images[squares[1].x.id()] = conjugate(sbr, u);
        images[squares[2].x.id()] = conjugate(rcv, w);
        note("form I: x^2 y^2 z^2 general position; six extensions, psi(x)=(vas)^t, "
             "psi(y)=(s^-1 b r)^u, psi(z)=(r^-1 c v^-1)^w");
    }

    EqSystem one_equation_system(const StandardQuadratic& sq) {
        EqSystem sys;
        sys.name = "level";
        sys.variables = sq.variables();
        sys.equations = {sq.word()};
        // Coefficients are tower words; declare the tower alphabet as the
        // constant letters.
        sys.constants_group =
            std::make_shared<Presentation>("alpha(" + tower.name() + ")", tower.alphabet(),
                                           std::vector<Word>{});
        return sys;
    }

    Assignment find_solution(const EqSystem& sys, const std::string& what) {
        auto sols = hom_search(sys, Target::from_tower(tower), bounds.solution_radius);
        if (sols.empty())
            throw BoundExhausted("no solution of the " + what + " equation within radius " +
                                 std::to_string(bounds.solution_radius));
        return sols.front();
    }
};

// The coordinate group has a usable equality oracle for a few shapes: free
// products of free groups, a single free abelian block, and pure centralizer
// levels (where the coordinate group is the tower itself).
void attach_source_oracle(SourceGroup& src, const NtqSystem& sys, const Tower& result,
                          const std::unordered_map<uint32_t, Word>& images) {
    bool all_free = true, all_cent = true;
    for (const NtqLevel& lv : sys.levels) {
        if (!std::holds_alternative<FreeLevel>(lv))
            all_free = false;
        if (!std::holds_alternative<CentralizerLevel>(lv))
            all_cent = false;
    }
    if (all_free && sys.base->is_free()) {
        src.is_trivial = [](const Word& w) { return w.empty(); };
        return;
    }
    if (sys.levels.size() == 1 && std::holds_alternative<FreeAbelianLevel>(sys.levels[0])) {
        const auto& ab = std::get<FreeAbelianLevel>(sys.levels[0]);
        SourceGroup fp = SourceGroup::free_product_abelian(Tower(sys.base), ab.vars);
        src.is_trivial = fp.is_trivial;
        src.residue = fp.residue;
        return;
    }
    if (all_cent && !sys.levels.empty()) {
        // x -> stable letter is a renaming; the coordinate group is the tower.
        Tower copy = result;
        std::unordered_map<uint32_t, Word> rename = images;
        src.is_trivial = [copy, rename](const Word& w) {
            return copy.trivial(substitute(w, rename));
        };
        src.residue = [copy, rename](const Word& w) {
            return copy.abelian_residue(substitute(w, rename));
        };
        return;
    }
}

} // namespace

EmbeddingResult embed_ntq(const NtqSystem& sys, const EmbeddingBounds& bounds) {
    if (!sys.base)
        throw std::invalid_argument("NTQ system needs a base presentation");
    Builder b(sys.base, bounds);
    for (const NtqLevel& lv : sys.levels) {
        std::visit(
            [&](const auto& level) {
                using T = std::decay_t<decltype(level)>;
                if constexpr (std::is_same_v<T, FreeLevel>)
                    b.do_free(level);
                else if constexpr (std::is_same_v<T, FreeAbelianLevel>)
                    b.do_free_abelian(level);
                else if constexpr (std::is_same_v<T, CentralizerLevel>)
                    b.do_centralizer(level);
                else
                    b.do_quadratic(level);
            },
            lv);
    }

    EmbeddingResult res;
    res.tower = std::make_shared<Tower>(b.tower);
    res.case_trace = b.trace;

    GroupHom hom;
    hom.source.name = sys.name;
    hom.source.generators = b.source_gens;
    hom.source.relators = b.source_rels;
    attach_source_oracle(hom.source, sys, *res.tower, b.images);
    hom.target = res.tower;
    hom.images = b.images;
    for (Symbol g : sys.base->generators())
        if (!hom.images.count(g.id()))
            hom.images[g.id()] = Word::letter(g);
    res.hom = std::move(hom);

    HomVerification v = verify_hom(res.hom);
    if (!v.ok)
        throw std::logic_error("embedding produced a non-homomorphism (relator " +
                               std::to_string(v.failing_relator) + ")");
    if (bounds.verify_radius > 0)
        injectivity_sample(res.hom, bounds.verify_radius);
    return res;
}

std::vector<PipelineOutcome> run_pipeline(const std::shared_ptr<const Presentation>& source,
                                          const std::vector<PipelineInput>& inputs,
                                          const EmbeddingBounds& bounds) {
    std::vector<PipelineOutcome> out;
    for (const PipelineInput& in : inputs) {
        PipelineOutcome o;
        try {
            o.embedding = embed_ntq(in.ntq, bounds);
            GroupHom phi;
            phi.source = SourceGroup::from_presentation(source);
            phi.target = o.embedding.tower;
            for (Symbol z : source->generators()) {
                auto it = in.rho.find(z);
                Word rho_word = it != in.rho.end() ? it->second : Word::letter(z);
                phi.images[z.id()] = substitute(rho_word, o.embedding.hom.images);
            }
            HomVerification v = verify_hom(phi);
            if (!v.ok) {
                o.ok = false;
                o.error = "composed map fails on relator " + std::to_string(v.failing_relator);
                out.push_back(std::move(o));
                continue;
            }
            if (bounds.verify_radius > 0 && phi.source.is_trivial)
                o.injectivity = injectivity_sample(phi, bounds.verify_radius);
            o.phi = std::move(phi);
            o.ok = true;
        } catch (const std::exception& e) {
            o.ok = false;
            o.error = e.what();
        }
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace gt
