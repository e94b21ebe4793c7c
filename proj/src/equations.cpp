#include "gt/equations.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace gt {

Target Target::from_presentation(std::shared_ptr<const Presentation> p) {
    Target t;
    t.name = p->name();
    t.trivial = [p](const Word& w) { return p->trivial(w); };
    t.images = [p](int radius) { return p->ball(radius); };
    return t;
}

Target Target::from_tower(const Tower& tw) {
    Target t;
    Tower copy = tw;
    t.name = tw.name();
    t.trivial = [copy](const Word& w) { return copy.trivial(w); };
    t.images = [copy](int radius) { return copy.ball(radius); };
    return t;
}

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table, int identity)
    : name_(std::move(name)), table_(std::move(table)), identity_(identity) {
    for (int i = 0; i < order(); ++i) {
        Symbol s = Symbol::intern(name_ + "_e" + std::to_string(i));
        element_symbols_.push_back(s);
        element_of_symbol_[s] = i;
    }
}

int FiniteGroup::inv(int a) const {
    for (int b = 0; b < order(); ++b)
        if (mul(a, b) == identity_)
            return b;
    throw std::logic_error("not a group table");
}

int FiniteGroup::eval(const Word& w, const std::map<Symbol, int>& constant_images) const {
    int acc = identity_;
    for (const Letter& l : w.letters()) {
        int x;
        auto it = element_of_symbol_.find(l.symbol);
        if (it != element_of_symbol_.end()) {
            x = it->second;
        } else {
            auto ct = constant_images.find(l.symbol);
            if (ct == constant_images.end())
                throw std::invalid_argument("finite oracle: uninterpreted symbol '" + l.symbol.name() + "'");
            x = ct->second;
        }
        if (l.sign < 0)
            x = inv(x);
        acc = mul(acc, x);
    }
    return acc;
}

Target FiniteGroup::target(std::map<Symbol, int> constant_images) const {
    Target t;
    t.name = name_;
    const FiniteGroup* self = this;
    t.trivial = [self, constant_images](const Word& w) {
        return self->eval(w, constant_images) == self->identity();
    };
    t.images = [self](int) {
        std::vector<Word> out;
        for (int i = 0; i < self->order(); ++i)
            out.push_back(Word::letter(self->element_symbol(i)));
        return out;
    };
    return t;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric3() {
    // permutations of {0,1,2} in lexicographic order
    static std::shared_ptr<const FiniteGroup> g = [] {
        std::vector<std::array<int, 3>> perms;
        std::array<int, 3> p{0, 1, 2};
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        std::vector<std::vector<int>> table(6, std::vector<int>(6));
        for (size_t a = 0; a < 6; ++a) {
            for (size_t b = 0; b < 6; ++b) {
                std::array<int, 3> c;
                for (int i = 0; i < 3; ++i)
                    c[static_cast<size_t>(i)] =
                        perms[a][static_cast<size_t>(perms[b][static_cast<size_t>(i)])];
                table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
            }
        }
        return std::make_shared<FiniteGroup>("S3", std::move(table), 0);
    }();
    return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::dihedral4() {
    // elements r^i f^j, i<4, j<2, index = i + 4j; r f = f r^-1
    static std::shared_ptr<const FiniteGroup> g = [] {
        auto idx = [](int i, int j) { return (i % 4 + 4) % 4 + 4 * j; };
        std::vector<std::vector<int>> table(8, std::vector<int>(8));
        for (int i1 = 0; i1 < 4; ++i1)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int i2 = 0; i2 < 4; ++i2)
                    for (int j2 = 0; j2 < 2; ++j2) {
                        // (r^i1 f^j1)(r^i2 f^j2) = r^(i1 + s i2) f^(j1+j2), s = (-1)^j1
                        int i = i1 + (j1 ? -i2 : i2);
                        int j = (j1 + j2) % 2;
                        table[static_cast<size_t>(idx(i1, j1))][static_cast<size_t>(idx(i2, j2))] =
                            idx(i, j);
                    }
        return std::make_shared<FiniteGroup>("D4", std::move(table), 0);
    }();
    return g;
}

void EqSystem::validate() const {
    std::set<Symbol> vars(variables.begin(), variables.end());
    if (vars.size() != variables.size())
        throw std::invalid_argument("duplicate variable");
    std::set<Symbol> gens;
    if (constants_group)
        gens.insert(constants_group->generators().begin(), constants_group->generators().end());
    for (Symbol v : variables)
        if (gens.count(v))
            throw std::invalid_argument("variable '" + v.name() + "' collides with a generator");
    std::set<Symbol> used;
    for (const Word& e : equations)
        for (const Letter& l : e.letters()) {
            if (vars.count(l.symbol)) {
                used.insert(l.symbol);
                continue;
            }
            // With no constants group attached, non-variables are taken as
            // constants of whatever target evaluates the system.
            if (constants_group && !gens.count(l.symbol))
                throw std::invalid_argument("equation uses undeclared symbol '" + l.symbol.name() + "'");
        }
    // Unused declared variables are tolerated: empty systems with free
    // variables are meaningful inputs for the hom-diagram construction.
    (void)used;
}

bool EqSystem::is_variable(Symbol s) const {
    return std::find(variables.begin(), variables.end(), s) != variables.end();
}

EvalResult evaluate(const EqSystem& s, const Assignment& phi, const Target& target) {
    std::unordered_map<uint32_t, Word> images;
    for (Symbol v : s.variables) {
        auto it = phi.find(v);
        if (it == phi.end())
            throw std::invalid_argument("assignment misses variable '" + v.name() + "'");
        images[v.id()] = it->second;
    }
    for (size_t i = 0; i < s.equations.size(); ++i) {
        if (!target.trivial(substitute(s.equations[i], images)))
            return {EvalOutcome::Violated, static_cast<int>(i)};
    }
    return {EvalOutcome::Satisfied, -1};
}

std::vector<Assignment> hom_search(const EqSystem& s, const Target& target, int radius,
                                   int threads) {
    s.validate();
    std::vector<Word> images = target.images(radius);
    size_t n = s.variables.size();
    std::vector<Assignment> found;
    if (n == 0) {
        Assignment empty;
        if (evaluate(s, empty, target).outcome == EvalOutcome::Satisfied)
            found.push_back(empty);
        return found;
    }

    auto scan = [&](size_t first_lo, size_t first_hi, std::vector<Assignment>& out) {
        std::vector<size_t> idx(n, 0);
        idx[0] = first_lo;
        if (first_lo >= first_hi)
            return;
        for (;;) {
            Assignment phi;
            for (size_t i = 0; i < n; ++i)
                phi[s.variables[i]] = images[idx[i]];
            if (evaluate(s, phi, target).outcome == EvalOutcome::Satisfied)
                out.push_back(std::move(phi));
            size_t k = n;
            while (k > 0) {
                --k;
                size_t lim = (k == 0) ? first_hi : images.size();
                if (++idx[k] < lim)
                    break;
                if (k == 0)
                    return;
                idx[k] = 0;
            }
        }
    };

    int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(images.size())));
    if (nthreads == 1) {
        scan(0, images.size(), found);
        return found;
    }
    std::vector<std::vector<Assignment>> parts(static_cast<size_t>(nthreads));
    std::vector<std::thread> pool;
    size_t chunk = (images.size() + static_cast<size_t>(nthreads) - 1) / static_cast<size_t>(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        size_t lo = static_cast<size_t>(t) * chunk;
        size_t hi = std::min(images.size(), lo + chunk);
        pool.emplace_back(scan, lo, hi, std::ref(parts[static_cast<size_t>(t)]));
    }
    for (auto& th : pool)
        th.join();
    for (auto& p : parts)
        for (auto& a : p)
            found.push_back(std::move(a));
    return found;
}

EqSystem TriangularSystem::as_eq_system(const std::string& name) const {
    EqSystem s;
    s.name = name;
    s.constants_group = constants_group;
    std::set<Symbol> used;
    for (const auto& t : triples)
        for (int k : t)
            used.insert(variables[static_cast<size_t>(k)]);
    for (const auto& [v, w] : constant_equations)
        used.insert(variables[static_cast<size_t>(v)]);
    for (Symbol v : variables)
        if (used.count(v))
            s.variables.push_back(v);
    for (const auto& t : triples) {
        Word e = Word::letter(variables[static_cast<size_t>(t[0])]) *
                 Word::letter(variables[static_cast<size_t>(t[1])]) *
                 Word::letter(variables[static_cast<size_t>(t[2])]);
        s.equations.push_back(e);
    }
    for (const auto& [v, w] : constant_equations)
        s.equations.push_back(Word::letter(variables[static_cast<size_t>(v)]) * w.inverse());
    return s;
}

Assignment TriangularSystem::extend(const Assignment& original,
                                    const std::function<Word(const Word&)>& normalize) const {
    Assignment full;
    for (Symbol v : original_variables) {
        Word val = original.at(v);
        if (std::find(flipped.begin(), flipped.end(), v) != flipped.end())
            val = val.inverse();
        full[v] = val;
    }
    for (const FreshDef& d : log) {
        switch (d.kind) {
        case FreshDef::Kind::Constant:
            full[d.var] = d.value;
            break;
        case FreshDef::Kind::InverseOf:
            full[d.var] = full.at(d.arg1).inverse();
            break;
        case FreshDef::Kind::ProductOf:
            full[d.var] = full.at(d.arg1) * full.at(d.arg2);
            break;
        }
    }
    if (normalize)
        for (auto& [v, w] : full)
            w = normalize(w);
    return full;
}

Assignment TriangularSystem::restrict(const Assignment& full) const {
    Assignment out;
    for (Symbol v : original_variables) {
        Word val = full.at(v);
        if (std::find(flipped.begin(), flipped.end(), v) != flipped.end())
            val = val.inverse();
        out[v] = val;
    }
    return out;
}

TriangularSystem triangulate(const EqSystem& s) {
    s.validate();
    TriangularSystem ts;
    ts.constants_group = s.constants_group;
    ts.original_variables = s.variables;
    ts.variables = s.variables;

    auto var_index = [&](Symbol v) {
        auto it = std::find(ts.variables.begin(), ts.variables.end(), v);
        return static_cast<int>(it - ts.variables.begin());
    };
    auto add_fresh = [&](const std::string& stem) {
        Symbol v = fresh_symbol(stem);
        ts.variables.push_back(v);
        return v;
    };

    // Occurrence signs per variable across the whole system.
    std::map<Symbol, std::pair<bool, bool>> occ; // (positive, negative)
    for (const Word& e : s.equations)
        for (const Letter& l : e.letters())
            if (s.is_variable(l.symbol)) {
                if (l.sign > 0)
                    occ[l.symbol].first = true;
                else
                    occ[l.symbol].second = true;
            }
    // Variables occurring only inverted: flip them globally.
    std::set<Symbol> flip;
    for (auto& [v, pn] : occ)
        if (pn.second && !pn.first) {
            flip.insert(v);
            ts.flipped.push_back(v);
        }

    std::optional<Symbol> identity_var; // shared fresh variable pinned to 1
    auto get_identity_var = [&]() {
        if (!identity_var) {
            Symbol e = add_fresh("one");
            ts.log.push_back({e, TriangularSystem::FreshDef::Kind::Constant, Symbol(), Symbol(), Word()});
            ts.constant_equations.emplace_back(var_index(e), Word());
            identity_var = e;
        }
        return *identity_var;
    };
    std::map<Symbol, Symbol> bar_of; // z -> fresh z_bar with z z_bar = 1
    auto get_bar = [&](Symbol z) {
        auto it = bar_of.find(z);
        if (it != bar_of.end())
            return it->second;
        Symbol zb = add_fresh(z.name() + "_inv");
        ts.log.push_back({zb, TriangularSystem::FreshDef::Kind::InverseOf, z, Symbol(), Word()});
        Symbol e = get_identity_var();
        ts.triples.push_back({var_index(z), var_index(zb), var_index(e)});
        bar_of[z] = zb;
        return zb;
    };

    for (const Word& eq : s.equations) {
        // Rewrite the equation as a sequence of positive variables, creating
        // constant-pinned variables for maximal constant runs and bar
        // variables for inverted occurrences.
        std::vector<int> seq; // variable indices
        size_t i = 0;
        const auto& ls = eq.letters();
        while (i < ls.size()) {
            if (s.is_variable(ls[i].symbol)) {
                Symbol v = ls[i].symbol;
                int sign = ls[i].sign;
                if (flip.count(v))
                    sign = -sign;
                seq.push_back(var_index(sign > 0 ? v : get_bar(v)));
                ++i;
            } else {
                std::vector<Letter> run;
                while (i < ls.size() && !s.is_variable(ls[i].symbol))
                    run.push_back(ls[i++]);
                Word c(std::move(run));
                Symbol cv = add_fresh("c");
                ts.log.push_back({cv, TriangularSystem::FreshDef::Kind::Constant, Symbol(), Symbol(), c});
                ts.constant_equations.emplace_back(var_index(cv), c);
                seq.push_back(var_index(cv));
            }
        }
        if (seq.empty())
            continue; // constant-only equation reduced to nothing
        // Fold to length three from the right: w1..wk -> w1..w{k-2} v with
        // v_bar w_{k-1} w_k = 1 and v v_bar = 1.
        while (seq.size() > 3) {
            Symbol v = add_fresh("u");
            Symbol vb = add_fresh("u_inv");
            int a = seq[seq.size() - 2], b = seq[seq.size() - 1];
            ts.log.push_back({v, TriangularSystem::FreshDef::Kind::ProductOf,
                              ts.variables[static_cast<size_t>(a)], ts.variables[static_cast<size_t>(b)],
                              Word()});
            ts.log.push_back({vb, TriangularSystem::FreshDef::Kind::InverseOf, v, Symbol(), Word()});
            ts.triples.push_back({var_index(vb), a, b});
            Symbol e = get_identity_var();
            ts.triples.push_back({var_index(v), var_index(vb), var_index(e)});
            seq.resize(seq.size() - 2);
            seq.push_back(var_index(v));
        }
        if (seq.size() == 3) {
            ts.triples.push_back({seq[0], seq[1], seq[2]});
        } else if (seq.size() == 2) {
            Symbol e = get_identity_var();
            ts.triples.push_back({seq[0], seq[1], var_index(e)});
        } else { // single variable equals 1
            ts.constant_equations.emplace_back(seq[0], Word());
        }
    }
    return ts;
}

namespace {

// Constant-equation values for fresh constant variables need the extend()
// machinery to know them; they are recorded as constant equations, so extend
// resolves them here.
} // namespace

long count_triangular_solutions(const TriangularSystem& ts, const FiniteGroup& g,
                                const std::map<Symbol, int>& constant_images,
                                std::vector<std::map<Symbol, int>>* out) {
    size_t n = ts.variables.size();
    std::vector<int> value(n, -1);

    // Pin constant equations.
    std::vector<std::pair<size_t, int>> pins;
    for (const auto& [vi, w] : ts.constant_equations)
        pins.emplace_back(static_cast<size_t>(vi), g.eval(w, constant_images));

    auto propagate = [&](std::vector<int>& val) -> bool {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& t : ts.triples) {
                int known = 0;
                for (int k : t)
                    if (val[static_cast<size_t>(k)] >= 0)
                        ++known;
                if (known == 3) {
                    int p = g.mul(g.mul(val[static_cast<size_t>(t[0])], val[static_cast<size_t>(t[1])]),
                                  val[static_cast<size_t>(t[2])]);
                    if (p != g.identity())
                        return false;
                } else if (known == 2) {
                    int a = val[static_cast<size_t>(t[0])], b = val[static_cast<size_t>(t[1])],
                        c = val[static_cast<size_t>(t[2])];
                    if (a < 0)
                        val[static_cast<size_t>(t[0])] = g.inv(g.mul(b, c));
                    else if (b < 0)
                        val[static_cast<size_t>(t[1])] = g.mul(g.inv(a), g.inv(c));
                    else
                        val[static_cast<size_t>(t[2])] = g.inv(g.mul(a, b));
                    changed = true;
                }
            }
        }
        return true;
    };

    for (auto& [i, v] : pins) {
        if (value[i] >= 0 && value[i] != v)
            return 0;
        value[i] = v;
    }

    long count = 0;
    std::function<void(std::vector<int>)> rec = [&](std::vector<int> val) {
        if (!propagate(val))
            return;
        size_t free_i = n;
        for (size_t i = 0; i < n; ++i)
            if (val[i] < 0) {
                free_i = i;
                break;
            }
        if (free_i == n) {
            ++count;
            if (out) {
                std::map<Symbol, int> sol;
                for (size_t i = 0; i < n; ++i)
                    sol[ts.variables[i]] = val[i];
                out->push_back(std::move(sol));
            }
            return;
        }
        for (int v = 0; v < g.order(); ++v) {
            val[free_i] = v;
            rec(val);
        }
    };
    rec(value);
    return count;
}

RadicalSample radical_sample(const EqSystem& s, const Word& w, const Target& target, int radius) {
    for (const Assignment& phi : hom_search(s, target, radius)) {
        std::unordered_map<uint32_t, Word> images;
        for (const auto& [v, img] : phi)
            images[v.id()] = img;
        if (!target.trivial(substitute(w, images)))
            return {RadicalOutcome::Excluded, phi};
    }
    return {RadicalOutcome::InRadicalUpToBound, std::nullopt};
}

std::shared_ptr<const Presentation> coordinate_presentation(const EqSystem& s) {
    std::vector<Symbol> gens = s.variables;
    std::vector<Word> rels;
    if (!s.coefficient_free && s.constants_group) {
        for (Symbol g : s.constants_group->generators())
            gens.push_back(g);
        rels = s.constants_group->relators();
    }
    for (const Word& e : s.equations) {
        Word core = cyclic_reduce(e).core;
        if (!core.empty())
            rels.push_back(core);
    }
    return std::make_shared<Presentation>("coord(" + s.name + ")", std::move(gens), std::move(rels));
}

} // namespace gt
