#include "gt/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gt {

std::string CanonicalConfig::theoretical_L(int q, int alphabet_size) const {
    double e = 5050.0 * std::pow(delta + 1.0, 6.0) * std::pow(2.0 * alphabet_size, 2.0 * delta);
    std::ostringstream os;
    os << q << " * 2^" << static_cast<long long>(e);
    return os.str();
}

Word theta(const Word& g, const Presentation& gamma, RepScheme scheme) {
    if (scheme == RepScheme::Geodesic)
        return g; // freely reduced words are geodesic representatives
    return gamma.dehn_reduce(g);
}

namespace {

Word slot_word(const ReducedInstance& inst, size_t j, int k) {
    // x_k^(j) c_k^(j) (x_{k+1}^(j))^-1 with k+1 cyclic in {0,1,2}
    const auto& xs = inst.x_vars[j];
    const auto& cs = inst.c_words[j];
    return Word::letter(xs[static_cast<size_t>(k)]) * cs[static_cast<size_t>(k)] *
           Word::letter(xs[static_cast<size_t>((k + 1) % 3)], -1);
}

} // namespace

std::vector<ReducedInstance> generate_instances(const TriangularSystem& ts,
                                                const CanonicalConfig& cfg) {
    const Presentation& gamma = *ts.constants_group;
    auto free_on_A = std::make_shared<Presentation>("F(" + gamma.name() + ")", gamma.generators(),
                                                    std::vector<Word>{});

    // Valid c-triples: all length < ell with c1 c2 c3 = 1 in Gamma.
    std::vector<Word> candidates = gamma.ball(cfg.ell - 1);
    std::vector<std::array<Word, 3>> valid;
    for (const Word& c1 : candidates)
        for (const Word& c2 : candidates)
            for (const Word& c3 : candidates)
                if (gamma.trivial(c1 * c2 * c3))
                    valid.push_back({c1, c2, c3});

    size_t q = ts.triples.size();
    std::vector<std::array<Symbol, 3>> xs;
    for (size_t j = 0; j < q; ++j) {
        std::array<Symbol, 3> row;
        for (int k = 0; k < 3; ++k)
            row[static_cast<size_t>(k)] =
                fresh_symbol("x" + std::to_string(k + 1) + "_" + std::to_string(j + 1));
        xs.push_back(row);
    }

    // Slots per variable index, and the pinned constants.
    std::vector<std::vector<std::pair<size_t, int>>> slots(ts.variables.size());
    for (size_t j = 0; j < q; ++j)
        for (int k = 0; k < 3; ++k)
            slots[static_cast<size_t>(ts.triples[j][static_cast<size_t>(k)])].emplace_back(j, k);
    std::vector<std::optional<Word>> pinned(ts.variables.size());
    for (const auto& [vi, w] : ts.constant_equations)
        pinned[static_cast<size_t>(vi)] = w;

    std::vector<ReducedInstance> out;
    if (q == 0) {
        // No triangular equations: a single instance carrying only the
        // constant pins and free variables.
        ReducedInstance inst;
        inst.system.name = "S_1";
        inst.system.constants_group = free_on_A;
        for (size_t s = 0; s < ts.variables.size(); ++s) {
            if (pinned[s]) {
                inst.rho[ts.variables[s]] = theta(*pinned[s], gamma, cfg.scheme);
            } else {
                Symbol f = fresh_symbol("y");
                inst.system.variables.push_back(f);
                inst.rho[ts.variables[s]] = Word::letter(f);
            }
        }
        out.push_back(std::move(inst));
        return out;
    }

    if (valid.empty())
        return out;
    std::vector<size_t> choice(q, 0);
    bool done = false;
    while (!done) {
        ReducedInstance inst;
        inst.system.name = "S_" + std::to_string(out.size() + 1);
        inst.system.constants_group = free_on_A;
        inst.x_vars = xs;
        for (size_t j = 0; j < q; ++j)
            inst.c_words.push_back(valid[choice[j]]);
        for (const auto& row : xs)
            for (Symbol x : row)
                inst.system.variables.push_back(x);

        // Type (14): one equation per consecutive pair of coinciding slots.
        for (size_t s = 0; s < slots.size(); ++s) {
            for (size_t a = 0; a + 1 < slots[s].size(); ++a) {
                Word lhs = slot_word(inst, slots[s][a].first, slots[s][a].second);
                Word rhs = slot_word(inst, slots[s][a + 1].first, slots[s][a + 1].second);
                inst.system.equations.push_back(lhs * rhs.inverse());
            }
        }
        // Type (15): slots of constant-pinned variables.
        for (size_t s = 0; s < slots.size(); ++s) {
            if (!pinned[s])
                continue;
            Word rep = theta(*pinned[s], gamma, cfg.scheme);
            for (const auto& [j, k] : slots[s])
                inst.system.equations.push_back(slot_word(inst, j, k) * rep.inverse());
        }
        // rho: first slot of each variable, or the canonical representative.
        for (size_t s = 0; s < ts.variables.size(); ++s) {
            if (pinned[s] && slots[s].empty()) {
                inst.rho[ts.variables[s]] = theta(*pinned[s], gamma, cfg.scheme);
            } else if (!slots[s].empty()) {
                inst.rho[ts.variables[s]] = slot_word(inst, slots[s][0].first, slots[s][0].second);
            } else {
                Symbol f = fresh_symbol("y");
                inst.system.variables.push_back(f);
                inst.rho[ts.variables[s]] = Word::letter(f);
            }
        }
        out.push_back(std::move(inst));

        done = true;
        for (size_t j = q; j-- > 0;) {
            if (++choice[j] < valid.size()) {
                done = false;
                break;
            }
            choice[j] = 0;
        }
    }
    return out;
}

PullbackResult check_pullback(const ReducedInstance& inst, const TriangularSystem& ts,
                              const Assignment& phi) {
    const Presentation& gamma = *ts.constants_group;
    std::unordered_map<uint32_t, Word> images;
    for (const auto& [v, w] : phi)
        images[v.id()] = w;

    auto value = [&](size_t var_index) {
        return substitute(inst.rho.at(ts.variables[var_index]), images);
    };

    int idx = 0;
    for (const auto& t : ts.triples) {
        Word w = value(static_cast<size_t>(t[0])) * value(static_cast<size_t>(t[1])) *
                 value(static_cast<size_t>(t[2]));
        if (!gamma.trivial(w))
            return {PullbackOutcome::Violation, idx};
        ++idx;
    }
    for (const auto& [vi, c] : ts.constant_equations) {
        if (!gamma.trivial(value(static_cast<size_t>(vi)) * c.inverse()))
            return {PullbackOutcome::Violation, idx};
        ++idx;
    }
    return {PullbackOutcome::Ok, -1};
}

FreeSystemSolver brute_force_solver(int radius) {
    return [radius](const EqSystem& sys) {
        std::vector<LeafSolution> leaves;
        if (sys.equations.empty()) {
            leaves.push_back(LeafSolution{sys.variables, {}});
            for (Symbol v : sys.variables)
                leaves.back().map[v] = Word::letter(v);
            return leaves;
        }
        Target f = Target::from_presentation(sys.constants_group);
        for (Assignment& a : hom_search(sys, f, radius))
            leaves.push_back(LeafSolution{{}, std::move(a)});
        return leaves;
    };
}

std::vector<HomTreeBranch> HomTree::branches() const {
    std::vector<HomTreeBranch> out;
    for (size_t i = 0; i < instances.size(); ++i)
        for (size_t l = 0; l < leaves[i].size(); ++l)
            out.push_back({i, l});
    return out;
}

std::vector<Assignment> HomTree::branch_family(const HomTreeBranch& b, int bound) const {
    const ReducedInstance& inst = instances[b.instance_index];
    const LeafSolution& leaf = leaves[b.instance_index][b.leaf_index];

    std::vector<Assignment> family;
    std::vector<Word> param_images = gamma->ball(bound);
    std::vector<size_t> idx(leaf.free_vars.size(), 0);
    for (;;) {
        std::unordered_map<uint32_t, Word> y_images;
        for (size_t i = 0; i < leaf.free_vars.size(); ++i)
            y_images[leaf.free_vars[i].id()] = param_images[idx[i]];

        std::unordered_map<uint32_t, Word> inst_images;
        for (const auto& [v, w] : leaf.map)
            inst_images[v.id()] = substitute(w, y_images);

        Assignment full;
        for (size_t s = 0; s < triangular.variables.size(); ++s) {
            Symbol z = triangular.variables[s];
            full[z] = substitute(inst.rho.at(z), inst_images);
        }
        family.push_back(triangular.restrict(full));

        if (leaf.free_vars.empty())
            break;
        size_t k = leaf.free_vars.size();
        bool done = true;
        while (k > 0) {
            --k;
            if (++idx[k] < param_images.size()) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if (done)
            break;
    }
    return family;
}

HomTree build_hom_tree(const EqSystem& s, const CanonicalConfig& cfg,
                       const FreeSystemSolver& solver) {
    HomTree tree;
    tree.gamma = s.constants_group;
    tree.triangular = triangulate(s);
    tree.instances = generate_instances(tree.triangular, cfg);
    tree.leaves.resize(tree.instances.size());
    for (size_t i = 0; i < tree.instances.size(); ++i) {
        try {
            tree.leaves[i] = solver(tree.instances[i].system);
        } catch (const std::exception& e) {
            tree.failures.emplace_back(i, e.what());
        }
    }
    return tree;
}

} // namespace gt
