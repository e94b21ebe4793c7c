#pragma once

#include "gt/equations.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gt {

enum class RepScheme { Geodesic, Bounded }; // free base vs small-cancellation base

// Operative configuration for instance generation. The theoretical constant
// L = q * 2^(5050 (delta+1)^6 (2|A|)^(2 delta)) is astronomically larger than
// anything usable, so the working cap is `ell` and L is only reported.
struct CanonicalConfig {
    int ell = 2; // c-words have length < ell
    RepScheme scheme = RepScheme::Geodesic;
    int delta = 0; // hyperbolicity constant used for the report

    std::string theoretical_L(int q, int alphabet_size) const;
};

// Representative word equal to g in Gamma: the freely reduced word for a free
// base, the Dehn-reduced word for a small-cancellation base.
Word theta(const Word& g, const Presentation& gamma, RepScheme scheme);

// One generated system over F with its word mapping rho.
struct ReducedInstance {
    EqSystem system;                        // over the free group on Gamma's generators
    std::map<Symbol, Word> rho;             // z_s -> x c x^-1 pattern or theta(a_s)
    std::vector<std::array<Word, 3>> c_words; // chosen c-triples, one per triangular equation
    std::vector<std::array<Symbol, 3>> x_vars; // per-equation canonical variables
};

std::vector<ReducedInstance> generate_instances(const TriangularSystem& ts,
                                                const CanonicalConfig& cfg);

enum class PullbackOutcome { Ok, Violation };
struct PullbackResult {
    PullbackOutcome outcome;
    int violated_equation; // index into the triangular system's equations
};
// Checks that rho . phi . pi solves the triangular system (and hence the
// original system) over Gamma, for an instance solution phi over F.
PullbackResult check_pullback(const ReducedInstance& inst, const TriangularSystem& ts,
                              const Assignment& phi);

// Solver interface standing in for the Hom-diagram machinery over free
// groups: returns leaf descriptions for a system over F. A leaf is a word map
// into F(Y) * F, parametrized by the free variables Y.
struct LeafSolution {
    std::vector<Symbol> free_vars; // Y
    Assignment map;                // instance variable -> word over Y + A
};
using FreeSystemSolver = std::function<std::vector<LeafSolution>(const EqSystem&)>;

// Default solver: an empty system yields one parametric leaf; otherwise
// bounded brute-force enumeration yields closed leaves.
FreeSystemSolver brute_force_solver(int radius);

struct HomTreeBranch {
    size_t instance_index;
    size_t leaf_index;
};

struct HomTree {
    std::shared_ptr<const Presentation> gamma;
    TriangularSystem triangular;
    std::vector<ReducedInstance> instances;
    std::vector<std::vector<LeafSolution>> leaves; // per instance
    std::vector<std::pair<size_t, std::string>> failures; // instance index, reason

    std::vector<HomTreeBranch> branches() const;
    // All homomorphisms of the branch family with parameter images of length
    // <= bound: assignments for the *original* system variables, over Gamma.
    std::vector<Assignment> branch_family(const HomTreeBranch& b, int bound) const;
};

HomTree build_hom_tree(const EqSystem& s, const CanonicalConfig& cfg,
                       const FreeSystemSolver& solver);

} // namespace gt
