#pragma once

#include "gt/presentation.hpp"
#include "gt/tower.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gt {

// Assignment of target words to variables.
using Assignment = std::map<Symbol, Word>;

// Evaluation/search target: anything with a word problem and an image
// enumerator. Words handed to `trivial` mix variable images and constants.
struct Target {
    std::string name;
    std::function<bool(const Word&)> trivial;
    std::function<std::vector<Word>(int)> images; // candidate variable images per radius

    static Target from_presentation(std::shared_ptr<const Presentation> p);
    static Target from_tower(const Tower& t);
};

// Finite oracle group with a fixed interpretation of the constant generators;
// exact ground truth for solution-set tests. Elements appear as words in
// dedicated element symbols e0..e{n-1}.
class FiniteGroup {
  public:
    static std::shared_ptr<const FiniteGroup> symmetric3();
    static std::shared_ptr<const FiniteGroup> dihedral4();

    FiniteGroup(std::string name, std::vector<std::vector<int>> table, int identity);

    int order() const { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    int inv(int a) const;
    int identity() const { return identity_; }
    Symbol element_symbol(int i) const { return element_symbols_[static_cast<size_t>(i)]; }

    // Interpret constants by the given map; unmapped non-element symbols fail.
    int eval(const Word& w, const std::map<Symbol, int>& constant_images) const;
    Target target(std::map<Symbol, int> constant_images) const;

  private:
    std::string name_;
    std::vector<std::vector<int>> table_;
    int identity_;
    std::vector<Symbol> element_symbols_;
    std::map<Symbol, int> element_of_symbol_;
};

// Finite set of equations over Gamma[X]; equations are words that equal 1.
struct EqSystem {
    std::string name;
    std::vector<Symbol> variables;
    std::shared_ptr<const Presentation> constants_group;
    std::vector<Word> equations;
    bool coefficient_free = false;

    void validate() const; // every equation letter is a variable or generator
    bool is_variable(Symbol s) const;
};

enum class EvalOutcome { Satisfied, Violated };
struct EvalResult {
    EvalOutcome outcome;
    int violated_index; // -1 when satisfied
};
EvalResult evaluate(const EqSystem& s, const Assignment& phi, const Target& target);

// Exhaustive bounded search for solutions; deterministic lexicographic order.
// May partition across threads; results are merged in enumeration order.
std::vector<Assignment> hom_search(const EqSystem& s, const Target& target, int radius,
                                   int threads = 1);

// Triangular shape of Lemma-2.1 type: positive triples z z' z'' = 1 plus
// constant equations z = a. Fresh variables carry a log that induces the
// solution-set bijection with the source system.
struct TriangularSystem {
    std::vector<Symbol> variables; // originals first, then fresh
    std::vector<std::array<int, 3>> triples;
    std::vector<std::pair<int, Word>> constant_equations;

    struct FreshDef {
        enum class Kind { InverseOf, ProductOf, Constant };
        Symbol var;
        Kind kind;
        Symbol arg1, arg2; // InverseOf: arg1; ProductOf: arg1*arg2
        Word value;        // Constant
    };
    std::vector<FreshDef> log;
    std::vector<Symbol> flipped; // original vars replaced by their inverses

    std::shared_ptr<const Presentation> constants_group;
    std::vector<Symbol> original_variables;

    EqSystem as_eq_system(const std::string& name) const;

    // Extend a solution of the source system to the fresh variables.
    Assignment extend(const Assignment& original,
                      const std::function<Word(const Word&)>& normalize) const;
    // Restrict a solution of the triangular system back to the source system.
    Assignment restrict(const Assignment& full) const;
};

TriangularSystem triangulate(const EqSystem& s);

// Count solutions of a triangular system over a finite oracle by enumerating
// only the variables that propagation cannot determine.
long count_triangular_solutions(const TriangularSystem& ts, const FiniteGroup& g,
                                const std::map<Symbol, int>& constant_images,
                                std::vector<std::map<Symbol, int>>* out = nullptr);

enum class RadicalOutcome { InRadicalUpToBound, Excluded };
struct RadicalSample {
    RadicalOutcome outcome;
    std::optional<Assignment> witness; // solution sending w to a nontrivial element
};
RadicalSample radical_sample(const EqSystem& s, const Word& w, const Target& target, int radius);

// Naive coordinate-group presentation <X, A | S, R>; no radical computation.
std::shared_ptr<const Presentation> coordinate_presentation(const EqSystem& s);

} // namespace gt
