#pragma once

#include "gt/equations.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace gt {

// Atoms of standard quadratic words: [x,y], x^2, z^-1 c z.
struct CommAtom {
    Symbol x, y;
};
struct SquareAtom {
    Symbol x;
};
struct ConjAtom {
    Symbol z;
    Word c;
};
using QuadraticAtom = std::variant<CommAtom, SquareAtom, ConjAtom>;

Word atom_word(const QuadraticAtom& a);

// One of the four standard forms: genus atoms (commutators or squares), then
// conjugate atoms, then the constant d. d may be empty only where the form
// allows (closed forms, or punctured words whose constant collapsed).
struct StandardQuadratic {
    bool orientable = true;
    std::vector<QuadraticAtom> atoms;
    Word d;

    int genus() const;     // n
    int num_conj() const;  // m
    bool punctured() const { return num_conj() > 0 || !d.empty(); }
    int form() const;      // 3..6
    Word word() const;     // genus atoms, conj atoms, then d
    std::vector<Symbol> variables() const;
    const std::vector<QuadraticAtom>& atom_list() const { return atoms; }
};

enum class Quadraticity { No, Quadratic, StrictlyQuadratic };
Quadraticity is_quadratic(const EqSystem& s);
Quadraticity is_quadratic_word(const Word& w, const std::vector<Symbol>& vars);

// Variable substitution realizing the normalization: s.word() equals
// substitute(w, phi) as freely reduced words.
struct QuadraticNormalization {
    StandardQuadratic standard;
    std::unordered_map<uint32_t, Word> automorphism;
};
QuadraticNormalization to_standard_form(const Word& w, const std::vector<Symbol>& vars);

// Euler characteristic two ways: via the associated surface and via atom
// weights ([x,y] -> -2; x^2, z^-1cz, d -> -1 each).
int euler_char(const StandardQuadratic& s);
int euler_char_atoms(const StandardQuadratic& s);
int euler_char_surface(bool orientable, int genus, int punctures);

enum class SolutionClass { Degenerate, Commutative, GeneralPosition, Mixed };
struct Classification {
    SolutionClass cls;
    std::vector<bool> consecutive_commutes; // witness commutators checked
};
Classification classify_solution(const StandardQuadratic& s, const Assignment& phi,
                                 const Target& target);

struct GeneralPositionSearch {
    bool found;
    std::optional<Assignment> witness;
};
GeneralPositionSearch detect_general_position(const StandardQuadratic& s, const Target& target,
                                              int radius);

enum class Regularity { Regular, NotRegular, Unknown };
Regularity is_regular(const StandardQuadratic& s, const GeneralPositionSearch& evidence);

} // namespace gt
