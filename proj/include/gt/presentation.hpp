#pragma once

#include "gt/word.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gt {

// Measured small-cancellation data for a symmetrized relator set.
struct ScReport {
    long max_piece = 0;       // longest piece
    long min_relator = 0;     // shortest relator
    bool metric_ok = false;   // max_piece / min_relator < 1/6, strictly
    std::vector<Word> witness_pieces;
    bool has_proper_power_relator = false;

    double lambda() const {
        return min_relator == 0 ? 0.0 : static_cast<double>(max_piece) / static_cast<double>(min_relator);
    }
};

enum class Triviality { Trivial, Nontrivial };

struct ConjugacyWitness {
    Word conjugator; // t with t^-1 u t = v
};

enum class SearchStatus { Found, NotFound, BoundExhausted };

struct ConjugacyResult {
    SearchStatus status;
    std::optional<ConjugacyWitness> witness;
};

struct CentralizerGenerator {
    Word generator;
    bool exact; // exact root extraction vs bound-limited search
};

// Finite presentation standing in for the torsion-free hyperbolic base group.
// The word problem runs Dehn's algorithm, complete when the presentation is
// verified C'(1/6). An empty relator set is a free group.
class Presentation {
  public:
    Presentation(std::string name, std::vector<Symbol> generators, std::vector<Word> relators,
                 bool dehn_override = false);

    static std::shared_ptr<const Presentation> free_group(std::vector<std::string> gens,
                                                          std::string name = "F");

    const std::string& name() const { return name_; }
    const std::vector<Symbol>& generators() const { return generators_; }
    const std::vector<Word>& relators() const { return relators_; }
    const std::vector<Word>& symmetrized() const { return symmetrized_; }
    const ScReport& sc_report() const { return sc_; }
    bool is_free() const { return relators_.empty(); }
    bool dehn_override() const { return dehn_override_; }
    bool wp_supported() const { return is_free() || sc_.metric_ok || dehn_override_; }

    bool owns_letters(const Word& w) const;

    // One pass of Dehn reduction to a fixed point (length strictly decreases
    // at each replacement).
    Word dehn_reduce(const Word& w) const;
    Triviality wp(const Word& w) const;
    bool trivial(const Word& w) const { return wp(w) == Triviality::Trivial; }

    // Dehn reduction applied on the cyclic word.
    Word cyclic_dehn_reduce(const Word& w) const;

    ConjugacyResult conjugacy(const Word& u, const Word& v, int bound) const;
    CentralizerGenerator centralizer_base(const Word& g, int bound) const;

    // Exponent-sum vector over the generators.
    std::vector<long> abelianize(const Word& w) const;
    // Necessary condition for triviality: image vanishes in the abelianization
    // of the presentation (integer lattice membership).
    bool abelianization_trivial(const Word& w) const;

    // Freely reduced words of length <= radius over the generators.
    std::vector<Word> ball(int radius) const;

  private:
    std::string name_;
    std::vector<Symbol> generators_;
    std::vector<Word> relators_;
    std::vector<Word> symmetrized_;
    ScReport sc_;
    bool dehn_override_;
    std::vector<std::vector<long>> relator_lattice_; // HNF rows for abelianization

    void symmetrize();
    void measure_small_cancellation();
};

struct UnsupportedPresentation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Freely reduced words of length <= radius over the given symbols.
std::vector<Word> enumerate_ball(const std::vector<Symbol>& alphabet, int radius);

// Hermite-style integer row reduction; reduces v modulo the row lattice, in
// place. Returns true when v lies in the lattice.
bool lattice_reduce(const std::vector<std::vector<long>>& hnf_rows, std::vector<long>& v);
std::vector<std::vector<long>> hermite_rows(std::vector<std::vector<long>> rows);

} // namespace gt
