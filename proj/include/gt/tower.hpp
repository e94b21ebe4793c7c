#pragma once

#include "gt/presentation.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace gt {

// One extension of a centralizer: a fresh stable letter commuting with the
// centralizer of `witness` in the tower below. Rank-m abelian extensions are
// desugared into m such levels whose later letters also commute with the
// earlier ones (the earlier letters appear in center_gens).
struct TowerLevel {
    Symbol stable;
    Word witness;                  // u, nontrivial one level down
    std::vector<Word> center_gens; // generators of C(u) one level down
};

// Maximal non-cyclic abelian subgroup, tracked inductively as extensions are
// created. `rep` is any nontrivial element of it.
struct Parabolic {
    Word rep;
    std::vector<Word> gens;
    size_t height; // tower height at creation
};

struct CentralizerResult {
    std::vector<Word> gens;
    bool exact;
};

class WpCache; // concurrent-read / concurrent-insert memo for wp results

// A base presentation plus an ordered list of centralizer extensions.
// Immutable; extension returns a new tower sharing levels structurally.
class Tower {
  public:
    explicit Tower(std::shared_ptr<const Presentation> base, std::string name = "H");

    const std::shared_ptr<const Presentation>& base() const { return base_; }
    const std::string& name() const { return name_; }
    const std::vector<std::shared_ptr<const TowerLevel>>& levels() const { return levels_; }
    size_t height() const { return levels_.size(); }
    const std::vector<Parabolic>& registry() const { return registry_; }

    std::vector<Symbol> alphabet() const; // base generators then stable letters
    bool owns_letters(const Word& w) const;
    bool is_stable_letter(Symbol s) const;

    Tower prefix(size_t height) const;
    Tower extend_centralizer(const Word& u, int rank, std::vector<Symbol> names = {},
                             int bound = 6) const;

    // Pinch-free form: no subword t v t^-1 or t^-1 v t with v in the
    // associated centralizer; the membership test is commutation with the
    // level witness one level down. Base segments are only freely reduced.
    Word britton_reduce(const Word& w) const;
    Triviality wp(const Word& w) const;
    bool trivial(const Word& w) const { return wp(w) == Triviality::Trivial; }

    CentralizerResult centralizer(const Word& g, int bound = 6) const;

    // Defining relators of the tower presentation: base relators plus
    // [stable, c] for every center generator c of every level.
    std::vector<Word> defining_relators() const;

    std::vector<long> abelianize(const Word& w) const;
    // Canonical residue of abelianize(w) modulo the base relator lattice;
    // equal residues are a necessary condition for equality in the tower.
    std::vector<long> abelian_residue(const Word& w) const;

    std::vector<Word> ball(int radius) const;

  private:
    std::shared_ptr<const Presentation> base_;
    std::string name_;
    std::vector<std::shared_ptr<const TowerLevel>> levels_;
    std::vector<Parabolic> registry_;
    std::shared_ptr<WpCache> cache_;
    std::vector<std::vector<long>> ab_lattice_;

    Word britton_reduce_at(size_t height, const Word& w) const;
    bool wp_at(size_t height, const Word& w) const;
    bool is_central(size_t level_index, const Word& v) const;
};

// Group element equality oracle plus finite presentation data, for hom
// sources: presentations, towers, and free products with free abelian groups.
struct SourceGroup {
    std::string name;
    std::vector<Symbol> generators;
    std::vector<Word> relators;
    std::function<bool(const Word&)> is_trivial; // null when no oracle exists
    std::function<std::vector<long>(const Word&)> residue; // bucketing aid, may be null

    static SourceGroup from_presentation(const std::shared_ptr<const Presentation>& p);
    static SourceGroup from_tower(const Tower& t);
    // tower * Z^k on the given fresh commuting variables
    static SourceGroup free_product_abelian(const Tower& t, std::vector<Symbol> vars);
    // plain free group on the given symbols
    static SourceGroup free(std::vector<Symbol> gens, std::string name = "F");
};

enum class HomStatus { Unverified, RelatorsVerified, InjectivitySampled };

struct GroupHom {
    SourceGroup source;
    std::shared_ptr<const Tower> target;
    std::unordered_map<uint32_t, Word> images; // source generator id -> target word
    HomStatus status = HomStatus::Unverified;
    int sampled_radius = 0;

    Word apply(const Word& w) const; // unmapped symbols pass through
};

struct HomVerification {
    bool ok;
    int failing_relator; // -1 when ok
};
HomVerification verify_hom(GroupHom& h);

struct InjectivityReport {
    bool pass;
    size_t elements_checked;
    std::optional<std::pair<Word, Word>> counterexample; // distinct sources, equal images
};
InjectivityReport injectivity_sample(GroupHom& h, int radius);

// Substitute images for mapped symbols; unmapped symbols map to themselves.
Word substitute(const Word& w, const std::unordered_map<uint32_t, Word>& images);

} // namespace gt
