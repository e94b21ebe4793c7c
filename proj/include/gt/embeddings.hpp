#pragma once

#include "gt/quadratic.hpp"
#include "gt/tower.hpp"

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gt {

// NTQ levels, listed bottom-up: the first level sits directly over the base.
struct QuadraticLevel { // form I
    Word equation;
    std::vector<Symbol> vars;
};
struct CentralizerLevel { // form II: [x,y]=1, [x,u]=1 for u in U
    Word u;                  // some g with <U> = C(g) below
    std::vector<Word> u_gens; // U
    std::vector<Symbol> vars;
};
struct FreeAbelianLevel { // form III
    std::vector<Symbol> vars;
};
struct FreeLevel { // form IV
    std::vector<Symbol> vars;
};
using NtqLevel = std::variant<QuadraticLevel, CentralizerLevel, FreeAbelianLevel, FreeLevel>;

struct NtqSystem {
    std::string name;
    std::shared_ptr<const Presentation> base;
    std::vector<NtqLevel> levels;
};

struct EmbeddingBounds {
    int solution_radius = 2;  // bounded solution search
    int centralizer_bound = 6;
    int verify_radius = 0;    // injectivity sampling radius, 0 = skip
};

// Cases whose embedding rests on machinery outside this toolkit (regular
// quadratic equations needing the general embedding theorem).
struct UnsupportedCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A needed solution was not found within the configured radius. Distinct
// from nonexistence.
struct BoundExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmbeddingResult {
    std::shared_ptr<Tower> tower;
    GroupHom hom; // NTQ coordinate presentation -> tower
    std::vector<std::string> case_trace;
};

EmbeddingResult embed_ntq(const NtqSystem& sys, const EmbeddingBounds& bounds);

struct PipelineInput {
    NtqSystem ntq;
    std::map<Symbol, Word> rho; // source generator -> word over NTQ letters
};

struct PipelineOutcome {
    bool ok;
    std::string error;                  // when !ok
    EmbeddingResult embedding;          // beta
    GroupHom phi;                       // composed map source -> tower
    InjectivityReport injectivity{true, 0, std::nullopt};
};

std::vector<PipelineOutcome> run_pipeline(const std::shared_ptr<const Presentation>& source,
                                          const std::vector<PipelineInput>& inputs,
                                          const EmbeddingBounds& bounds);

} // namespace gt
