#pragma once

#include "gt/embeddings.hpp"
#include "gt/equations.hpp"
#include "gt/tower.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace gt {

struct ParseError : std::runtime_error {
    size_t line, column;
    ParseError(const std::string& msg, size_t line_, size_t col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), column(col_) {}
};

// Resolves a group referenced by name (e.g. from a CLI-provided .grp file).
using GroupResolver = std::function<std::shared_ptr<const Presentation>(const std::string&)>;

// group <name> { generators: a, b; relators: <word>, <word>; }
// An optional "dehn: override;" entry runs Dehn reduction even when the
// measured small-cancellation condition fails.
std::shared_ptr<const Presentation> parse_group(const std::string& text);
std::string serialize_group(const Presentation& p);

// system <name> { over: <group-name-or-inline>; vars: x, y; equations: <word>, <word>; }
EqSystem parse_system(const std::string& text, const GroupResolver& resolver);
std::string serialize_system(const EqSystem& s);

// tower <name> { base: <group-name-or-inline>; level { letter: t; center_of: <word>; } ... }
Tower parse_tower(const std::string& text, const GroupResolver& resolver, int bound = 6);
std::string serialize_tower(const Tower& t);

// hom { source: <name>; target: <name>; map: x -> <word>, y -> <word>; }
struct HomFile {
    std::string source_name;
    std::string target_name;
    std::map<Symbol, Word> images;
};
HomFile parse_hom(const std::string& text);
std::string serialize_hom(const HomFile& h);

// ntq <name> { base: <group-name-or-inline>;
//              level { form: II; center_of: <word>; gens: <word>, <word>; vars: x, y; }
//              level { form: I; equation: <word>; vars: x, y; } ... }
// Levels are listed bottom-up: the first level sits directly over the base.
// A form-I level may omit vars; letters unknown below are taken as variables.
NtqSystem parse_ntq(const std::string& text, const GroupResolver& resolver);
std::string serialize_ntq(const NtqSystem& s);

} // namespace gt
