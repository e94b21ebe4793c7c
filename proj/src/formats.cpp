#include "gt/formats.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>
#include <sstream>

namespace gt {

namespace {

struct Scan {
    std::string src;
    size_t pos = 0, line = 1, col = 1;

    explicit Scan(std::string s) : src(std::move(s)) {}

    void bump() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        for (;;) {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
                bump();
            if (pos < src.size() && src[pos] == '#') { // comment to end of line
                while (pos < src.size() && src[pos] != '\n')
                    bump();
                continue;
            }
            break;
        }
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    bool try_punct(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            bump();
            return true;
        }
        return false;
    }
    void expect_punct(char c) {
        if (!try_punct(c))
            fail(std::string("expected '") + c + "'");
    }
    bool peek_punct(char c) {
        skip_ws();
        return pos < src.size() && src[pos] == c;
    }
    std::string peek_ident() {
        skip_ws();
        size_t p = pos;
        if (p >= src.size() || !std::isalpha(static_cast<unsigned char>(src[p])))
            return "";
        size_t start = p;
        while (p < src.size() && (std::isalnum(static_cast<unsigned char>(src[p])) || src[p] == '_'))
            ++p;
        return src.substr(start, p - start);
    }
    std::string expect_ident(const char* what) {
        std::string s = peek_ident();
        if (s.empty())
            fail(std::string("expected ") + what);
        for (size_t i = 0; i < s.size(); ++i)
            bump();
        return s;
    }
    bool try_keyword(const char* w) {
        if (peek_ident() == w) {
            expect_ident(w);
            return true;
        }
        return false;
    }
    void expect_keyword(const char* w) {
        if (!try_keyword(w))
            fail(std::string("expected '") + w + "'");
    }
    bool try_arrow() {
        skip_ws();
        if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '>') {
            bump();
            bump();
            return true;
        }
        return false;
    }

    // Word text up to the next top-level stop character (never consumed).
    Word read_word(const char* stops) {
        skip_ws();
        size_t start = pos, start_line = line, start_col = col;
        int depth = 0;
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '(' || c == '[')
                ++depth;
            else if (c == ')' || c == ']')
                --depth;
            if (depth == 0 && std::strchr(stops, c))
                break;
            bump();
        }
        std::string text = src.substr(start, pos - start);
        try {
            return parse_word(text);
        } catch (const WordSyntaxError& e) {
            throw ParseError(std::string("bad word: ") + e.what(),
                             start_line + e.line - 1,
                             e.line == 1 ? start_col + e.column - 1 : e.column);
        }
    }

    std::vector<Word> read_word_list(const char* terminator_stops) {
        std::vector<Word> out;
        if (peek_punct(';'))
            return out;
        for (;;) {
            out.push_back(read_word(terminator_stops));
            if (!try_punct(','))
                break;
        }
        return out;
    }

    std::vector<Symbol> read_symbol_list() {
        std::vector<Symbol> out;
        if (peek_punct(';'))
            return out;
        for (;;) {
            out.push_back(Symbol::intern(expect_ident("identifier")));
            if (!try_punct(','))
                break;
        }
        return out;
    }
};

std::shared_ptr<const Presentation> parse_group_body(Scan& sc) {
    std::string name = sc.expect_ident("group name");
    sc.expect_punct('{');
    std::vector<Symbol> gens;
    std::vector<Word> rels;
    bool override_flag = false;
    while (!sc.peek_punct('}')) {
        std::string field = sc.expect_ident("field");
        sc.expect_punct(':');
        if (field == "generators") {
            gens = sc.read_symbol_list();
        } else if (field == "relators") {
            rels = sc.read_word_list(",;");
        } else if (field == "dehn") {
            std::string v = sc.expect_ident("dehn mode");
            if (v != "override")
                sc.fail("unknown dehn mode '" + v + "'");
            override_flag = true;
        } else {
            sc.fail("unknown group field '" + field + "'");
        }
        sc.expect_punct(';');
    }
    sc.expect_punct('}');
    return std::make_shared<Presentation>(name, std::move(gens), std::move(rels), override_flag);
}

std::shared_ptr<const Presentation> parse_group_ref(Scan& sc, const GroupResolver& resolver) {
    if (sc.peek_ident() == "group") {
        sc.expect_keyword("group");
        return parse_group_body(sc);
    }
    std::string name = sc.expect_ident("group name or inline group");
    if (!resolver)
        sc.fail("group '" + name + "' referenced by name but no resolver is available");
    auto p = resolver(name);
    if (!p)
        sc.fail("unknown group '" + name + "'");
    return p;
}

} // namespace

std::shared_ptr<const Presentation> parse_group(const std::string& text) {
    Scan sc(text);
    sc.expect_keyword("group");
    auto p = parse_group_body(sc);
    if (!sc.eof())
        sc.fail("trailing input after group");
    return p;
}

std::string serialize_group(const Presentation& p) {
    std::ostringstream os;
    os << "group " << p.name() << " {\n    generators: ";
    for (size_t i = 0; i < p.generators().size(); ++i)
        os << (i ? ", " : "") << p.generators()[i].name();
    os << ";\n    relators: ";
    for (size_t i = 0; i < p.relators().size(); ++i)
        os << (i ? ", " : "") << p.relators()[i].str();
    os << ";\n";
    if (p.dehn_override())
        os << "    dehn: override;\n";
    os << "}\n";
    return os.str();
}

EqSystem parse_system(const std::string& text, const GroupResolver& resolver) {
    Scan sc(text);
    sc.expect_keyword("system");
    EqSystem s;
    s.name = sc.expect_ident("system name");
    sc.expect_punct('{');
    while (!sc.peek_punct('}')) {
        std::string field = sc.expect_ident("field");
        sc.expect_punct(':');
        if (field == "over") {
            s.constants_group = parse_group_ref(sc, resolver);
        } else if (field == "vars") {
            s.variables = sc.read_symbol_list();
        } else if (field == "equations") {
            s.equations = sc.read_word_list(",;");
        } else if (field == "coefficient_free") {
            std::string v = sc.expect_ident("boolean");
            s.coefficient_free = v == "true";
        } else {
            sc.fail("unknown system field '" + field + "'");
        }
        sc.expect_punct(';');
    }
    sc.expect_punct('}');
    if (!sc.eof())
        sc.fail("trailing input after system");
    s.validate();
    return s;
}

std::string serialize_system(const EqSystem& s) {
    std::ostringstream os;
    os << "system " << s.name << " {\n    over: ";
    if (s.constants_group) {
        std::string g = serialize_group(*s.constants_group);
        // indent the inline group
        os << g.substr(0, g.size() - 1);
    } else {
        os << "group none { generators: ; relators: ; }";
    }
    os << ";\n    vars: ";
    for (size_t i = 0; i < s.variables.size(); ++i)
        os << (i ? ", " : "") << s.variables[i].name();
    os << ";\n    equations: ";
    for (size_t i = 0; i < s.equations.size(); ++i)
        os << (i ? ", " : "") << s.equations[i].str();
    os << ";\n";
    if (s.coefficient_free)
        os << "    coefficient_free: true;\n";
    os << "}\n";
    return os.str();
}

Tower parse_tower(const std::string& text, const GroupResolver& resolver, int bound) {
    Scan sc(text);
    sc.expect_keyword("tower");
    std::string name = sc.expect_ident("tower name");
    sc.expect_punct('{');
    sc.expect_keyword("base");
    sc.expect_punct(':');
    auto base = parse_group_ref(sc, resolver);
    sc.expect_punct(';');
    Tower t(base, name);
    while (sc.try_keyword("level")) {
        sc.expect_punct('{');
        Symbol letter;
        Word witness;
        bool have_letter = false, have_witness = false;
        while (!sc.peek_punct('}')) {
            std::string field = sc.expect_ident("field");
            sc.expect_punct(':');
            if (field == "letter") {
                letter = Symbol::intern(sc.expect_ident("letter"));
                have_letter = true;
            } else if (field == "center_of") {
                witness = sc.read_word(";");
                have_witness = true;
            } else {
                sc.fail("unknown level field '" + field + "'");
            }
            sc.expect_punct(';');
        }
        sc.expect_punct('}');
        if (!have_letter || !have_witness)
            sc.fail("level needs letter and center_of");
        t = t.extend_centralizer(witness, 1, {letter}, bound);
    }
    sc.expect_punct('}');
    if (!sc.eof())
        sc.fail("trailing input after tower");
    return t;
}

std::string serialize_tower(const Tower& t) {
    std::ostringstream os;
    os << "tower " << t.name() << " {\n    base: ";
    std::string g = serialize_group(*t.base());
    os << g.substr(0, g.size() - 1) << ";\n";
    for (const auto& lv : t.levels()) {
        os << "    level { letter: " << lv->stable.name() << "; center_of: " << lv->witness.str()
           << "; }\n";
    }
    os << "}\n";
    return os.str();
}

HomFile parse_hom(const std::string& text) {
    Scan sc(text);
    sc.expect_keyword("hom");
    HomFile h;
    sc.expect_punct('{');
    while (!sc.peek_punct('}')) {
        std::string field = sc.expect_ident("field");
        sc.expect_punct(':');
        if (field == "source") {
            h.source_name = sc.expect_ident("source name");
        } else if (field == "target") {
            h.target_name = sc.expect_ident("target name");
        } else if (field == "map") {
            if (!sc.peek_punct(';')) {
                for (;;) {
                    Symbol v = Symbol::intern(sc.expect_ident("generator"));
                    if (!sc.try_arrow())
                        sc.fail("expected '->'");
                    h.images[v] = sc.read_word(",;");
                    if (!sc.try_punct(','))
                        break;
                }
            }
        } else {
            sc.fail("unknown hom field '" + field + "'");
        }
        sc.expect_punct(';');
    }
    sc.expect_punct('}');
    if (!sc.eof())
        sc.fail("trailing input after hom");
    return h;
}

std::string serialize_hom(const HomFile& h) {
    std::ostringstream os;
    os << "hom {\n    source: " << h.source_name << ";\n    target: " << h.target_name
       << ";\n    map: ";
    size_t i = 0;
    for (const auto& [v, w] : h.images) {
        os << (i++ ? ", " : "") << v.name() << " -> " << w.str();
    }
    os << ";\n}\n";
    return os.str();
}

NtqSystem parse_ntq(const std::string& text, const GroupResolver& resolver) {
    Scan sc(text);
    sc.expect_keyword("ntq");
    NtqSystem sys;
    sys.name = sc.expect_ident("ntq name");
    sc.expect_punct('{');
    sc.expect_keyword("base");
    sc.expect_punct(':');
    sys.base = parse_group_ref(sc, resolver);
    sc.expect_punct(';');

    std::set<Symbol> known(sys.base->generators().begin(), sys.base->generators().end());
    while (sc.try_keyword("level")) {
        sc.expect_punct('{');
        sc.expect_keyword("form");
        sc.expect_punct(':');
        std::string form = sc.expect_ident("form");
        sc.expect_punct(';');
        std::vector<Symbol> vars;
        Word u, equation;
        std::vector<Word> gens;
        bool have_u = false, have_eq = false;
        while (!sc.peek_punct('}')) {
            std::string field = sc.expect_ident("field");
            sc.expect_punct(':');
            if (field == "vars") {
                vars = sc.read_symbol_list();
            } else if (field == "center_of") {
                u = sc.read_word(";");
                have_u = true;
            } else if (field == "gens") {
                gens = sc.read_word_list(",;");
            } else if (field == "equation") {
                equation = sc.read_word(";");
                have_eq = true;
            } else {
                sc.fail("unknown level field '" + field + "'");
            }
            sc.expect_punct(';');
        }
        sc.expect_punct('}');

        if (form == "I") {
            if (!have_eq)
                sc.fail("form I level needs an equation");
            if (vars.empty()) {
                // letters not known below are this level's variables
                std::set<Symbol> seen;
                for (const Letter& l : equation.letters())
                    if (!known.count(l.symbol) && seen.insert(l.symbol).second)
                        vars.push_back(l.symbol);
            }
            sys.levels.push_back(QuadraticLevel{equation, vars});
        } else if (form == "II") {
            if (!have_u)
                sc.fail("form II level needs center_of");
            if (vars.empty())
                sc.fail("form II level needs vars");
            if (gens.empty())
                gens = {u};
            sys.levels.push_back(CentralizerLevel{u, gens, vars});
        } else if (form == "III") {
            if (vars.empty())
                sc.fail("form III level needs vars");
            sys.levels.push_back(FreeAbelianLevel{vars});
        } else if (form == "IV") {
            if (vars.empty())
                sc.fail("form IV level needs vars");
            sys.levels.push_back(FreeLevel{vars});
        } else {
            sc.fail("unknown NTQ form '" + form + "'");
        }
        for (Symbol v : vars)
            known.insert(v);
    }
    sc.expect_punct('}');
    if (!sc.eof())
        sc.fail("trailing input after ntq");
    return sys;
}

std::string serialize_ntq(const NtqSystem& sys) {
    std::ostringstream os;
    os << "ntq " << sys.name << " {\n    base: ";
    std::string g = serialize_group(*sys.base);
    os << g.substr(0, g.size() - 1) << ";\n";
    for (const NtqLevel& lv : sys.levels) {
        os << "    level { ";
        std::visit(
            [&](const auto& level) {
                using T = std::decay_t<decltype(level)>;
                if constexpr (std::is_same_v<T, QuadraticLevel>) {
                    os << "form: I; equation: " << level.equation.str() << "; vars: ";
                    for (size_t i = 0; i < level.vars.size(); ++i)
                        os << (i ? ", " : "") << level.vars[i].name();
                    os << ";";
                } else if constexpr (std::is_same_v<T, CentralizerLevel>) {
                    os << "form: II; center_of: " << level.u.str() << "; gens: ";
                    for (size_t i = 0; i < level.u_gens.size(); ++i)
                        os << (i ? ", " : "") << level.u_gens[i].str();
                    os << "; vars: ";
                    for (size_t i = 0; i < level.vars.size(); ++i)
                        os << (i ? ", " : "") << level.vars[i].name();
                    os << ";";
                } else if constexpr (std::is_same_v<T, FreeAbelianLevel>) {
                    os << "form: III; vars: ";
                    for (size_t i = 0; i < level.vars.size(); ++i)
                        os << (i ? ", " : "") << level.vars[i].name();
                    os << ";";
                } else {
                    os << "form: IV; vars: ";
                    for (size_t i = 0; i < level.vars.size(); ++i)
                        os << (i ? ", " : "") << level.vars[i].name();
                    os << ";";
                }
            },
            lv);
        os << " }\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace gt
