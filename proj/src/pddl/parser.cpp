#include "delta/pddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <set>

namespace delta::pddl {

namespace {

// ---------------------------------------------------------------------------
// S-expression reader
// ---------------------------------------------------------------------------

struct Sexp {
    // Leaf when children is empty and symbol nonempty; list otherwise.
    std::string symbol;
    std::vector<Sexp> children;
    bool is_list = false;
    SourceLocation loc;

    bool is_symbol() const { return !is_list; }
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    struct Token {
        enum Kind { LParen, RParen, Symbol, End } kind;
        std::string value;
        SourceLocation loc;
    };

    Token next() {
        skip_trivia();
        SourceLocation loc{line_, column_};
        if (pos_ >= text_.size())
            return {Token::End, "", loc};
        char c = text_[pos_];
        if (c == '(') {
            advance();
            return {Token::LParen, "(", loc};
        }
        if (c == ')') {
            advance();
            return {Token::RParen, ")", loc};
        }
        std::string sym;
        while (pos_ < text_.size() && !is_delim(text_[pos_])) {
            sym += static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_])));
            advance();
        }
        return {Token::Symbol, sym, loc};
    }

  private:
    static bool is_delim(char c) {
        return c == '(' || c == ')' || c == ';' ||
               std::isspace(static_cast<unsigned char>(c)) != 0;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class SexpReader {
  public:
    explicit SexpReader(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

    Sexp read() {
        Sexp s = read_one();
        return s;
    }

    bool at_end() const { return tok_.kind == Lexer::Token::End; }
    SourceLocation location() const { return tok_.loc; }

  private:
    Sexp read_one() {
        switch (tok_.kind) {
            case Lexer::Token::End:
                throw ParseError("unexpected end of input", tok_.loc);
            case Lexer::Token::RParen:
                throw ParseError("unexpected ')'", tok_.loc);
            case Lexer::Token::Symbol: {
                Sexp s;
                s.symbol = tok_.value;
                s.loc = tok_.loc;
                tok_ = lexer_.next();
                return s;
            }
            case Lexer::Token::LParen: {
                Sexp s;
                s.is_list = true;
                s.loc = tok_.loc;
                tok_ = lexer_.next();
                while (tok_.kind != Lexer::Token::RParen) {
                    if (tok_.kind == Lexer::Token::End)
                        throw ParseError("unbalanced '(': missing ')'", s.loc);
                    s.children.push_back(read_one());
                }
                tok_ = lexer_.next();  // consume ')'
                return s;
            }
        }
        throw ParseError("internal lexer error", tok_.loc);
    }

    Lexer lexer_;
    Lexer::Token tok_;
};

Sexp read_single_form(std::string_view text, const char* what) {
    SexpReader reader(text);
    if (reader.at_end())
        throw ParseError(std::string("empty input, expected a ") + what, reader.location());
    Sexp form = reader.read();
    if (!reader.at_end())
        throw ParseError(std::string("trailing tokens after ") + what, reader.location());
    return form;
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

const std::string& expect_symbol(const Sexp& s, const char* what) {
    if (!s.is_symbol())
        throw ParseError(std::string("expected ") + what + ", got a list", s.loc);
    return s.symbol;
}

bool head_is(const Sexp& s, const std::string& sym) {
    return s.is_list && !s.children.empty() && s.children[0].is_symbol() &&
           s.children[0].symbol == sym;
}

// Parses `a b - t c - u d` into typed entries; names without a trailing
// `- type` group default to "object".
std::vector<TypedParam> parse_typed_list(const std::vector<Sexp>& items, size_t begin,
                                         const char* what) {
    std::vector<TypedParam> out;
    std::vector<std::string> pending;
    for (size_t i = begin; i < items.size(); ++i) {
        const std::string& sym = expect_symbol(items[i], what);
        if (sym == "-") {
            if (pending.empty())
                throw ParseError("dangling '-' in typed list", items[i].loc);
            if (i + 1 >= items.size())
                throw ParseError("missing type name after '-'", items[i].loc);
            const std::string& type = expect_symbol(items[i + 1], "type name");
            for (auto& name : pending)
                out.push_back({std::move(name), type});
            pending.clear();
            ++i;
        } else {
            pending.push_back(sym);
        }
    }
    for (auto& name : pending)
        out.push_back({std::move(name), "object"});
    return out;
}

Atom parse_atom_form(const Sexp& s) {
    if (!s.is_list || s.children.empty())
        throw ParseError("expected an atom of the form (predicate args...)", s.loc);
    Atom atom;
    atom.predicate = expect_symbol(s.children[0], "predicate name");
    for (size_t i = 1; i < s.children.size(); ++i)
        atom.args.push_back(expect_symbol(s.children[i], "atom argument"));
    return atom;
}

// Flattens a goal description into a conjunction of literals. Nested (and ...)
// forms are flattened; anything beyond atoms, not and and is rejected.
void parse_condition(const Sexp& s, std::vector<Literal>& out, bool allow_negation) {
    if (!s.is_list)
        throw ParseError("expected a condition", s.loc);
    if (s.children.empty())
        return;  // "()" reads as an empty conjunction
    if (head_is(s, "and")) {
        for (size_t i = 1; i < s.children.size(); ++i)
            parse_condition(s.children[i], out, allow_negation);
        return;
    }
    if (head_is(s, "not")) {
        if (!allow_negation)
            throw ParseError("negation is not allowed here", s.loc);
        if (s.children.size() != 2)
            throw ParseError("(not ...) takes exactly one atom", s.loc);
        if (head_is(s.children[1], "not") || head_is(s.children[1], "and"))
            throw UnsupportedFeatureError("nested formulas under (not ...) are not supported");
        out.push_back({parse_atom_form(s.children[1]), true});
        return;
    }
    const std::string& head = expect_symbol(s.children[0], "predicate name");
    if (head == "or" || head == "imply" || head == "forall" || head == "exists" ||
        head == "when" || head == "=" || head == "increase" || head == "decrease")
        throw UnsupportedFeatureError("construct '(" + head +
                                      " ...)' is outside the supported STRIPS subset");
    out.push_back({parse_atom_form(s), false});
}

void dedupe_keep_order(std::vector<Literal>& lits) {
    std::vector<Literal> out;
    for (auto& l : lits)
        if (std::find(out.begin(), out.end(), l) == out.end())
            out.push_back(std::move(l));
    lits = std::move(out);
}

// ---------------------------------------------------------------------------
// Domain parsing
// ---------------------------------------------------------------------------

const std::set<std::string> kSupportedRequirements = {":strips", ":typing",
                                                      ":negative-preconditions"};

void parse_requirements(const Sexp& s, DomainAst& d) {
    for (size_t i = 1; i < s.children.size(); ++i) {
        const std::string& req = expect_symbol(s.children[i], "requirement flag");
        if (!kSupportedRequirements.count(req))
            throw UnsupportedFeatureError("unsupported requirement '" + req +
                                          "'; supported: :strips :typing "
                                          ":negative-preconditions");
        d.requirements.insert(req);
    }
}

void parse_types(const Sexp& s, DomainAst& d) {
    std::vector<TypedParam> entries = parse_typed_list(s.children, 1, "type name");
    for (const auto& e : entries) {
        if (e.name == "object")
            throw SemanticError("type 'object' is built in and cannot be redeclared");
        for (const auto& t : d.types)
            if (t.name == e.name)
                throw SemanticError("duplicate type declaration '" + e.name + "'");
        d.types.push_back({e.name, e.type});
    }
    // Supertypes must resolve (forward references within the section are
    // fine) and the hierarchy must be acyclic.
    for (const auto& t : d.types) {
        if (!d.has_type(t.supertype))
            throw SemanticError("type '" + t.name + "' has undeclared supertype '" +
                                t.supertype + "'");
        std::set<std::string> seen{t.name};
        std::string cur = t.supertype;
        while (cur != "object") {
            if (!seen.insert(cur).second)
                throw SemanticError("cyclic type hierarchy involving '" + t.name + "'");
            const TypeDecl* next = nullptr;
            for (const auto& u : d.types)
                if (u.name == cur)
                    next = &u;
            cur = next->supertype;
        }
    }
}

void parse_predicates(const Sexp& s, DomainAst& d) {
    for (size_t i = 1; i < s.children.size(); ++i) {
        const Sexp& p = s.children[i];
        if (!p.is_list || p.children.empty())
            throw ParseError("expected a predicate declaration (name ?v - type ...)", p.loc);
        PredicateDecl decl;
        decl.name = expect_symbol(p.children[0], "predicate name");
        if (d.find_predicate(decl.name))
            throw SemanticError("duplicate predicate declaration '" + decl.name + "'");
        decl.params = parse_typed_list(p.children, 1, "predicate parameter");
        for (const auto& param : decl.params) {
            if (param.name.empty() || param.name[0] != '?')
                throw SemanticError("predicate '" + decl.name +
                                    "' has a non-variable parameter '" + param.name + "'");
            if (!d.has_type(param.type))
                throw SemanticError("predicate '" + decl.name + "' uses undeclared type '" +
                                    param.type + "'");
        }
        d.predicates.push_back(std::move(decl));
    }
}

// Type-checks one schematic literal against the action's parameters.
void check_schema_literal(const Atom& atom, const ActionSchema& action, const DomainAst& d,
                          const char* where) {
    const PredicateDecl* decl = d.find_predicate(atom.predicate);
    if (!decl)
        throw SemanticError("action '" + action.name + "' uses undeclared predicate '" +
                            atom.predicate + "' in " + where);
    if (decl->params.size() != atom.args.size())
        throw SemanticError("action '" + action.name + "': predicate '" + atom.predicate +
                            "' expects " + std::to_string(decl->params.size()) +
                            " arguments, got " + std::to_string(atom.args.size()));
    for (size_t i = 0; i < atom.args.size(); ++i) {
        const std::string& arg = atom.args[i];
        if (arg.empty() || arg[0] != '?')
            throw UnsupportedFeatureError("action '" + action.name +
                                          "' uses constant '" + arg +
                                          "' in its body; constants in action bodies "
                                          "are not supported");
        const TypedParam* param = nullptr;
        for (const auto& p : action.params)
            if (p.name == arg)
                param = &p;
        if (!param)
            throw SemanticError("action '" + action.name + "' uses variable '" + arg +
                                "' that is not in :parameters");
        if (!d.is_subtype(param->type, decl->params[i].type))
            throw SemanticError("action '" + action.name + "': variable '" + arg +
                                "' of type '" + param->type +
                                "' is not compatible with parameter type '" +
                                decl->params[i].type + "' of predicate '" + atom.predicate +
                                "'");
    }
}

void parse_action(const Sexp& s, DomainAst& d) {
    if (s.children.size() < 2)
        throw ParseError("(:action ...) requires a name", s.loc);
    ActionSchema action;
    action.name = expect_symbol(s.children[1], "action name");
    if (d.find_action(action.name))
        throw SemanticError("duplicate action declaration '" + action.name + "'");

    std::optional<Sexp> precondition, effect;
    for (size_t i = 2; i < s.children.size();) {
        const std::string& key = expect_symbol(s.children[i], "action section keyword");
        if (i + 1 >= s.children.size())
            throw ParseError("missing value after '" + key + "'", s.children[i].loc);
        const Sexp& value = s.children[i + 1];
        if (key == ":parameters") {
            if (!value.is_list)
                throw ParseError(":parameters expects a list", value.loc);
            action.params = parse_typed_list(value.children, 0, "action parameter");
        } else if (key == ":precondition") {
            precondition = value;
        } else if (key == ":effect") {
            effect = value;
        } else {
            throw UnsupportedFeatureError("unsupported action section '" + key + "'");
        }
        i += 2;
    }

    std::set<std::string> param_names;
    for (const auto& p : action.params) {
        if (p.name.empty() || p.name[0] != '?')
            throw SemanticError("action '" + action.name + "' has a non-variable parameter '" +
                                p.name + "'");
        if (!param_names.insert(p.name).second)
            throw SemanticError("action '" + action.name + "' declares parameter '" + p.name +
                                "' twice");
        if (!d.has_type(p.type))
            throw SemanticError("action '" + action.name + "' uses undeclared type '" +
                                p.type + "'");
    }

    if (precondition) {
        parse_condition(*precondition, action.precondition, /*allow_negation=*/true);
        dedupe_keep_order(action.precondition);
        for (const auto& lit : action.precondition)
            check_schema_literal(lit.atom, action, d, ":precondition");
    }
    if (effect) {
        std::vector<Literal> effects;
        parse_condition(*effect, effects, /*allow_negation=*/true);
        dedupe_keep_order(effects);
        for (const auto& lit : effects) {
            check_schema_literal(lit.atom, action, d, ":effect");
            if (lit.negated)
                action.del_effects.push_back(lit.atom);
            else
                action.add_effects.push_back(lit.atom);
        }
        for (const auto& a : action.add_effects)
            if (std::find(action.del_effects.begin(), action.del_effects.end(), a) !=
                action.del_effects.end())
                throw SemanticError("action '" + action.name + "' both adds and deletes " +
                                    a.str());
    }
    d.actions.push_back(std::move(action));
}

}  // namespace

DomainAst parse_domain(std::string_view text) {
    Sexp top = read_single_form(text, "domain definition");
    if (!head_is(top, "define"))
        throw ParseError("expected (define (domain ...) ...)", top.loc);
    if (top.children.size() < 2 || !head_is(top.children[1], "domain") ||
        top.children[1].children.size() != 2)
        throw ParseError("expected (domain <name>) after define", top.loc);

    DomainAst d;
    d.name = expect_symbol(top.children[1].children[1], "domain name");

    for (size_t i = 2; i < top.children.size(); ++i) {
        const Sexp& section = top.children[i];
        if (!section.is_list || section.children.empty() || !section.children[0].is_symbol())
            throw ParseError("expected a domain section like (:predicates ...)", section.loc);
        const std::string& key = section.children[0].symbol;
        if (key == ":requirements")
            parse_requirements(section, d);
        else if (key == ":types")
            parse_types(section, d);
        else if (key == ":predicates")
            parse_predicates(section, d);
        else if (key == ":action")
            parse_action(section, d);
        else
            throw UnsupportedFeatureError("unsupported domain section '" + key + "'");
    }
    return d;
}

namespace {

void parse_objects(const Sexp& s, const DomainAst& d, ProblemAst& p) {
    p.objects = parse_typed_list(s.children, 1, "object name");
    std::set<std::string> names;
    for (const auto& o : p.objects) {
        if (!o.name.empty() && o.name[0] == '?')
            throw SemanticError("object name '" + o.name + "' must not be a variable");
        if (!names.insert(o.name).second)
            throw SemanticError("duplicate object declaration '" + o.name + "'");
        if (!d.has_type(o.type))
            throw SemanticError("object '" + o.name + "' has undeclared type '" + o.type +
                                "'");
    }
}

void check_problem_literal(const Atom& atom, const DomainAst& d, const ProblemAst& p,
                           const std::string& where) {
    if (!atom.is_ground())
        throw SemanticError(where + " literal " + atom.str() + " contains variables");
    const PredicateDecl* decl = d.find_predicate(atom.predicate);
    if (!decl)
        throw SemanticError("undeclared predicate '" + atom.predicate + "' in " + where);
    if (decl->params.size() != atom.args.size())
        throw SemanticError("predicate '" + atom.predicate + "' expects " +
                            std::to_string(decl->params.size()) + " arguments, got " +
                            std::to_string(atom.args.size()) + " in " + where);
    for (size_t i = 0; i < atom.args.size(); ++i) {
        const TypedParam* obj = p.find_object(atom.args[i]);
        if (!obj)
            throw UndeclaredItemError(atom.args[i], where);
        if (!d.is_subtype(obj->type, decl->params[i].type))
            throw SemanticError("object '" + obj->name + "' of type '" + obj->type +
                                "' is not compatible with parameter type '" +
                                decl->params[i].type + "' of predicate '" + atom.predicate +
                                "' in " + where);
    }
}

}  // namespace

ProblemAst parse_problem(std::string_view text, const DomainAst& domain) {
    Sexp top = read_single_form(text, "problem definition");
    if (!head_is(top, "define"))
        throw ParseError("expected (define (problem ...) ...)", top.loc);
    if (top.children.size() < 2 || !head_is(top.children[1], "problem") ||
        top.children[1].children.size() != 2)
        throw ParseError("expected (problem <name>) after define", top.loc);

    ProblemAst p;
    p.name = expect_symbol(top.children[1].children[1], "problem name");

    const Sexp* init_section = nullptr;
    const Sexp* goal_section = nullptr;
    for (size_t i = 2; i < top.children.size(); ++i) {
        const Sexp& section = top.children[i];
        if (!section.is_list || section.children.empty() || !section.children[0].is_symbol())
            throw ParseError("expected a problem section like (:init ...)", section.loc);
        const std::string& key = section.children[0].symbol;
        if (key == ":domain") {
            if (section.children.size() != 2)
                throw ParseError("(:domain ...) takes exactly one name", section.loc);
            p.domain_name = expect_symbol(section.children[1], "domain name");
        } else if (key == ":objects") {
            parse_objects(section, domain, p);
        } else if (key == ":init") {
            init_section = &section;
        } else if (key == ":goal") {
            goal_section = &section;
        } else {
            throw UnsupportedFeatureError("unsupported problem section '" + key + "'");
        }
    }

    if (p.domain_name.empty())
        throw SemanticError("problem '" + p.name + "' is missing the (:domain ...) section");
    if (p.domain_name != domain.name)
        throw SemanticError("problem '" + p.name + "' references domain '" + p.domain_name +
                            "' but was parsed against domain '" + domain.name + "'");

    if (init_section) {
        for (size_t i = 1; i < init_section->children.size(); ++i) {
            const Sexp& form = init_section->children[i];
            if (head_is(form, "not"))
                throw UnsupportedFeatureError(
                    "negated init atoms are not supported; unlisted atoms are false");
            Atom atom = parse_atom_form(form);
            check_problem_literal(atom, domain, p, "init");
            if (std::find(p.init.begin(), p.init.end(), atom) == p.init.end())
                p.init.push_back(std::move(atom));
        }
    }

    if (goal_section) {
        if (goal_section->children.size() != 2)
            throw ParseError("(:goal ...) takes exactly one formula", goal_section->loc);
        parse_condition(goal_section->children[1], p.goal.literals, /*allow_negation=*/true);
        dedupe_keep_order(p.goal.literals);
        for (const auto& lit : p.goal.literals)
            check_problem_literal(lit.atom, domain, p, "goal");
    }
    return p;
}

GoalFormula parse_goal_formula(std::string_view text, const DomainAst& domain,
                               const ProblemAst& problem) {
    Sexp top = read_single_form(text, "goal formula");
    const Sexp* body = &top;
    if (head_is(top, ":goal")) {
        if (top.children.size() != 2)
            throw ParseError("(:goal ...) takes exactly one formula", top.loc);
        body = &top.children[1];
    }
    GoalFormula goal;
    parse_condition(*body, goal.literals, /*allow_negation=*/true);
    dedupe_keep_order(goal.literals);
    for (const auto& lit : goal.literals)
        check_problem_literal(lit.atom, domain, problem, "goal");
    return goal;
}

}  // namespace delta::pddl
