#include "aoplkit/term.h"

#include <algorithm>
#include <cctype>

namespace aoplkit {

Term Term::symbol(std::string functor, std::vector<Term> args) {
    Term t;
    t.kind = TermKind::Symbol;
    t.name = std::move(functor);
    t.args = std::move(args);
    return t;
}

Term Term::integer(long long value) {
    Term t;
    t.kind = TermKind::Integer;
    t.number = value;
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind = TermKind::Variable;
    t.name = std::move(name);
    return t;
}

bool Term::is_ground() const {
    if (kind == TermKind::Variable)
        return false;
    return std::all_of(args.begin(), args.end(),
                       [](const Term &a) { return a.is_ground(); });
}

static void render(const Term &t, std::string &out, const char *sep) {
    switch (t.kind) {
    case TermKind::Integer:
        out += std::to_string(t.number);
        return;
    case TermKind::Variable:
        out += t.name;
        return;
    case TermKind::Symbol:
        out += t.name;
        if (!t.args.empty()) {
            out += '(';
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                if (i)
                    out += sep;
                render(t.args[i], out, sep);
            }
            out += ')';
        }
        return;
    }
}

std::string Term::str() const {
    std::string out;
    render(*this, out, ",");
    return out;
}

std::string Term::spaced() const {
    std::string out;
    render(*this, out, ", ");
    return out;
}

bool operator==(const Term &a, const Term &b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case TermKind::Integer:
        return a.number == b.number;
    case TermKind::Variable:
        return a.name == b.name;
    case TermKind::Symbol:
        return a.name == b.name && a.args == b.args;
    }
    return false;
}

bool operator<(const Term &a, const Term &b) {
    if (a.kind != b.kind)
        return a.kind < b.kind;
    if (a.kind == TermKind::Integer)
        return a.number < b.number;
    if (a.name != b.name)
        return a.name < b.name;
    return std::lexicographical_compare(a.args.begin(), a.args.end(),
                                        b.args.begin(), b.args.end());
}

void collect_variables(const Term &t, std::vector<std::string> &out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.name) == out.end())
            out.push_back(t.name);
        return;
    }
    for (const Term &a : t.args)
        collect_variables(a, out);
}

std::vector<std::string> variables_of(const Term &t) {
    std::vector<std::string> out;
    collect_variables(t, out);
    return out;
}

Term substitute(const Term &t, const Binding &b) {
    if (t.is_variable()) {
        auto it = b.find(t.name);
        return it == b.end() ? t : it->second;
    }
    if (t.args.empty())
        return t;
    Term r = t;
    for (Term &a : r.args)
        a = substitute(a, b);
    return r;
}

bool match(const Term &pattern, const Term &ground, Binding &b) {
    if (pattern.is_variable()) {
        auto [it, inserted] = b.emplace(pattern.name, ground);
        return inserted || it->second == ground;
    }
    if (pattern.kind != ground.kind)
        return false;
    if (pattern.is_integer())
        return pattern.number == ground.number;
    if (pattern.name != ground.name || pattern.args.size() != ground.args.size())
        return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i)
        if (!match(pattern.args[i], ground.args[i], b))
            return false;
    return true;
}

bool is_variable_name(const std::string &s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

bool is_constant_name(const std::string &s) {
    return !s.empty() && std::islower(static_cast<unsigned char>(s[0]));
}

}  // namespace aoplkit
