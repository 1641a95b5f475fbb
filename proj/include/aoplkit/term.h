#ifndef AOPLKIT_TERM_H
#define AOPLKIT_TERM_H

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aoplkit {

struct SourcePos {
    int line = 0;
    int column = 0;
};

enum class TermKind { Symbol, Integer, Variable };

/*
  A first-order term. Symbols carry a functor and (possibly empty) argument
  list; integers and variables are always atomic. Surface syntax limits
  nesting to one level: the arguments of a compound term are atomic.

  Equality is structural and ignores source positions.
*/
struct Term {
    TermKind kind = TermKind::Symbol;
    std::string name;
    long long number = 0;
    std::vector<Term> args;
    SourcePos pos;

    static Term symbol(std::string functor, std::vector<Term> args = {});
    static Term integer(long long value);
    static Term variable(std::string name);

    bool is_symbol() const { return kind == TermKind::Symbol; }
    bool is_integer() const { return kind == TermKind::Integer; }
    bool is_variable() const { return kind == TermKind::Variable; }
    bool is_ground() const;
    std::size_t arity() const { return args.size(); }

    // Compact rendering, e.g. drive(6,8,45). Used as the canonical key of
    // ground atoms.
    std::string str() const;
    // Rendering with ", " between arguments, e.g. r1(L1, L2, S, S1).
    std::string spaced() const;

    friend bool operator==(const Term &a, const Term &b);
    friend bool operator!=(const Term &a, const Term &b) { return !(a == b); }
};

bool operator<(const Term &a, const Term &b);

using Binding = std::map<std::string, Term>;

// Appends variable names in first-occurrence order, without duplicates.
void collect_variables(const Term &t, std::vector<std::string> &out);
std::vector<std::string> variables_of(const Term &t);

Term substitute(const Term &t, const Binding &b);

// One-way matching of a pattern against a ground term. Extends `b` on
// success; leaves it in an unspecified state on failure.
bool match(const Term &pattern, const Term &ground, Binding &b);

bool is_variable_name(const std::string &s);
bool is_constant_name(const std::string &s);

}  // namespace aoplkit

#endif
