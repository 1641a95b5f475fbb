// Recursive-descent parser for .aopl policy files. Grammar in docs/grammar.md.

#include <cctype>
#include <fstream>
#include <sstream>

#include "aoplkit/errors.h"
#include "aoplkit/policy.h"

namespace aoplkit {
namespace {

enum class Tok {
    Ident, Var, Int, LParen, RParen, Comma, Dot, Colon, Minus, Plus,
    Gt, Gte, Lt, Lte, Eq, Neq, End
};

struct Token {
    Tok kind;
    std::string text;
    long long value = 0;
    SourcePos pos;
};

std::string describe(const Token &t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Var: return "variable '" + t.text + "'";
    case Tok::Int: return "integer " + t.text;
    default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourcePos p{line_, col_};
            if (i_ >= src_.size()) {
                out.push_back({Tok::End, "", 0, p});
                return out;
            }
            char c = src_[i_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i_;
                while (j < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                    ++j;
                std::string word(src_.substr(i_, j - i_));
                advance(j - i_);
                Tok k = std::isupper(static_cast<unsigned char>(word[0])) || word[0] == '_'
                            ? Tok::Var
                            : Tok::Ident;
                out.push_back({k, word, 0, p});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i_;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j])))
                    ++j;
                std::string digits(src_.substr(i_, j - i_));
                advance(j - i_);
                long long v = 0;
                try {
                    v = std::stoll(digits);
                } catch (const std::out_of_range &) {
                    throw ParseError(p, {"integer in range"}, digits);
                }
                out.push_back({Tok::Int, digits, v, p});
            } else {
                auto two = src_.substr(i_, 2);
                Tok k;
                std::size_t n = 1;
                if (two == ">=") k = Tok::Gte, n = 2;
                else if (two == "<=") k = Tok::Lte, n = 2;
                else if (two == "!=") k = Tok::Neq, n = 2;
                else if (c == '>') k = Tok::Gt;
                else if (c == '<') k = Tok::Lt;
                else if (c == '=') k = Tok::Eq;
                else if (c == '(') k = Tok::LParen;
                else if (c == ')') k = Tok::RParen;
                else if (c == ',') k = Tok::Comma;
                else if (c == '.') k = Tok::Dot;
                else if (c == ':') k = Tok::Colon;
                else if (c == '-') k = Tok::Minus;
                else if (c == '+') k = Tok::Plus;
                else
                    throw ParseError(p, {"identifier", "variable", "integer", "punctuation"},
                                     "character '" + std::string(1, c) + "'");
                out.push_back({k, std::string(src_.substr(i_, n)), 0, p});
                advance(n);
            }
        }
    }

private:
    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i_) {
            if (src_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void skip_space() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '%') {
                while (i_ < src_.size() && src_[i_] != '\n')
                    advance(1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Policy run() {
        Policy p;
        while (peek().kind != Tok::End)
            statement(p);
        return p;
    }

private:
    const Token &peek(std::size_t k = 0) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(peek().pos, std::move(expected), describe(peek()));
    }

    Token expect(Tok k, const char *what) {
        if (peek().kind != k)
            fail({what});
        return next();
    }

    bool accept(Tok k) {
        if (peek().kind != k)
            return false;
        next();
        return true;
    }

    bool at_keyword(std::string_view w) const {
        return peek().kind == Tok::Ident && peek().text == w;
    }

    void statement(Policy &p) {
        if (peek().kind != Tok::Ident)
            fail({"rule label", "'prefer'", "'penalty'"});
        if (at_keyword("prefer") && peek(1).kind == Tok::LParen) {
            prefer(p);
        } else if (at_keyword("penalty") && peek(1).kind == Tok::LParen) {
            penalty(p);
        } else {
            rule(p);
        }
    }

    Term argument() {
        const Token &t = peek();
        if (t.kind == Tok::Var) {
            next();
            Term v = Term::variable(t.text);
            v.pos = t.pos;
            return v;
        }
        if (t.kind == Tok::Int || (t.kind == Tok::Minus && peek(1).kind == Tok::Int)) {
            SourcePos p = t.pos;
            bool neg = accept(Tok::Minus);
            Token n = next();
            Term i = Term::integer(neg ? -n.value : n.value);
            i.pos = p;
            return i;
        }
        if (t.kind == Tok::Ident) {
            next();
            if (peek().kind == Tok::LParen)
                throw ParseError(peek().pos, {"',' or ')'"},
                                 "nested compound term under '" + t.text + "'");
            Term s = Term::symbol(t.text);
            s.pos = t.pos;
            return s;
        }
        fail({"constant", "variable", "integer"});
    }

    // identifier [ '(' arg {',' arg} ')' ]
    Term term(const char *what) {
        Token id = expect(Tok::Ident, what);
        Term t = Term::symbol(id.text);
        t.pos = id.pos;
        if (accept(Tok::LParen)) {
            t.args.push_back(argument());
            while (accept(Tok::Comma))
                t.args.push_back(argument());
            expect(Tok::RParen, "')'");
        }
        return t;
    }

    Term operand() {
        const Token &t = peek();
        if (t.kind == Tok::Var || t.kind == Tok::Int ||
            (t.kind == Tok::Minus && peek(1).kind == Tok::Int))
            return argument();
        fail({"variable", "integer"});
    }

    LinearExpr expr() {
        LinearExpr e;
        e.first = operand();
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            e.op = next().kind == Tok::Plus ? ArithOp::Plus : ArithOp::Minus;
            e.second = operand();
            if (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
                throw ParseError(peek().pos, {"comparison operator"},
                                 "arithmetic beyond one '+' or '-'");
        }
        return e;
    }

    BodyLiteral literal() {
        const Token &t = peek();
        bool arith = t.kind == Tok::Var || t.kind == Tok::Int ||
                     (t.kind == Tok::Minus && peek(1).kind == Tok::Int);
        if (arith) {
            ArithConstraint a;
            a.pos = t.pos;
            a.lhs = expr();
            switch (peek().kind) {
            case Tok::Gt: a.op = RelOp::Gt; break;
            case Tok::Gte: a.op = RelOp::Gte; break;
            case Tok::Lt: a.op = RelOp::Lt; break;
            case Tok::Lte: a.op = RelOp::Lte; break;
            case Tok::Eq: a.op = RelOp::Eq; break;
            case Tok::Neq: a.op = RelOp::Neq; break;
            default: fail({"'>'", "'>='", "'<'", "'<='", "'='", "'!='"});
            }
            next();
            a.rhs = expr();
            return a;
        }
        DomainLiteral d;
        d.negated = accept(Tok::Minus);
        if (peek().kind != Tok::Ident)
            fail({"atom", "variable", "integer"});
        d.atom = term("atom");
        return d;
    }

    std::vector<BodyLiteral> body() {
        std::vector<BodyLiteral> out;
        out.push_back(literal());
        while (accept(Tok::Comma))
            out.push_back(literal());
        return out;
    }

    HeadLiteral head() {
        HeadLiteral h;
        bool neg = accept(Tok::Minus);
        if (at_keyword("permitted")) {
            next();
            h.kind = neg ? HeadKind::NotPermitted : HeadKind::Permitted;
            expect(Tok::LParen, "'('");
            if (peek().kind == Tok::Minus)
                throw ParseError(peek().pos, {"action"},
                                 "negated action inside permitted (authorizations "
                                 "mention elementary actions only)");
            h.happening.action = term("action");
            expect(Tok::RParen, "')'");
        } else if (at_keyword("obl")) {
            next();
            h.kind = neg ? HeadKind::NotObl : HeadKind::Obl;
            expect(Tok::LParen, "'('");
            h.happening.negated = accept(Tok::Minus);
            h.happening.action = term("action");
            expect(Tok::RParen, "')'");
        } else {
            fail({"'permitted'", "'obl'"});
        }
        return h;
    }

    void rule(Policy &p) {
        PolicyRule r;
        r.pos = peek().pos;
        r.label = term("rule label");
        expect(Tok::Colon, "':'");
        if (at_keyword("normally")) {
            next();
            r.strictness = Strictness::Defeasible;
        }
        r.head = head();
        if (at_keyword("if")) {
            next();
            r.body = body();
        }
        expect(Tok::Dot, "'.'");
        p.rules.push_back(std::move(r));
    }

    void prefer(Policy &p) {
        PreferStatement s;
        s.pos = next().pos;
        expect(Tok::LParen, "'('");
        s.preferred = term("rule label");
        expect(Tok::Comma, "','");
        s.overridden = term("rule label");
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.'");
        p.prefers.push_back(std::move(s));
    }

    void penalty(Policy &p) {
        PenaltyStatement s;
        s.pos = next().pos;
        expect(Tok::LParen, "'('");
        s.target = term("rule label");
        expect(Tok::Comma, "','");
        bool neg = accept(Tok::Minus);
        Token n = expect(Tok::Int, "integer");
        s.points = neg ? -n.value : n.value;
        expect(Tok::RParen, "')'");
        if (at_keyword("if")) {
            next();
            s.condition = body();
        }
        expect(Tok::Dot, "'.'");
        p.penalties.push_back(std::move(s));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Policy parse_policy(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

Policy load_policy_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read policy file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_policy(ss.str());
}

}  // namespace aoplkit
