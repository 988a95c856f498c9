// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace fd {

std::string ParseError::message() const {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": ";
    switch (kind) {
    case Kind::SyntaxError:
        os << "expected " << expected << ", found " << (found.empty() ? "end of input" : "'" + found + "'");
        break;
    case Kind::UnknownVariable:
        os << "unknown variable '" << name << "'";
        break;
    case Kind::DuplicateVariable:
        os << "duplicate variable '" << name << "'";
        break;
    case Kind::EmptyDomain:
        os << "empty domain (lower bound exceeds upper bound)";
        break;
    case Kind::DomainTooWide:
        os << "domain wider than " << Domain::kMaxWidth << " values";
        break;
    case Kind::MissingSolveItem:
        os << "missing 'solve' item";
        break;
    }
    return os.str();
}

namespace {

enum class Tok {
    Ident,
    Int,
    Semi,
    Comma,
    LParen,
    RParen,
    DotDot,
    Plus,
    Minus,
    Star,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0; // Int only
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

    std::optional<ParseError> error; // set on a bad character / bad literal

  private:
    void advance() {
        skip_ws();
        cur_ = Token{};
        cur_.line = line_;
        cur_.column = col_;
        if (pos_ >= text_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                bump();
            cur_.kind = Tok::Ident;
            cur_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            std::size_t start = pos_;
            if (c == '-')
                bump();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                bump();
            cur_.kind = Tok::Int;
            cur_.text = std::string(text_.substr(start, pos_ - start));
            try {
                cur_.value = std::stoll(cur_.text);
            } catch (const std::out_of_range&) {
                error = ParseError{ParseError::Kind::SyntaxError, cur_.line, cur_.column,
                                   "integer in 64-bit range", cur_.text, ""};
            }
            return;
        }
        auto two = [&](Tok k, const char* s) {
            cur_.kind = k;
            cur_.text = s;
            bump();
            bump();
        };
        auto one = [&](Tok k) {
            cur_.kind = k;
            cur_.text = std::string(1, c);
            bump();
        };
        switch (c) {
        case ';': one(Tok::Semi); return;
        case ',': one(Tok::Comma); return;
        case '(': one(Tok::LParen); return;
        case ')': one(Tok::RParen); return;
        case '+': one(Tok::Plus); return;
        case '-': one(Tok::Minus); return;
        case '*': one(Tok::Star); return;
        case '.':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
                two(Tok::DotDot, "..");
                return;
            }
            break;
        case '<':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                two(Tok::Le, "<=");
            } else {
                one(Tok::Lt);
            }
            return;
        case '>':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                two(Tok::Ge, ">=");
            } else {
                one(Tok::Gt);
            }
            return;
        case '=': one(Tok::Eq); return;
        case '!':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                two(Tok::Ne, "!=");
                return;
            }
            break;
        default: break;
        }
        error = ParseError{ParseError::Kind::SyntaxError, line_, col_, "a token",
                           std::string(1, c), ""};
        cur_.kind = Tok::End;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

bool is_rel(Tok k) {
    return k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge || k == Tok::Eq ||
           k == Tok::Ne;
}

RelOp rel_of(Tok k) {
    switch (k) {
    case Tok::Lt: return RelOp::Lt;
    case Tok::Le: return RelOp::Le;
    case Tok::Gt: return RelOp::Gt;
    case Tok::Ge: return RelOp::Ge;
    case Tok::Eq: return RelOp::Eq;
    default: return RelOp::Ne;
    }
}

class Parser {
  public:
    explicit Parser(std::string_view text) : lex_(text) {}

    ParseResult run() {
        bool saw_solve = false;
        while (!err_) {
            if (lex_.error) {
                err_ = lex_.error;
                break;
            }
            const Token& t = lex_.peek();
            if (t.kind == Tok::End)
                break;
            if (t.kind == Tok::Ident && t.text == "var") {
                parse_var_decl();
            } else if (t.kind == Tok::Ident && t.text == "constraint") {
                parse_constraint();
            } else if (t.kind == Tok::Ident && t.text == "solve") {
                parse_solve();
                saw_solve = true;
                if (!err_ && lex_.peek().kind != Tok::End) {
                    const Token& extra = lex_.peek();
                    fail_syntax(extra, "end of input");
                }
                break;
            } else {
                fail_syntax(t, "'var', 'constraint' or 'solve'");
            }
        }
        if (err_)
            return *err_;
        if (!saw_solve) {
            Token t = lex_.peek();
            return ParseError{ParseError::Kind::MissingSolveItem, t.line, t.column, "", "", ""};
        }
        return std::move(model_);
    }

  private:
    void fail_syntax(const Token& t, std::string expected) {
        if (!err_)
            err_ = ParseError{ParseError::Kind::SyntaxError, t.line, t.column, std::move(expected),
                              t.text, ""};
    }

    Token expect(Tok k, const char* what) {
        if (lex_.error) {
            err_ = lex_.error;
            return Token{};
        }
        if (lex_.peek().kind != k) {
            fail_syntax(lex_.peek(), what);
            return Token{};
        }
        return lex_.take();
    }

    std::optional<VarId> resolve(const Token& ident) {
        auto it = var_ids_.find(ident.text);
        if (it == var_ids_.end()) {
            if (!err_)
                err_ = ParseError{ParseError::Kind::UnknownVariable, ident.line, ident.column, "",
                                  "", ident.text};
            return std::nullopt;
        }
        return it->second;
    }

    void parse_var_decl() {
        lex_.take(); // var
        Token name = expect(Tok::Ident, "variable name");
        if (err_)
            return;
        const Token& kw = lex_.peek();
        if (kw.kind != Tok::Ident || kw.text != "in") {
            fail_syntax(kw, "'in'");
            return;
        }
        lex_.take();
        Token lo = expect(Tok::Int, "integer lower bound");
        expect(Tok::DotDot, "'..'");
        Token hi = expect(Tok::Int, "integer upper bound");
        expect(Tok::Semi, "';'");
        if (err_)
            return;
        if (var_ids_.count(name.text)) {
            err_ = ParseError{ParseError::Kind::DuplicateVariable, name.line, name.column, "", "",
                              name.text};
            return;
        }
        if (lo.value > hi.value) {
            err_ = ParseError{ParseError::Kind::EmptyDomain, lo.line, lo.column, "", "", ""};
            return;
        }
        try {
            model_.domains.emplace_back(lo.value, hi.value);
        } catch (const WidthExceededError&) {
            err_ = ParseError{ParseError::Kind::DomainTooWide, lo.line, lo.column, "", "", ""};
            return;
        }
        VarId id = static_cast<VarId>(model_.variables.size());
        model_.variables.push_back({id, name.text});
        var_ids_[name.text] = id;
    }

    void parse_constraint() {
        lex_.take(); // constraint
        const Token& first = lex_.peek();
        if (first.kind == Tok::Ident && first.text == "alldifferent") {
            parse_alldifferent();
        } else if (first.kind == Tok::Ident) {
            Token ident = lex_.take();
            if (is_rel(lex_.peek().kind)) {
                parse_rel_bin(ident);
            } else {
                parse_linear_from(ident, 1);
            }
        } else if (first.kind == Tok::Int) {
            Token coeff = lex_.take();
            expect(Tok::Star, "'*'");
            Token ident = expect(Tok::Ident, "variable name");
            if (err_)
                return;
            parse_linear_from(ident, coeff.value);
        } else {
            fail_syntax(first, "a constraint body");
        }
        if (!err_)
            expect(Tok::Semi, "';'");
    }

    void parse_rel_bin(const Token& lhs_tok) {
        auto lhs = resolve(lhs_tok);
        if (!lhs)
            return;
        RelOp op = rel_of(lex_.take().kind);
        const Token& rhs = lex_.peek();
        RelBin rb;
        rb.lhs = *lhs;
        rb.op = op;
        if (rhs.kind == Tok::Int) {
            Token lit = lex_.take();
            rb.rhs_is_var = false;
            rb.rhs_value = lit.value;
        } else if (rhs.kind == Tok::Ident) {
            Token rtok = lex_.take();
            auto rv = resolve(rtok);
            if (!rv)
                return;
            rb.rhs_is_var = true;
            rb.rhs_var = *rv;
            rb.rhs_value = 0;
            if (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
                bool neg = lex_.take().kind == Tok::Minus;
                Token off = expect(Tok::Int, "integer offset");
                if (err_)
                    return;
                rb.rhs_value = neg ? -off.value : off.value;
            }
            // Normalize x > y + k  ==>  y < x - k (and >= likewise).
            if (op == RelOp::Gt || op == RelOp::Ge) {
                std::swap(rb.lhs, rb.rhs_var);
                rb.rhs_value = -rb.rhs_value;
                rb.op = op == RelOp::Gt ? RelOp::Lt : RelOp::Le;
            }
        } else {
            fail_syntax(rhs, "variable or integer");
            return;
        }
        model_.constraints.push_back(rb);
    }

    void parse_alldifferent() {
        lex_.take(); // alldifferent
        expect(Tok::LParen, "'('");
        AllDifferent ad;
        Token first = expect(Tok::Ident, "variable name");
        if (err_)
            return;
        auto v = resolve(first);
        if (!v)
            return;
        ad.vars.push_back(*v);
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            Token next = expect(Tok::Ident, "variable name");
            if (err_)
                return;
            auto nv = resolve(next);
            if (!nv)
                return;
            ad.vars.push_back(*nv);
        }
        if (ad.vars.size() < 2) {
            fail_syntax(lex_.peek(), "','");
            return;
        }
        expect(Tok::RParen, "')'");
        if (!err_)
            model_.constraints.push_back(std::move(ad));
    }

    // First term's variable token and coefficient are already consumed.
    void parse_linear_from(const Token& first_var, std::int64_t first_coeff) {
        Linear lin;
        auto v = resolve(first_var);
        if (!v)
            return;
        lin.terms.push_back({first_coeff, *v});
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool neg = lex_.take().kind == Tok::Minus;
            std::int64_t coeff = 1;
            if (lex_.peek().kind == Tok::Int) {
                coeff = lex_.take().value;
                expect(Tok::Star, "'*'");
                if (err_)
                    return;
            }
            Token vt = expect(Tok::Ident, "variable name");
            if (err_)
                return;
            auto tv = resolve(vt);
            if (!tv)
                return;
            lin.terms.push_back({neg ? -coeff : coeff, *tv});
        }
        Tok opk = lex_.peek().kind;
        if (opk == Tok::Le) {
            lin.op = LinOp::Le;
        } else if (opk == Tok::Eq) {
            lin.op = LinOp::Eq;
        } else {
            fail_syntax(lex_.peek(), "'<=' or '='");
            return;
        }
        lex_.take();
        Token bound = expect(Tok::Int, "integer bound");
        if (err_)
            return;
        lin.bound = bound.value;
        model_.constraints.push_back(std::move(lin));
    }

    void parse_solve() {
        lex_.take(); // solve
        Token what = expect(Tok::Ident, "'satisfy', 'minimize' or 'maximize'");
        if (err_)
            return;
        if (what.text == "satisfy") {
            model_.goal = Satisfy{};
        } else if (what.text == "minimize" || what.text == "maximize") {
            Token vt = expect(Tok::Ident, "variable name");
            if (err_)
                return;
            auto v = resolve(vt);
            if (!v)
                return;
            if (what.text == "minimize")
                model_.goal = Minimize{*v};
            else
                model_.goal = Maximize{*v};
        } else {
            fail_syntax(what, "'satisfy', 'minimize' or 'maximize'");
            return;
        }
        expect(Tok::Semi, "';'");
    }

    Lexer lex_;
    Model model_;
    std::unordered_map<std::string, VarId> var_ids_;
    std::optional<ParseError> err_;
};

} // namespace

ParseResult parse_model(std::string_view text) {
    return Parser(text).run();
}

std::string emit_model(const Model& m) {
    std::ostringstream os;
    for (int i = 0; i < m.num_vars(); ++i)
        os << "var " << m.variables[i].name << " in " << m.domains[i].min() << ".."
           << m.domains[i].max() << ";\n";
    for (const Constraint& c : m.constraints) {
        os << "constraint ";
        if (const auto* rb = std::get_if<RelBin>(&c)) {
            os << m.variables[rb->lhs].name << " " << rel_op_text(rb->op) << " ";
            if (rb->rhs_is_var) {
                os << m.variables[rb->rhs_var].name;
                if (rb->rhs_value > 0)
                    os << " + " << rb->rhs_value;
                else if (rb->rhs_value < 0)
                    os << " - " << -rb->rhs_value;
            } else {
                os << rb->rhs_value;
            }
        } else if (const auto* lin = std::get_if<Linear>(&c)) {
            for (std::size_t i = 0; i < lin->terms.size(); ++i) {
                std::int64_t coeff = lin->terms[i].coeff;
                if (i == 0) {
                    if (coeff != 1)
                        os << coeff << "*";
                } else {
                    os << (coeff < 0 ? " - " : " + ");
                    std::int64_t mag = coeff < 0 ? -coeff : coeff;
                    if (mag != 1)
                        os << mag << "*";
                }
                os << m.variables[lin->terms[i].var].name;
            }
            os << (lin->op == LinOp::Le ? " <= " : " = ") << lin->bound;
        } else {
            const auto& ad = std::get<AllDifferent>(c);
            os << "alldifferent(";
            for (std::size_t i = 0; i < ad.vars.size(); ++i) {
                if (i)
                    os << ", ";
                os << m.variables[ad.vars[i]].name;
            }
            os << ")";
        }
        os << ";\n";
    }
    os << "solve ";
    if (std::holds_alternative<Satisfy>(m.goal))
        os << "satisfy";
    else if (const auto* mn = std::get_if<Minimize>(&m.goal))
        os << "minimize " << m.variables[mn->var].name;
    else
        os << "maximize " << m.variables[std::get<Maximize>(m.goal).var].name;
    os << ";\n";
    return os.str();
}

} // namespace fd
