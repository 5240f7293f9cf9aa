#include "qma/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace qma {

namespace {

enum class Tok { Number, Ident, Q, Caret, Star, Plus, Minus, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && s[i] == '/') {
                std::size_t j = i + 1;
                if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                    i = j;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                }
            }
            out.push_back({Tok::Number, s.substr(start, i - start), start});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            std::string word = s.substr(start, i - start);
            out.push_back({word == "q" ? Tok::Q : Tok::Ident, std::move(word), start});
        } else {
            Tok k;
            switch (c) {
                case '^': k = Tok::Caret; break;
                case '*': k = Tok::Star; break;
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", i);
            }
            out.push_back({k, s.substr(i, 1), start});
            ++i;
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(const Presentation& p, const std::string& text, long budget)
        : p_(p), toks_(tokenize(text)), budget_(budget) {}

    NcPoly run() {
        NcPoly r = expr();
        if (peek().kind != Tok::End) throw ParseError("trailing input", peek().pos);
        return r;
    }

private:
    const Token& peek() const { return toks_[cur_]; }
    Token next() { return toks_[cur_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++cur_;
        return true;
    }

    NcPoly expr() {
        bool neg = accept(Tok::Minus);
        NcPoly r = term();
        if (neg) r = r.scaled(RatFunc(-1));
        for (;;) {
            if (accept(Tok::Plus)) {
                r = r + term();
            } else if (accept(Tok::Minus)) {
                r = r + term().scaled(RatFunc(-1));
            } else {
                return r;
            }
        }
    }

    NcPoly term() {
        NcPoly r = factor();
        while (accept(Tok::Star)) r = nc_mul(p_, r, factor(), budget_);
        return r;
    }

    long integer_exponent() {
        bool neg = accept(Tok::Minus);
        const Token& t = peek();
        if (t.kind != Tok::Number || t.text.find('/') != std::string::npos)
            throw ParseError("expected integer exponent", t.pos);
        long v = std::stol(next().text);
        return neg ? -v : v;
    }

    NcPoly factor() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                Token tok = next();
                auto slash = tok.text.find('/');
                if (slash == std::string::npos)
                    return NcPoly::unit(RatFunc(Rational(BigInt(tok.text))));
                BigInt num(tok.text.substr(0, slash));
                BigInt den(tok.text.substr(slash + 1));
                if (den == 0) throw ParseError("division by zero", tok.pos);
                return NcPoly::unit(RatFunc(Rational(num, den)));
            }
            case Tok::Q: {
                next();
                long e = accept(Tok::Caret) ? integer_exponent() : 1;
                return NcPoly::unit(RatFunc::q_power(e));
            }
            case Tok::Ident: {
                Token tok = next();
                int g = p_.gen_index(tok.text);
                if (g < 0) throw ParseError("unknown generator '" + tok.text + "'", tok.pos);
                long e = accept(Tok::Caret) ? integer_exponent() : 1;
                if (e == 0) return NcPoly::unit(RatFunc(1));
                if (e < 0 && !p_.gen(g).invertible)
                    throw ParseError("generator '" + tok.text + "' is not invertible", tok.pos);
                return normal_form(p_, RatFunc(1), std::vector<Unit>(
                                       static_cast<std::size_t>(e > 0 ? e : -e),
                                       Unit{g, e > 0 ? 1 : -1}),
                                   budget_);
            }
            case Tok::LParen: {
                next();
                NcPoly inner = expr();
                if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
                if (accept(Tok::Caret)) {
                    std::size_t epos = peek().pos;
                    long e = integer_exponent();
                    if (e < 0)
                        throw ParseError("negative exponent on a parenthesized expression", epos);
                    NcPoly out = NcPoly::unit(RatFunc(1));
                    for (long k = 0; k < e; ++k) out = nc_mul(p_, out, inner, budget_);
                    return out;
                }
                return inner;
            }
            default: throw ParseError("expected a factor", t.pos);
        }
    }

    const Presentation& p_;
    std::vector<Token> toks_;
    std::size_t cur_ = 0;
    long budget_;
};

}  // namespace

NcPoly parse_expr(const Presentation& p, const std::string& text, long budget) {
    if (!p.finalized()) throw std::logic_error("parse_expr: presentation not finalized");
    return Parser(p, text, budget).run();
}

}  // namespace qma
