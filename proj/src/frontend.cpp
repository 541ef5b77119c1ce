#include "idalg/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace idalg {

namespace {

// ---- canonical form for ASTs ---------------------------------------------

std::strong_ordering compare_expr(const OpExpr& a, const OpExpr& b);

std::strong_ordering compare_atom(const OpAtom& a, const OpAtom& b) {
    if (auto c = int(a.kind) <=> int(b.kind); c != 0) return c;
    if (a.kind == OpAtom::Kind::Letter) return compare_letters(a.letter, b.letter);
    return compare_expr(*a.arg, *b.arg);
}

std::strong_ordering compare_term(const OpTerm& a, const OpTerm& b) {
    if (auto c = a.atoms.size() <=> b.atoms.size(); c != 0) return c;
    for (size_t i = 0; i < a.atoms.size(); ++i)
        if (auto c = compare_atom(a.atoms[i], b.atoms[i]); c != 0) return c;
    return std::strong_ordering::equal;
}

std::strong_ordering compare_expr(const OpExpr& a, const OpExpr& b) {
    if (auto c = a.terms.size() <=> b.terms.size(); c != 0) return c;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (auto c = compare_term(a.terms[i].first, b.terms[i].first); c != 0) return c;
        if (a.terms[i].second != b.terms[i].second)
            return a.terms[i].second < b.terms[i].second ? std::strong_ordering::less
                                                         : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

OpTerm normalize_term(OpTerm t) {
    std::sort(t.atoms.begin(), t.atoms.end(), [](const OpAtom& x, const OpAtom& y) {
        return compare_atom(x, y) == std::strong_ordering::less;
    });
    return t;
}

OpExpr normalize_expr(OpExpr e) {
    OpExpr out;
    for (auto& [t, c] : e.terms) {
        if (c == 0) continue;
        OpTerm nt = normalize_term(std::move(t));
        bool merged = false;
        for (size_t i = 0; i < out.terms.size(); ++i) {
            if (compare_term(out.terms[i].first, nt) == std::strong_ordering::equal) {
                out.terms[i].second += c;
                if (out.terms[i].second == 0) out.terms.erase(out.terms.begin() + i);
                merged = true;
                break;
            }
        }
        if (!merged) out.terms.emplace_back(std::move(nt), c);
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& x, const auto& y) {
        return compare_term(x.first, y.first) == std::strong_ordering::less;
    });
    return out;
}

// ---- tokenizer ------------------------------------------------------------

struct Token {
    enum class Kind { Number, Ident, Prime, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
    Kind kind;
    std::string text;
    int line, col;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& msg, int l, int c) const {
        throw ParseError("parse error at line " + std::to_string(l) + ", col " +
                             std::to_string(c) + ": " + msg,
                         l, c);
    }

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
        int l = line, c = col;
        if (pos >= src.size()) return {Token::Kind::End, "", l, c};
        char ch = src[pos];
        auto take = [&](Token::Kind k) {
            ++pos;
            ++col;
            return Token{k, std::string(1, ch), l, c};
        };
        switch (ch) {
            case '+': return take(Token::Kind::Plus);
            case '-': return take(Token::Kind::Minus);
            case '*': return take(Token::Kind::Star);
            case '^': return take(Token::Kind::Caret);
            case '/': return take(Token::Kind::Slash);
            case '(': return take(Token::Kind::LParen);
            case ')': return take(Token::Kind::RParen);
            case '\'': return take(Token::Kind::Prime);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                num += src[pos++];
                ++col;
            }
            return {Token::Kind::Number, num, l, c};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string id;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                        src[pos] == '_')) {
                id += src[pos++];
                ++col;
            }
            return {Token::Kind::Ident, id, l, c};
        }
        fail(std::string("unexpected character '") + ch + "'", l, c);
    }
};

struct Parser {
    Lexer lex;
    Token tok;
    const ParseOptions& opts;

    Parser(const std::string& s, const ParseOptions& o) : lex(s), opts(o) { tok = lex.next(); }

    void advance() { tok = lex.next(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("parse error at line " + std::to_string(tok.line) + ", col " +
                             std::to_string(tok.col) + ": " + msg,
                         tok.line, tok.col);
    }

    void expect(Token::Kind k, const char* what) {
        if (tok.kind != k) fail(std::string("expected ") + what);
        advance();
    }

    DiffLetter make_letter(const std::string& base, int order, int line, int col) {
        int rank = 0;
        if (!opts.alphabet.empty()) {
            auto it = std::find(opts.alphabet.begin(), opts.alphabet.end(), base);
            if (it == opts.alphabet.end())
                throw ParseError("parse error at line " + std::to_string(line) + ", col " +
                                     std::to_string(col) + ": unknown variable '" + base + "'",
                                 line, col);
            rank = int(it - opts.alphabet.begin());
        }
        if (opts.truncation && order > *opts.truncation)
            throw ParseError("parse error at line " + std::to_string(line) + ", col " +
                                 std::to_string(col) + ": derivative order " +
                                 std::to_string(order) + " exceeds truncation " +
                                 std::to_string(*opts.truncation),
                             line, col);
        return DiffLetter{base, order, rank};
    }

    unsigned parse_nat() {
        if (tok.kind != Token::Kind::Number) fail("expected a number");
        unsigned long v = std::stoul(tok.text);
        advance();
        return unsigned(v);
    }

    // atom := ident primes | ident "^(" nat ")" | "d(" expr ")" | "P(" expr ")" | "(" expr ")"
    OpExpr parse_atom() {
        if (tok.kind == Token::Kind::LParen) {
            advance();
            OpExpr e = parse_expr();
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        if (tok.kind != Token::Kind::Ident) fail("expected a variable, d(...), P(...) or '('");
        Token id = tok;
        advance();
        if ((id.text == "d" || id.text == "P") && tok.kind == Token::Kind::LParen) {
            advance();
            OpExpr inner = parse_expr();
            expect(Token::Kind::RParen, "')'");
            OpAtom atom;
            atom.kind = id.text == "d" ? OpAtom::Kind::D : OpAtom::Kind::P;
            atom.arg = std::make_shared<OpExpr>(std::move(inner));
            OpExpr e;
            e.terms.emplace_back(OpTerm{{atom}}, Scalar(1));
            return e;
        }
        int order = 0;
        while (tok.kind == Token::Kind::Prime) {
            ++order;
            advance();
        }
        if (order == 0 && tok.kind == Token::Kind::Caret) {
            // two-token lookahead: "^(" is a derivative order, "^n" an exponent
            size_t save_pos = lex.pos;
            int save_line = lex.line, save_col = lex.col;
            Token save_tok = tok;
            advance();
            if (tok.kind == Token::Kind::LParen) {
                advance();
                order = int(parse_nat());
                expect(Token::Kind::RParen, "')'");
            } else {
                lex.pos = save_pos;
                lex.line = save_line;
                lex.col = save_col;
                tok = save_tok;
            }
        }
        OpAtom atom;
        atom.kind = OpAtom::Kind::Letter;
        atom.letter = make_letter(id.text, order, id.line, id.col);
        OpExpr e;
        e.terms.emplace_back(OpTerm{{atom}}, Scalar(1));
        return e;
    }

    // factor := rational | atom ("^" nat)?
    OpExpr parse_factor() {
        if (tok.kind == Token::Kind::Number) {
            Integer num(tok.text);
            advance();
            Integer den = 1;
            if (tok.kind == Token::Kind::Slash) {
                advance();
                if (tok.kind != Token::Kind::Number) fail("expected a denominator");
                den = Integer(tok.text);
                if (den == 0) fail("zero denominator");
                advance();
            }
            OpExpr e;
            e.terms.emplace_back(OpTerm{}, Scalar(num) / Scalar(den));
            return e;
        }
        OpExpr e = parse_atom();
        if (tok.kind == Token::Kind::Caret) {
            advance();
            unsigned k = parse_nat();
            OpExpr power;
            power.terms.emplace_back(OpTerm{}, Scalar(1));
            for (unsigned i = 0; i < k; ++i) power = expr_mul(power, e);
            return power;
        }
        return e;
    }

    static OpExpr expr_mul(const OpExpr& a, const OpExpr& b) {
        OpExpr r;
        for (const auto& [ta, ca] : a.terms) {
            for (const auto& [tb, cb] : b.terms) {
                OpTerm t = ta;
                t.atoms.insert(t.atoms.end(), tb.atoms.begin(), tb.atoms.end());
                r.terms.emplace_back(std::move(t), ca * cb);
            }
        }
        return normalize_expr(std::move(r));
    }

    OpExpr parse_term() {
        OpExpr e = parse_factor();
        while (tok.kind == Token::Kind::Star) {
            advance();
            e = expr_mul(e, parse_factor());
        }
        return e;
    }

    OpExpr parse_expr() {
        OpExpr acc;
        Scalar sign = 1;
        if (tok.kind == Token::Kind::Plus) advance();
        else if (tok.kind == Token::Kind::Minus) {
            sign = -1;
            advance();
        }
        OpExpr first = parse_term();
        for (auto& [t, c] : first.terms) acc.terms.emplace_back(std::move(t), sign * c);
        while (tok.kind == Token::Kind::Plus || tok.kind == Token::Kind::Minus) {
            Scalar s = tok.kind == Token::Kind::Plus ? 1 : -1;
            advance();
            OpExpr next = parse_term();
            for (auto& [t, c] : next.terms) acc.terms.emplace_back(std::move(t), s * c);
        }
        return normalize_expr(std::move(acc));
    }
};

} // namespace

OpExpr parse(const std::string& input, const ParseOptions& opts) {
    Parser p(input, opts);
    OpExpr e = p.parse_expr();
    if (p.tok.kind != Token::Kind::End) p.fail("trailing input");
    return e;
}

RBElement reduce(const OpExpr& e, const DerivationConfig& cfg) {
    RBElement out;
    for (const auto& [term, coeff] : e.terms) {
        RBElement v = rb_one();
        for (const auto& atom : term.atoms) {
            RBElement a;
            switch (atom.kind) {
                case OpAtom::Kind::Letter:
                    a = rb_word(TensorWord{{mono_from_letter(atom.letter)}});
                    break;
                case OpAtom::Kind::D:
                    a = derive_word(reduce(*atom.arg, cfg), cfg);
                    break;
                case OpAtom::Kind::P:
                    a = apply_P(reduce(*atom.arg, cfg));
                    break;
            }
            v = mix_shuffle(v, a, cfg.weight);
        }
        for (const auto& [w, c] : v) rb_add_term(out, w, c * coeff);
    }
    return out;
}

std::string to_bracketed(const RBElement& a) { return to_string(a); }

std::string to_string(const OpExpr& e) {
    if (e.terms.empty()) return "0";
    std::string s;
    std::function<std::string(const OpTerm&)> term_str = [&](const OpTerm& t) -> std::string {
        if (t.atoms.empty()) return "1";
        std::string r;
        for (const auto& atom : t.atoms) {
            if (!r.empty()) r += "*";
            switch (atom.kind) {
                case OpAtom::Kind::Letter: r += to_string(atom.letter); break;
                case OpAtom::Kind::D: r += "d(" + to_string(*atom.arg) + ")"; break;
                case OpAtom::Kind::P: r += "P(" + to_string(*atom.arg) + ")"; break;
            }
        }
        return r;
    };
    for (const auto& [t, c] : e.terms) {
        Scalar a = c;
        if (s.empty()) {
            if (a < 0) { s += "-"; a = -a; }
        } else {
            s += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string body = term_str(t);
        if (a != 1 || body == "1") {
            s += scalar_to_string(a);
            if (body != "1") s += "*";
        }
        if (body != "1") s += body;
    }
    return s;
}

} // namespace idalg
