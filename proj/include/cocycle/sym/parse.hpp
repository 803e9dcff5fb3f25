#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "cocycle/sym/expr.hpp"

namespace cocycle::sym {

enum class BracketConv { matrix_commutator, graded_commutator };

inline const char* bracket_conv_name(BracketConv c)
{
    return c == BracketConv::matrix_commutator ? "matrix" : "graded";
}

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos)
    {
    }
};

namespace detail {

// A multilinear polynomial in atoms: sum of coeff * word. Intermediate
// parse value; wrapped into trace words at the top level.
struct Poly {
    std::vector<std::pair<GRat, std::vector<AtomId>>> terms;

    static Poly scalar(GRat c)
    {
        Poly p;
        if (!c.is_zero())
            p.terms.emplace_back(std::move(c), std::vector<AtomId>{});
        return p;
    }
    static Poly atom(AtomId a)
    {
        Poly p;
        p.terms.emplace_back(GRat(1), std::vector<AtomId>{a});
        return p;
    }

    Poly& operator+=(const Poly& o)
    {
        for (const auto& t : o.terms)
            terms.push_back(t);
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        for (const auto& [c, w] : o.terms)
            terms.emplace_back(-c, w);
        return *this;
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly p;
        for (const auto& [ca, wa] : a.terms)
            for (const auto& [cb, wb] : b.terms) {
                std::vector<AtomId> w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                p.terms.emplace_back(ca * cb, std::move(w));
            }
        return p;
    }

    /// Degree if homogeneous, nullopt for the zero polynomial.
    std::optional<int> degree(std::size_t err_pos) const
    {
        std::optional<int> d;
        for (const auto& [c, w] : terms) {
            int dw = 0;
            for (AtomId a : w)
                dw += atom_degree(a);
            if (!d)
                d = dw;
            else if (*d != dw)
                throw ParseError("commutator argument is not degree-homogeneous", err_pos);
        }
        return d;
    }
};

inline Poly bracket_poly(const Poly& a, const Poly& b, BracketConv conv, std::size_t pos)
{
    Poly r = a * b;
    Poly ba = b * a;
    int sign = 1;
    if (conv == BracketConv::graded_commutator) {
        auto da = a.degree(pos), db = b.degree(pos);
        if (da && db && ((*da) * (*db)) % 2 != 0)
            sign = -1;
    }
    if (sign == 1)
        r -= ba;
    else
        r += ba;
    return r;
}

struct Lexer {
    std::string src;
    std::size_t pos = 0;

    explicit Lexer(std::string text)
    {
        // normalize the UTF-8 spellings the paper uses
        replace_all(text, "∫", " int ");   // integral sign
        replace_all(text, "ω", " w ");     // omega
        replace_all(text, "⁻¹", " INV "); // superscript -1
        replace_all(text, "−", "-");       // unicode minus
        src = std::move(text);
    }

    static void replace_all(std::string& s, const std::string& from, const std::string& to)
    {
        std::size_t p = 0;
        while ((p = s.find(from, p)) != std::string::npos) {
            s.replace(p, from.size(), to);
            p += to.size();
        }
    }

    void skip_ws()
    {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    bool eof()
    {
        skip_ws();
        return pos >= src.size();
    }

    char peek()
    {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

} // namespace detail

class Parser {
  public:
    Parser(std::string text, BracketConv conv, Domain domain)
        : lex_(std::move(text)), conv_(conv), domain_(domain)
    {
    }

    SymExpr parse()
    {
        if (lex_.eof())
            throw ParseError("empty input", 0);
        pending_words_.clear();
        // optional integral marker with optional domain subscript
        if (peek_word("int")) {
            eat_word();
            if (lex_.accept('_'))
                skip_subscript();
        }
        if (!peek_word("tr"))
            throw ParseError("expected 'tr'", lex_.pos);
        eat_word();
        detail::Poly body = parse_sum();
        if (!lex_.eof())
            throw ParseError("trailing input", lex_.pos);
        SymExpr e;
        e.domain = domain_;
        for (auto& [c, w] : body.terms)
            e.add_word(std::move(w), c);
        if (!e.is_zero() && e.degree() > 3)
            throw ParseError("integrand degree exceeds 3", lex_.pos);
        return e;
    }

  private:
    detail::Lexer lex_;
    BracketConv conv_;
    Domain domain_;
    std::vector<std::string> pending_words_;

    void skip_subscript()
    {
        if (lex_.accept('{')) {
            while (!lex_.eof() && lex_.peek() != '}')
                ++lex_.pos;
            if (!lex_.accept('}'))
                throw ParseError("unterminated subscript", lex_.pos);
        } else {
            eat_word();
        }
    }

    // --- word-level lookahead over letter runs, with greedy atom splitting

    std::string next_letter_run()
    {
        lex_.skip_ws();
        std::size_t p = lex_.pos;
        std::string run;
        while (p < lex_.src.size() &&
               (std::isalpha(static_cast<unsigned char>(lex_.src[p])) || lex_.src[p] == '\'' ))
            run += lex_.src[p++];
        return run;
    }

    bool peek_word(const std::string& w)
    {
        if (!pending_words_.empty())
            return pending_words_.back() == w;
        return next_letter_run() == w;
    }

    void eat_word()
    {
        if (!pending_words_.empty()) {
            pending_words_.pop_back();
            return;
        }
        std::string run = next_letter_run();
        lex_.skip_ws();
        lex_.pos += run.size();
    }

    /// Pop the next token from the current letter run (greedy longest match
    /// over atom names and keywords), or from pending splits.
    std::string next_symbol()
    {
        if (!pending_words_.empty()) {
            std::string s = pending_words_.back();
            pending_words_.pop_back();
            return s;
        }
        std::string run = next_letter_run();
        if (run.empty())
            return {};
        lex_.skip_ws();
        lex_.pos += run.size();
        static const std::vector<std::string> table = {"INV", "int", "tr", "dA", "dx", "dy",
                                                       "dz",  "fi",  "A",  "w",  "x",  "y",
                                                       "z",   "f",   "i"};
        std::vector<std::string> parts;
        std::size_t p = 0;
        while (p < run.size()) {
            std::string hit;
            for (const auto& t : table)
                if (run.compare(p, t.size(), t) == 0 && t.size() > hit.size())
                    hit = t;
            if (hit.empty())
                throw ParseError("unknown symbol '" + run.substr(p) + "'", lex_.pos);
            parts.push_back(hit);
            p += hit.size();
        }
        for (std::size_t k = parts.size(); k > 1; --k)
            pending_words_.push_back(parts[k - 1]);
        return parts[0];
    }

    detail::Poly parse_sum()
    {
        detail::Poly acc;
        bool negate = lex_.accept('-');
        if (!negate)
            lex_.accept('+');
        detail::Poly first = parse_product();
        if (negate)
            acc -= first;
        else
            acc += first;
        while (true) {
            if (lex_.accept('+')) {
                acc += parse_product();
            } else if (lex_.accept('-')) {
                acc -= parse_product();
            } else {
                break;
            }
        }
        return acc;
    }

    bool at_factor_start()
    {
        if (!pending_words_.empty())
            return true;
        char c = lex_.peek();
        if (c == '(' || c == '[' || std::isdigit(static_cast<unsigned char>(c)))
            return true;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            // a letter run that is a keyword does not start a factor
            std::string run = next_letter_run();
            return run != "tr" && run != "int";
        }
        return false;
    }

    detail::Poly parse_product()
    {
        detail::Poly acc = parse_factor();
        while (at_factor_start())
            acc = acc * parse_factor();
        return acc;
    }

    detail::Poly parse_factor()
    {
        detail::Poly base = parse_primary();
        while (lex_.accept('^')) {
            long e = parse_integer();
            if (e < 1)
                throw ParseError("exponent must be positive", lex_.pos);
            detail::Poly p = base;
            for (long k = 1; k < e; ++k)
                p = p * base;
            base = std::move(p);
        }
        return base;
    }

    long parse_integer()
    {
        lex_.skip_ws();
        std::size_t start = lex_.pos;
        std::string digits;
        while (lex_.pos < lex_.src.size() &&
               std::isdigit(static_cast<unsigned char>(lex_.src[lex_.pos])))
            digits += lex_.src[lex_.pos++];
        if (digits.empty())
            throw ParseError("expected integer", start);
        return std::stol(digits);
    }

    detail::Poly parse_primary()
    {
        lex_.skip_ws();
        std::size_t start = lex_.pos;
        if (!pending_words_.empty())
            return parse_symbol_primary(start);
        char c = lex_.peek();
        if (c == '(') {
            lex_.accept('(');
            detail::Poly inner = parse_sum();
            if (!lex_.accept(')'))
                throw ParseError("expected ')'", lex_.pos);
            return inner;
        }
        if (c == '[') {
            lex_.accept('[');
            detail::Poly a = parse_sum();
            if (!lex_.accept(','))
                throw ParseError("expected ',' in commutator", lex_.pos);
            detail::Poly b = parse_sum();
            if (!lex_.accept(']'))
                throw ParseError("expected ']'", lex_.pos);
            return detail::bracket_poly(a, b, conv_, start);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = parse_integer();
            GRat q{Rat(num)};
            if (lex_.accept('/')) {
                long den = parse_integer();
                if (den == 0)
                    throw ParseError("zero denominator", lex_.pos);
                q = GRat(Rat(num) / Rat(den));
            }
            // an immediately following 'i' makes it imaginary
            if (peek_word("i")) {
                eat_symbol_i();
                q = q * GRat::i();
            }
            return detail::Poly::scalar(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_symbol_primary(start);
        throw ParseError("unexpected character", start);
    }

    detail::Poly parse_symbol_primary(std::size_t start)
    {
        std::string sym = next_symbol();
        if (sym == "i")
            return detail::Poly::scalar(GRat::i());
        if (sym == "INV")
            throw ParseError("stray inverse marker", start);
        for (AtomId a = 0; a < atom::count; ++a) {
            if (sym == atom_name(a)) {
                if (a == atom::f && peek_word("INV")) {
                    next_symbol();
                    return detail::Poly::atom(atom::fi);
                }
                return detail::Poly::atom(a);
            }
        }
        throw ParseError("unknown symbol '" + sym + "'", start);
    }

    void eat_symbol_i()
    {
        std::string s = next_symbol();
        if (s != "i")
            throw ParseError("internal: expected i", lex_.pos);
    }
};

/// Parse an integrated trace expression, e.g. "int tr A [dx, dy]".
inline SymExpr parse(const std::string& text, BracketConv conv = BracketConv::matrix_commutator,
                     Domain domain = Domain::s3_closed)
{
    return Parser(text, conv, domain).parse();
}

/// Printer; output round-trips through parse() for the same domain.
inline std::string print(const SymExpr& e)
{
    if (e.is_zero())
        return "int tr 0 ( )"; // never parsed back; zero has no representation
    std::string s = "int tr ";
    bool first = true;
    for (const auto& [w, c] : e.terms) {
        std::string coeff;
        if (c.im == 0) {
            coeff = "(" + c.re.str() + ")";
        } else if (c.re == 0) {
            coeff = "(" + c.im.str() + " i)";
        } else {
            coeff = "(" + c.re.str() + " + " + c.im.str() + " i)";
        }
        if (!first)
            s += " + ";
        first = false;
        s += coeff + " " + w.str();
    }
    return s;
}

} // namespace cocycle::sym
