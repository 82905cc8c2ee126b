#include "jetdiff/parse.hpp"

#include <cctype>
#include <optional>
#include <string>

#include "jetdiff/error.hpp"

namespace jetdiff {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, Separator, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_blanks();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", line_, column_});
                return out;
            }
            const char c = text_[pos_];
            const int line = line_;
            const int column = column_;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += advance();
                if (pos_ < text_.size() && text_[pos_] == '.') {
                    throw ParseError("decimal literals are not accepted; write p/q", line_, column_);
                }
                out.push_back({Tok::Number, digits, line, column});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string ident;
                while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    ident += advance();
                }
                while (pos_ < text_.size() && text_[pos_] == '\'') ident += advance();
                out.push_back({Tok::Ident, ident, line, column});
            } else {
                Tok kind;
                switch (c) {
                    case '+': kind = Tok::Plus; break;
                    case '-': kind = Tok::Minus; break;
                    case '*': kind = Tok::Star; break;
                    case '/': kind = Tok::Slash; break;
                    case '^': kind = Tok::Caret; break;
                    case '(': kind = Tok::LParen; break;
                    case ')': kind = Tok::RParen; break;
                    case '=': kind = Tok::Equals; break;
                    case ';':
                    case '\n': kind = Tok::Separator; break;
                    case '.': throw ParseError("decimal literals are not accepted; write p/q", line, column);
                    default: throw ParseError(std::string("unexpected character '") + c + "'", line, column);
                }
                advance();
                out.push_back({kind, std::string(1, c), line, column});
            }
        }
    }

private:
    void skip_blanks() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) advance();
    }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

struct Scope {
    int rank = 0;           // bound on component indices of f and z
    int order = 0;          // bound on prime counts
    bool jets = false;
    bool base = false;
    bool group = false;
    bool series = false;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, Scope scope) : tokens_(std::move(tokens)), scope_(scope) {}

    Polynomial expression() {
        Polynomial value;
        bool negate = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negate = next().kind == Tok::Minus;
        value = term();
        if (negate) value = -value;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool minus = next().kind == Tok::Minus;
            Polynomial rhs = term();
            value = minus ? value - rhs : value + rhs;
        }
        return value;
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(std::string("expected ") + what, peek());
        return next();
    }

    [[noreturn]] static void fail(const std::string& message, const Token& at) {
        throw ParseError(message + (at.kind == Tok::End ? " at end of input" : " near '" + at.text + "'"), at.line,
                         at.column);
    }

private:
    static bool starts_factor(Tok kind) { return kind == Tok::Number || kind == Tok::Ident || kind == Tok::LParen; }

    Polynomial term() {
        Polynomial value = factor();
        while (true) {
            const Tok kind = peek().kind;
            if (kind == Tok::Star) {
                next();
                value *= factor();
            } else if (kind == Tok::Slash) {
                const Token& slash = next();
                const Polynomial divisor = factor();
                if (!divisor.is_constant()) fail("division by a non-constant is not polynomial", slash);
                if (divisor.is_zero()) fail("division by zero", slash);
                value /= divisor.constant_term();
            } else if (starts_factor(kind)) {
                value *= factor();
            } else {
                return value;
            }
        }
    }

    Polynomial factor() {
        if (peek().kind == Tok::Minus) {
            next();
            return -factor();
        }
        Polynomial base = primary();
        if (peek().kind == Tok::Caret) {
            next();
            const Token& exp = expect(Tok::Number, "an integer exponent");
            if (exp.text.size() > 4 || std::stoi(exp.text) > 1000) fail("exponent too large", exp);
            base = base.pow(static_cast<unsigned>(std::stoi(exp.text)));
        }
        return base;
    }

    Polynomial primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::Number:
                next();
                return Polynomial(Rational(Integer(tok.text)));
            case Tok::Ident:
                next();
                return Polynomial(resolve(tok));
            case Tok::LParen: {
                next();
                Polynomial inner = expression();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                fail("expected a number, variable or '('", tok);
        }
    }

    static std::optional<int> index_suffix(const std::string& s, std::size_t from) {
        if (from >= s.size() || s.size() - from > 3) return std::nullopt;
        for (std::size_t i = from; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        }
        const int value = std::stoi(s.substr(from));
        return value >= 1 ? std::optional<int>(value) : std::nullopt;
    }

    Variable resolve(const Token& tok) const {
        std::string name = tok.text;
        std::size_t primes = 0;
        while (!name.empty() && name.back() == '\'') {
            name.pop_back();
            ++primes;
        }
        if (name == "t" && primes == 0 && scope_.series) return Variable::series();
        if (!name.empty() && name[0] == 'f' && scope_.jets) {
            if (auto j = index_suffix(name, 1)) {
                if (primes == 0) fail("jet variable needs at least one prime", tok);
                if (static_cast<int>(primes) > scope_.order) {
                    fail("derivative order " + std::to_string(primes) + " exceeds jet order " + std::to_string(scope_.order), tok);
                }
                if (*j > scope_.rank) fail("component index exceeds rank " + std::to_string(scope_.rank), tok);
                return Variable::jet(static_cast<int>(primes), *j);
            }
        }
        if (primes == 0 && !name.empty() && name[0] == 'z' && scope_.base) {
            if (auto j = index_suffix(name, 1)) {
                if (*j > scope_.rank) fail("coordinate index exceeds rank " + std::to_string(scope_.rank), tok);
                return Variable::base(*j);
            }
        }
        if (primes == 0 && !name.empty() && name[0] == 'a' && scope_.group) {
            if (auto i = index_suffix(name, 1)) return Variable::group(*i);
        }
        fail("unknown variable", tok);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Scope scope_;
};

Polynomial parse_whole(std::string_view text, const Scope& scope) {
    Parser p(Lexer(text).run(), scope);
    Polynomial value = p.expression();
    if (p.peek().kind != Tok::End) Parser::fail("unexpected trailing input", p.peek());
    return value;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const JetSpec& spec) {
    Scope scope;
    scope.rank = spec.rank();
    scope.order = spec.order();
    scope.jets = scope.base = scope.group = true;
    return parse_whole(text, scope);
}

TargetMap parse_map(std::string_view text, int rank) {
    if (rank < 1) throw UsageError("rank must be >= 1");
    Scope scope;
    scope.rank = rank;
    scope.base = true;
    Parser p(Lexer(text).run(), scope);
    std::vector<std::optional<Polynomial>> components(static_cast<std::size_t>(rank));
    while (true) {
        while (p.peek().kind == Tok::Separator) p.next();
        if (p.peek().kind == Tok::End) break;
        const Token& lhs = p.expect(Tok::Ident, "a component name w<j>");
        std::optional<int> j;
        if (lhs.text.size() >= 2 && lhs.text[0] == 'w' && lhs.text.find('\'') == std::string::npos) {
            bool digits = true;
            for (std::size_t i = 1; i < lhs.text.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(lhs.text[i]));
            if (digits && lhs.text.size() <= 4) j = std::stoi(lhs.text.substr(1));
        }
        if (!j || *j < 1 || *j > rank) Parser::fail("expected w1..w" + std::to_string(rank), lhs);
        if (components[static_cast<std::size_t>(*j - 1)]) Parser::fail("component defined twice", lhs);
        p.expect(Tok::Equals, "'='");
        components[static_cast<std::size_t>(*j - 1)] = p.expression();
        if (p.peek().kind != Tok::Separator && p.peek().kind != Tok::End) {
            Parser::fail("expected ';' between components", p.peek());
        }
    }
    std::vector<Polynomial> out;
    for (int j = 1; j <= rank; ++j) {
        if (!components[static_cast<std::size_t>(j - 1)]) {
            const Token& end = p.peek();
            throw ParseError("missing component w" + std::to_string(j), end.line, end.column);
        }
        out.push_back(*components[static_cast<std::size_t>(j - 1)]);
    }
    return TargetMap(std::move(out));
}

ReparamJet parse_reparam(std::string_view text, int order) {
    if (order < 1) throw UsageError("order must be >= 1");
    Scope scope;
    scope.series = true;
    const Polynomial p = parse_whole(text, scope);
    const Variable t = Variable::series();
    if (!p.constant_term().is_zero()) throw ParseError("reparametrization must vanish at t = 0", 1, 1);
    if (p.degree() > static_cast<unsigned>(order)) {
        throw ParseError("reparametrization has terms beyond t^" + std::to_string(order), 1, 1);
    }
    std::vector<Polynomial> coeffs;
    for (int i = 1; i <= order; ++i) coeffs.emplace_back(p.coefficient(Monomial(t, static_cast<unsigned>(i))));
    if (coeffs.front().is_zero()) throw MathError("reparametrization has a_1 = 0");
    return ReparamJet(std::move(coeffs));
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

}  // namespace

std::vector<Rational> parse_point(std::string_view text) {
    std::vector<Rational> out;
    for (const auto& part : split(text, ',')) out.push_back(Rational::parse(part));
    return out;
}

RationalMatrix parse_matrix(std::string_view text) {
    std::vector<RationalVector> rows;
    for (const auto& row : split(text, ';')) rows.push_back(parse_point(row));
    return RationalMatrix::from_rows(rows);
}

}  // namespace jetdiff
