#include "mlv/parse.hpp"

#include <cctype>
#include <limits>

namespace mlv {

namespace {

class Parser {
public:
    Parser(std::string_view text, const FieldTower& F) : s_(text), F_(F) {}

    PuiseuxSeries series_to_end()
    {
        PuiseuxSeries r = series();
        expect_end();
        return r;
    }

    Poly poly_to_end()
    {
        Poly acc(&F_);
        bool negate = accept('-');
        for (;;) {
            Poly t = term();
            acc += negate ? -t : t;
            if (accept('+'))
                negate = false;
            else if (accept('-'))
                negate = true;
            else
                break;
        }
        expect_end();
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    /// Next non-space character after the current one.
    char peek_after()
    {
        skip_ws();
        std::size_t k = pos_ + 1;
        while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
        return k < s_.size() ? s_[k] : '\0';
    }

    bool accept(char c)
    {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void expect_end()
    {
        if (peek() != '\0') fail(std::string("unexpected '") + s_[pos_] + "'");
    }

    std::int64_t integer()
    {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        const std::size_t start = pos_;
        __int128 v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > std::numeric_limits<std::int64_t>::max()) {
                pos_ = start;
                fail("integer too large");
            }
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer");
        return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    }

    Rat rational()
    {
        const std::size_t start = pos_;
        std::int64_t num = integer();
        std::int64_t den = 1;
        if (accept('/')) {
            den = integer();
            if (den <= 0) {
                pos_ = start;
                fail("denominator must be positive");
            }
        }
        return Rat(num, den);
    }

    /// 't' ['^' ('(' rat ')' | int)]
    Rat t_power()
    {
        expect('t');
        if (!accept('^')) return Rat(1);
        if (accept('(')) {
            Rat e = rational();
            expect(')');
            return e;
        }
        return Rat(integer());
    }

    /// int ['*' t-power] | t-power
    PuiseuxSeries monomial()
    {
        std::int64_t c = 1;
        Rat e(0);
        char ch = peek();
        if (ch == 't') {
            e = t_power();
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            c = integer();
            if (peek() == '*' && peek_after() == 't') {
                expect('*');
                e = t_power();
            }
        } else {
            fail("expected a coefficient");
        }
        return PuiseuxSeries::monomial(F_.from_int(c), e);
    }

    PuiseuxSeries series()
    {
        PuiseuxSeries acc(&F_);
        bool negate = accept('-');
        for (;;) {
            PuiseuxSeries m = monomial();
            acc += negate ? -m : m;
            // stop before a '+' or '-' that starts a polynomial term rather than a monomial
            char next = peek_after();
            bool more = (peek() == '+' || peek() == '-') && (next == 't' || std::isdigit(static_cast<unsigned char>(next)));
            if (!more) break;
            negate = s_[pos_] == '-';
            ++pos_;
        }
        return acc;
    }

    Poly x_power(const PuiseuxSeries& c)
    {
        expect('x');
        std::size_t deg = 1;
        if (accept('^')) {
            std::int64_t d = integer();
            if (d < 0) fail("negative degree");
            deg = static_cast<std::size_t>(d);
        }
        return Poly::monomial(c, deg);
    }

    Poly term()
    {
        if (peek() == 'x') return x_power(PuiseuxSeries::constant(&F_, 1));
        PuiseuxSeries c(&F_);
        if (accept('(')) {
            c = series();
            expect(')');
        } else {
            c = monomial();
        }
        if (accept('*')) return x_power(c);
        if (peek() == 'x') return x_power(c);
        return Poly::constant(c);
    }

    std::string_view s_;
    const FieldTower& F_;
    std::size_t pos_ = 0;
};

int parse_index(std::string_view text, std::size_t offset)
{
    if (text.empty()) throw ParseError("expected an index", offset);
    int v = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k]))) throw ParseError("expected a nonnegative integer", offset + k);
        v = v * 10 + (text[k] - '0');
        if (v > 10000) throw ParseError("index too large", offset);
    }
    return v;
}

} // namespace

PuiseuxSeries parse_series(std::string_view text, const FieldTower& F) { return Parser(text, F).series_to_end(); }

Poly parse_poly(std::string_view text, const FieldTower& F) { return Parser(text, F).poly_to_end(); }

ValuationSpec parse_valuation_spec(std::string_view text)
{
    ValuationSpec spec;
    if (text == "vs") return spec;
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected rho:n,i, mu:n, vs or w:<series>,<rat>", 0);
    std::string_view kind = text.substr(0, colon);
    std::string_view rest = text.substr(colon + 1);
    const std::size_t base = colon + 1;
    if (kind == "rho") {
        auto comma = rest.find(',');
        if (comma == std::string_view::npos) throw ParseError("expected ','", base + rest.size());
        spec.kind = ValuationSpec::Kind::Rho;
        spec.n = parse_index(rest.substr(0, comma), base);
        spec.i = parse_index(rest.substr(comma + 1), base + comma + 1);
    } else if (kind == "mu") {
        spec.kind = ValuationSpec::Kind::Mu;
        spec.n = parse_index(rest, base);
    } else if (kind == "w") {
        auto comma = rest.rfind(',');
        if (comma == std::string_view::npos) throw ParseError("expected ','", base + rest.size());
        spec.kind = ValuationSpec::Kind::DepthZero;
        spec.center = std::string(rest.substr(0, comma));
        try {
            spec.delta = Rat::parse(rest.substr(comma + 1));
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad radius: ") + e.what(), base + comma + 1);
        }
    } else {
        throw ParseError("unknown valuation kind '" + std::string(kind) + "'", 0);
    }
    return spec;
}

ValuationPtr make_valuation(const TowerContext& ctx, const ValuationSpec& spec)
{
    switch (spec.kind) {
    case ValuationSpec::Kind::Rho: return ctx.rho(spec.n, spec.i);
    case ValuationSpec::Kind::Mu: return ctx.mu(spec.n);
    case ValuationSpec::Kind::Vs: return ctx.vs();
    case ValuationSpec::Kind::DepthZero:
        return Valuation::depth_zero(std::make_shared<FiniteStream>(parse_series(spec.center, ctx.field())), spec.delta);
    }
    throw std::logic_error("unhandled valuation kind");
}

} // namespace mlv
