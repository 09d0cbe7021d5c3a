#include "mlv/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace mlv {

namespace {

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    return v;
}

} // namespace

Rat::Rat(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(num, den);
}

Rat Rat::from_wide(__int128 num, __int128 den)
{
    if (den == 0) throw std::domain_error("division by zero rational");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational overflow");
    Rat r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

std::int64_t Rat::floor() const noexcept
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rat Rat::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rat& Rat::operator+=(const Rat& o)
{
    if (den_ == o.den_) return *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
    *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
    return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o)
{
    return *this = from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rat& Rat::operator/=(const Rat& o)
{
    if (o.num_ == 0) throw std::domain_error("division by zero rational");
    return *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept
{
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rat::str() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

std::int64_t checked_pow(std::int64_t base, unsigned exp)
{
    __int128 acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (!fits64(acc)) throw std::overflow_error("integer power overflow");
    }
    return static_cast<std::int64_t>(acc);
}

const Rat& ValOrInf::value() const
{
    if (inf_) throw std::logic_error("value() on infinity");
    return v_;
}

ValOrInf operator+(const ValOrInf& a, const ValOrInf& b)
{
    if (a.inf_ || b.inf_) return ValOrInf::infinity();
    return ValOrInf(a.v_ + b.v_);
}

bool operator==(const ValOrInf& a, const ValOrInf& b) noexcept
{
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ValOrInf& a, const ValOrInf& b) noexcept
{
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    return a.v_ <=> b.v_;
}

std::string ValOrInf::str() const { return inf_ ? "inf" : v_.str(); }

ValOrInf ValOrInf::parse(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "inf" || text == "oo") return infinity();
    return Rat::parse(text);
}

std::ostream& operator<<(std::ostream& os, const ValOrInf& v) { return os << v.str(); }

} // namespace mlv
