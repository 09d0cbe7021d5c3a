#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mlv {

/// Exact rational number with a canonical representation.
///
/// Numerator and denominator are 64-bit; every operation computes in 128-bit
/// and throws std::overflow_error when the reduced result does not fit.
/// Exponents in this project have denominators p^k, which stay far below the
/// limit at the indices the engine explores.
class Rat {
public:
    constexpr Rat() noexcept = default;
    constexpr Rat(std::int64_t n) noexcept : num_(n) {} // NOLINT(implicit)
    Rat(std::int64_t num, std::int64_t den);

    [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
    [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }

    /// Largest integer <= *this.
    [[nodiscard]] std::int64_t floor() const noexcept;

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat&, const Rat&) = default;
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept;

    /// "num/den", or just "num" for integers.
    [[nodiscard]] std::string str() const;
    /// Accepts "a", "a/b", with optional sign and surrounding blanks.
    static Rat parse(std::string_view text);

private:
    static Rat from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Integer power p^k as a rational 1/p^k helper: returns p^k, throws on overflow.
std::int64_t checked_pow(std::int64_t base, unsigned exp);

/// Element of Q ∪ {∞}: the codomain of every valuation in the engine.
class ValOrInf {
public:
    constexpr ValOrInf() noexcept : inf_(true) {}
    ValOrInf(const Rat& r) noexcept : inf_(false), v_(r) {} // NOLINT(implicit)
    ValOrInf(std::int64_t n) noexcept : inf_(false), v_(n) {} // NOLINT(implicit)

    static constexpr ValOrInf infinity() noexcept { return {}; }

    [[nodiscard]] bool is_inf() const noexcept { return inf_; }
    [[nodiscard]] bool is_finite() const noexcept { return !inf_; }
    /// Finite value; throws std::logic_error on ∞.
    [[nodiscard]] const Rat& value() const;

    friend ValOrInf operator+(const ValOrInf& a, const ValOrInf& b);
    friend bool operator==(const ValOrInf& a, const ValOrInf& b) noexcept;
    friend std::strong_ordering operator<=>(const ValOrInf& a, const ValOrInf& b) noexcept;

    /// "inf" or the rational string.
    [[nodiscard]] std::string str() const;
    static ValOrInf parse(std::string_view text);

private:
    bool inf_;
    Rat v_{};
};

std::ostream& operator<<(std::ostream& os, const ValOrInf& v);

inline ValOrInf min(const ValOrInf& a, const ValOrInf& b) { return b < a ? b : a; }

} // namespace mlv

template <>
struct std::hash<mlv::Rat> {
    std::size_t operator()(const mlv::Rat& r) const noexcept
    {
        return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
    }
};
