#pragma once

#include "mlv/certified.hpp"
#include "mlv/field_tower.hpp"
#include "mlv/rational.hpp"

#include <string>
#include <vector>

namespace mlv {

struct Term {
    Rat exp;
    FqElem coeff;
};

/// Finite-support Puiseux series sum c_q t^q with exact rational exponents.
///
/// The stored terms agree with the represented object on every exponent below
/// `precision()`; an infinite precision means the series is exact. Terms are
/// strictly increasing, nonzero, and all below the precision.
class PuiseuxSeries {
public:
    PuiseuxSeries() = default;
    explicit PuiseuxSeries(const FieldTower* field) : field_(field) {}
    PuiseuxSeries(const FieldTower* field, std::vector<Term> terms, ValOrInf precision = ValOrInf::infinity());

    static PuiseuxSeries monomial(const FqElem& c, const Rat& e);
    static PuiseuxSeries constant(const FieldTower* field, std::int64_t c);

    [[nodiscard]] const FieldTower* field() const noexcept { return field_; }
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
    [[nodiscard]] const ValOrInf& precision() const noexcept { return prec_; }
    [[nodiscard]] bool is_exact() const noexcept { return prec_.is_inf(); }
    /// No known terms (the series may still be imprecise).
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool is_exact_zero() const noexcept { return terms_.empty() && prec_.is_inf(); }
    [[nodiscard]] bool is_one() const noexcept;

    /// Exponent of the first term; a lower bound equal to the precision when
    /// no term is known; exact infinity for the exact zero series.
    [[nodiscard]] CertifiedVal valuation() const;
    /// Exponent of the first term, or the precision when there is none.
    [[nodiscard]] ValOrInf order_bound() const;
    [[nodiscard]] const Term& leading() const;

    PuiseuxSeries operator-() const;
    friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
    friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
    friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
    PuiseuxSeries& operator+=(const PuiseuxSeries& b) { return *this = *this + b; }
    PuiseuxSeries& operator-=(const PuiseuxSeries& b) { return *this = *this - b; }
    PuiseuxSeries& operator*=(const PuiseuxSeries& b) { return *this = *this * b; }

    /// Exact structural equality: same terms and same precision.
    friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

    [[nodiscard]] PuiseuxSeries scaled(const FqElem& c) const;
    /// Multiplication by t^e.
    [[nodiscard]] PuiseuxSeries shifted(const Rat& e) const;
    /// Termwise (sum c_q t^q)^p = sum c_q^p t^{pq}; precision scales by p.
    [[nodiscard]] PuiseuxSeries frobenius() const;
    [[nodiscard]] PuiseuxSeries pow(std::uint64_t n) const;
    /// Drops terms at or above `bound` and lowers the precision to it.
    [[nodiscard]] PuiseuxSeries truncated(const ValOrInf& bound) const;

    /// "t^(-1/2) + 2*t^(3)"; "0" for no terms; appends " + O(t^(r))" when imprecise.
    [[nodiscard]] std::string str() const;

private:
    void normalize();

    const FieldTower* field_ = nullptr;
    std::vector<Term> terms_;
    ValOrInf prec_ = ValOrInf::infinity();
};

/// AS(s) = s^p - s, computed with the Frobenius shortcut.
PuiseuxSeries as_operator(const PuiseuxSeries& s);

/// Renders t^e as used by the series grammar: "1", "t", "t^(e)".
std::string render_monomial(const Rat& e);

} // namespace mlv
