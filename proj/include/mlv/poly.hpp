#pragma once

#include "mlv/series.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mlv {

/// Univariate polynomial in x with PuiseuxSeries coefficients, lowest degree first.
/// Trailing exact-zero coefficients are removed, so the zero polynomial is empty.
class Poly {
public:
    Poly() = default;
    explicit Poly(const FieldTower* field) : field_(field) {}
    Poly(const FieldTower* field, std::vector<PuiseuxSeries> coeffs);

    static Poly x(const FieldTower* field);
    static Poly constant(const PuiseuxSeries& c);
    static Poly monomial(const PuiseuxSeries& c, std::size_t deg);
    /// sum_k psi[k] x^{p^k}
    static Poly additive(const FieldTower* field, const std::vector<PuiseuxSeries>& psi);

    [[nodiscard]] const FieldTower* field() const noexcept { return field_; }
    [[nodiscard]] const std::vector<PuiseuxSeries>& coeffs() const noexcept { return c_; }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] bool is_monic() const noexcept { return !c_.empty() && c_.back().is_one(); }
    [[nodiscard]] bool is_exact() const noexcept;
    /// Coefficient of x^k (zero beyond the degree).
    [[nodiscard]] PuiseuxSeries coeff(std::size_t k) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    friend bool operator==(const Poly& a, const Poly& b);

    [[nodiscard]] Poly scaled(const PuiseuxSeries& c) const;
    [[nodiscard]] Poly pow(unsigned n) const;
    /// Horner evaluation at a series.
    [[nodiscard]] PuiseuxSeries evaluate(const PuiseuxSeries& a) const;
    /// f(x + h) for a series h.
    [[nodiscard]] Poly shifted(const PuiseuxSeries& h) const;

    /// Renders in the polynomial grammar, e.g. "x^2 + x + t^(-1)".
    [[nodiscard]] std::string str() const;

private:
    void trim();

    const FieldTower* field_ = nullptr;
    std::vector<PuiseuxSeries> c_;
};

/// f = q*phi + r with deg r < deg phi. Throws std::invalid_argument if phi is
/// not monic of degree >= 1.
std::pair<Poly, Poly> divmod_monic(const Poly& f, const Poly& phi);

/// (a_0, a_1, ...) with f = sum a_n phi^n and deg a_n < deg phi.
std::vector<Poly> phi_expansion(const Poly& f, const Poly& phi);
/// sum a_n phi^n.
Poly reassemble(const std::vector<Poly>& expansion, const Poly& phi);

/// (f_0, f_1, ..., f_deg) with f(x + h) = sum_k f_k(x) h^k; f_k has coefficients
/// C(m, k) a_m x^{m-k}.
std::vector<Poly> hasse_derivatives(const Poly& f);

/// True when f = sum_k a_k x^{p^k} + b.
bool is_additive_plus_constant(const Poly& f);

using SeriesMatrix = std::vector<std::vector<PuiseuxSeries>>;

/// Division-free determinant (Samuelson-Berkowitz); precision propagates.
PuiseuxSeries determinant(const SeriesMatrix& m);
/// Determinant by permutation expansion; exponential, for cross-checks only.
PuiseuxSeries determinant_by_permutations(const SeriesMatrix& m);

} // namespace mlv
