#pragma once

#include "mlv/series.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mlv {

/// An algebraic element h of degree p^k over K whose minimal polynomial has
/// the shape Psi(x) - Psi(h) for an additive Psi = sum_k psi_k x^{p^k}.
///
/// For any c in K, h + c then has minimal polynomial Psi(x) - Psi(c) - Psi(h).
struct AlgebraicHead {
    std::string name;
    /// psi_k, the coefficient of x^{p^k}; exact series.
    std::vector<PuiseuxSeries> psi;
    /// Psi(h), exact.
    PuiseuxSeries psi_value;
    std::size_t degree = 1;
    /// Every exponent in the support of h lies below this bound.
    Rat support_bound;
};

using HeadPtr = std::shared_ptr<const AlgebraicHead>;

/// An element head + finite of the algebraic closure, head optional.
struct AlgebraicElement {
    HeadPtr head;
    PuiseuxSeries finite;

    [[nodiscard]] std::size_t degree() const { return head ? head->degree : 1; }
    [[nodiscard]] std::string describe() const;
};

/// Truncation of a stream below a bound r: the approximant head + finite
/// agrees with the stream on every exponent < r, and `next` is the exact
/// exponent of the first omitted term (infinity when the stream is exhausted).
struct Truncation {
    HeadPtr head;
    PuiseuxSeries finite;
    ValOrInf next;

    /// The exact element head + (kept terms of finite).
    [[nodiscard]] AlgebraicElement approximant() const { return {head, PuiseuxSeries(finite.field(), finite.terms())}; }
};

/// Lazy generator of a series with strictly increasing exponents.
class SeriesStream {
public:
    virtual ~SeriesStream() = default;

    [[nodiscard]] virtual std::unique_ptr<SeriesStream> clone() const = 0;
    [[nodiscard]] virtual const FieldTower* field() const = 0;

    /// Next term in increasing exponent order; nullopt once exhausted.
    virtual std::optional<Term> next() = 0;
    virtual void reset() = 0;

    [[nodiscard]] virtual Truncation truncate_below(const Rat& r) const = 0;
    [[nodiscard]] virtual ValOrInf first_exponent() const;
    /// Degree over K of the approximant truncate_below(r) would return.
    [[nodiscard]] virtual std::size_t approximant_degree(const Rat& r) const { (void)r; return 1; }

    /// Closed form of the whole stream when it is algebraic and known.
    [[nodiscard]] virtual std::optional<AlgebraicElement> exact_element() const { return std::nullopt; }

    /// v(this - other) when this stream can decide it structurally.
    [[nodiscard]] virtual std::optional<CertifiedVal> difference_valuation(const SeriesStream& other) const
    {
        (void)other;
        return std::nullopt;
    }

    /// Support is F_p-valued sum_{j} C(j, m) t^{-1/p^{j+1}}: the row index m.
    [[nodiscard]] virtual std::optional<int> row_index() const { return std::nullopt; }

    [[nodiscard]] virtual std::string describe() const = 0;
};

using StreamPtr = std::shared_ptr<const SeriesStream>;

/// Stream over an exact finite series.
class FiniteStream final : public SeriesStream {
public:
    explicit FiniteStream(PuiseuxSeries s);

    [[nodiscard]] std::unique_ptr<SeriesStream> clone() const override;
    [[nodiscard]] const FieldTower* field() const override { return s_.field(); }
    std::optional<Term> next() override;
    void reset() override { pos_ = 0; }
    [[nodiscard]] Truncation truncate_below(const Rat& r) const override;
    [[nodiscard]] std::optional<AlgebraicElement> exact_element() const override;
    [[nodiscard]] std::string describe() const override { return s_.str(); }

    [[nodiscard]] const PuiseuxSeries& series() const noexcept { return s_; }

private:
    PuiseuxSeries s_;
    std::size_t pos_ = 0;
};

/// v(a - b) by walking both generators in step; LowerBound after `max_terms`
/// matching terms.
CertifiedVal stream_difference_valuation(const SeriesStream& a, const SeriesStream& b, std::size_t max_terms);

/// Collects the first `count` terms of a fresh copy of the stream.
std::vector<Term> take_terms(const SeriesStream& s, std::size_t count);

} // namespace mlv
