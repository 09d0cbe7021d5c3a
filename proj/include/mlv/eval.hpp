#pragma once

#include "mlv/certified.hpp"
#include "mlv/poly.hpp"
#include "mlv/stream.hpp"

#include <optional>

namespace mlv {

/// Precision and search limits shared by every evaluation.
struct Caps {
    /// Largest truncation bound r requested from a stream.
    Rat max_precision{64};
    /// Largest row index i explored by witness searches; also bounds the
    /// number of refinement steps between consecutive integers.
    int index_budget = 16;
    /// Largest degree over K of an approximant used for evaluation.
    std::size_t max_head_degree = 9;
    /// Allow closed forms of algebraic streams, including Exact(inf) when the
    /// stream's minimal polynomial divides f.
    bool symbolic_roots = true;
    /// Term limit for generic stream comparisons.
    std::size_t max_terms_compare = 4096;
};

/// Minimal polynomial over K of head + finite.
Poly minimal_polynomial(const AlgebraicElement& a);

/// v(h(a)) exactly; infinity iff the minimal polynomial of a divides h.
/// Uses v(h(a)) = v(N(h(a))) / deg a, valid because K is henselian.
ValOrInf valuation_at(const Poly& h, const AlgebraicElement& a);

/// h(a) for an element without head, as an exact series.
PuiseuxSeries evaluate_at(const Poly& h, const AlgebraicElement& a);

/// Certified v(f(s)) for the series produced by the stream. Truncates s below
/// growing bounds r and accepts v(f(a)) once it is strictly below the error
/// bound min_{k>=1} v(f_k(a)) + k * next, where f_k are Hasse derivatives.
CertifiedVal eval_valuation_at_stream(const Poly& f, const SeriesStream& s, const Caps& caps);

/// Exact v(f(s_m)) for f = sum a_k x^{p^k} + b with integer exponents in every a_k,
/// where s_m = sum_{j>=m} C(j,m) t^{-1/p^{j+1}}. The coefficient of each
/// exponent e - 1/p^M is periodic in M (Lucas), so one period decides it.
/// Returns LowerBound(caps.max_precision) when f(s_m) vanishes; nullopt when
/// f does not have the required shape.
std::optional<CertifiedVal> additive_row_certificate(const Poly& f, int m, const Caps& caps);

} // namespace mlv
