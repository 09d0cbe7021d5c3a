#include "mlv/eval.hpp"

#include "mlv/lucas.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace mlv {

namespace {

constexpr std::int64_t kMaxNormMargin = 1 << 14;

PuiseuxSeries psi_apply(const AlgebraicHead& h, const PuiseuxSeries& c)
{
    PuiseuxSeries acc(c.field());
    PuiseuxSeries pw = c;
    for (std::size_t k = 0; k < h.psi.size(); ++k) {
        if (k) pw = pw.frobenius();
        if (!h.psi[k].is_exact_zero()) acc += h.psi[k] * pw;
    }
    return acc;
}

// x * v mod irr, for v of length D and monic irr of degree D.
std::vector<PuiseuxSeries> times_x_mod(const std::vector<PuiseuxSeries>& v, const Poly& irr)
{
    const std::size_t d = v.size();
    std::vector<PuiseuxSeries> out(d, PuiseuxSeries(irr.field()));
    for (std::size_t i = 1; i < d; ++i) out[i] = v[i - 1];
    const PuiseuxSeries& top = v[d - 1];
    if (!top.is_exact_zero()) {
        for (std::size_t i = 0; i < d; ++i) {
            const auto& c = irr.coeffs()[i];
            if (!c.is_exact_zero()) out[i] -= top * c;
        }
    }
    return out;
}

// Valuation of the determinant of an exact, nonsingular matrix.
Rat determinant_valuation(const SeriesMatrix& m)
{
    const std::size_t n = m.size();
    std::vector<Rat> rowmin(n);
    Rat shift = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ValOrInf best = ValOrInf::infinity();
        for (const auto& e : m[i]) best = min(best, e.order_bound());
        if (best.is_inf()) throw std::logic_error("norm matrix has a zero row");
        rowmin[i] = best.value();
        shift += rowmin[i];
    }
    for (std::int64_t margin = 4; margin <= kMaxNormMargin; margin *= 2) {
        SeriesMatrix scaled(n);
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i].reserve(n);
            for (const auto& e : m[i]) scaled[i].push_back(e.shifted(-rowmin[i]).truncated(Rat(margin)));
        }
        PuiseuxSeries det = determinant(scaled);
        if (!det.empty()) return shift + det.leading().exp;
    }
    throw std::runtime_error("norm valuation not certified within the margin limit");
}

} // namespace

Poly minimal_polynomial(const AlgebraicElement& a)
{
    const FieldTower* F = a.finite.field();
    if (!a.head) {
        if (!F) throw std::logic_error("element without field");
        return Poly::x(F) - Poly::constant(a.finite);
    }
    F = a.head->psi_value.field();
    PuiseuxSeries cst = a.head->psi_value;
    if (!a.finite.empty()) cst += psi_apply(*a.head, a.finite);
    return Poly::additive(F, a.head->psi) - Poly::constant(cst);
}

PuiseuxSeries evaluate_at(const Poly& h, const AlgebraicElement& a)
{
    if (a.head) throw std::logic_error("evaluate_at needs an element of K");
    return h.evaluate(a.finite);
}

ValOrInf valuation_at(const Poly& h, const AlgebraicElement& a)
{
    if (h.is_zero()) return ValOrInf::infinity();
    if (!a.head) {
        PuiseuxSeries v = h.evaluate(a.finite);
        auto cv = v.valuation();
        if (!cv.is_exact()) throw std::logic_error("inexact evaluation at an element of K");
        return cv.value();
    }
    Poly irr = minimal_polynomial(a);
    Poly r = divmod_monic(h, irr).second;
    if (r.is_zero()) return ValOrInf::infinity();
    if (r.degree() == 0) return r.coeffs()[0].order_bound();
    const auto d = static_cast<std::size_t>(irr.degree());
    std::vector<PuiseuxSeries> col(d, PuiseuxSeries(irr.field()));
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) col[i] = r.coeffs()[i];
    SeriesMatrix m(d, std::vector<PuiseuxSeries>(d, PuiseuxSeries(irr.field())));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
        if (j + 1 < d) col = times_x_mod(col, irr);
    }
    return determinant_valuation(m) / Rat(static_cast<std::int64_t>(d));
}

CertifiedVal eval_valuation_at_stream(const Poly& f, const SeriesStream& s, const Caps& caps)
{
    if (f.is_zero()) return CertifiedVal::exact(ValOrInf::infinity());
    if (!f.is_exact()) throw std::invalid_argument("evaluation requires exact polynomial coefficients");
    if (f.degree() == 0) return CertifiedVal::exact(f.coeffs()[0].order_bound());

    if (caps.symbolic_roots) {
        if (auto e = s.exact_element()) return CertifiedVal::exact(valuation_at(f, *e));
    } else if (auto m = s.row_index()) {
        if (auto c = additive_row_certificate(f, *m, caps)) return *c;
    }

    const ValOrInf first = s.first_exponent();
    if (first.is_inf()) return CertifiedVal::exact(f.coeffs()[0].order_bound());

    // Newton bound: v(f(s)) >= min_k v(a_k) + k v(s).
    ValOrInf lb = ValOrInf::infinity();
    for (std::size_t k = 0; k < f.coeffs().size(); ++k)
        lb = min(lb, f.coeffs()[k].order_bound() + Rat(static_cast<std::int64_t>(k)) * first.value());

    const auto ders = hasse_derivatives(f);
    auto usable = [&](const Rat& r) {
        return r <= caps.max_precision && s.approximant_degree(r) <= caps.max_head_degree;
    };
    int refinements = 0;
    auto advance = [&](const Rat& r) -> std::optional<Rat> {
        Rat cand = r > Rat(0) ? r * Rat(2) : r + max(Rat(1), -r);
        if (usable(cand)) return cand;
        if (refinements >= caps.index_budget) return std::nullopt;
        ++refinements;
        Rat mid = (r + Rat(r.floor() + 1)) / Rat(2);
        if (!usable(mid)) return std::nullopt;
        return mid;
    };

    std::optional<Rat> r = first.value() + Rat(1);
    if (!usable(*r)) r = advance(first.value());
    while (r) {
        Truncation tr = s.truncate_below(*r);
        if (!caps.symbolic_roots && tr.head && tr.next.is_inf()) break;
        AlgebraicElement a = tr.approximant();
        ValOrInf g0 = valuation_at(f, a);
        if (tr.next.is_inf()) return CertifiedVal::exact(g0);
        ValOrInf bound = ValOrInf::infinity();
        for (std::size_t k = 1; k < ders.size(); ++k) {
            if (ders[k].is_zero()) continue;
            bound = min(bound, valuation_at(ders[k], a) + Rat(static_cast<std::int64_t>(k)) * tr.next.value());
        }
        if (g0 < bound) return CertifiedVal::exact(g0);
        ValOrInf step_lb = min(g0, bound);
        if (lb.is_inf() || step_lb > lb) lb = step_lb;
        r = advance(*r);
    }
    return CertifiedVal::lower_bound(lb.value());
}

std::optional<CertifiedVal> additive_row_certificate(const Poly& f, int m, const Caps& caps)
{
    if (f.is_zero() || !f.is_exact() || !is_additive_plus_constant(f)) return std::nullopt;
    const FieldTower* F = f.field();
    const std::uint32_t p = F->p();

    // alpha[e] = list of (k, coefficient of t^e in a_k)
    std::map<std::int64_t, std::vector<std::pair<int, FqElem>>> alpha;
    std::map<Rat, FqElem> finite;
    auto add_finite = [&](const Rat& e, const FqElem& c) {
        auto [it, inserted] = finite.emplace(e, c);
        if (!inserted) it->second += c;
    };
    std::uint64_t deg = 1;
    for (int k = 0; deg < f.coeffs().size(); ++k, deg *= p) {
        const auto& ak = f.coeffs()[deg];
        for (const auto& t : ak.terms()) {
            if (!t.exp.is_integer()) return std::nullopt;
            alpha[t.exp.num()].emplace_back(k, t.coeff);
            // Indices j in [m, k) give integer exponents e - p^{k-1-j}.
            for (int j = m; j < k; ++j) {
                std::uint32_t b = binomial_mod(j, m, p);
                if (b) add_finite(t.exp - Rat(checked_pow(p, static_cast<unsigned>(k - 1 - j))), t.coeff * F->from_int(b));
            }
        }
    }
    const PuiseuxSeries& b = f.coeffs()[0];
    std::set<Rat> b_exps;
    for (const auto& t : b.terms()) {
        add_finite(t.exp, t.coeff);
        b_exps.insert(t.exp);
    }

    auto coeff_at = [&](const std::vector<std::pair<int, FqElem>>& list, std::int64_t M) {
        FqElem acc = F->zero();
        for (const auto& [k, a] : list) {
            std::uint32_t c = binomial_mod(M + k - 1, m, p);
            if (c) acc += a * F->from_int(c);
        }
        return acc;
    };
    auto periodic_exp = [&](std::int64_t e, std::int64_t M) { return Rat(e) - Rat(1, checked_pow(p, static_cast<unsigned>(M))); };

    // A b-term at e - 1/p^M also receives the periodic coefficient there.
    for (const auto& x : b_exps) {
        if (x.is_integer()) continue;
        std::int64_t e = x.floor() + 1;
        auto it = alpha.find(e);
        if (it == alpha.end()) continue;
        Rat gap = Rat(e) - x;
        if (gap.num() != 1) continue;
        std::int64_t d = gap.den();
        std::int64_t M = 0;
        while (d % p == 0) {
            d /= p;
            ++M;
        }
        if (d != 1 || M < 1) continue;
        add_finite(x, coeff_at(it->second, M));
    }

    ValOrInf best = ValOrInf::infinity();
    for (const auto& [e, c] : finite)
        if (!c.is_zero()) {
            best = min(best, e);
            break;
        }

    std::int64_t period = 1;
    while (period <= m) period *= p;
    for (const auto& [e, list] : alpha) {
        bool nonzero = false;
        for (std::int64_t M = 1; M <= period && !nonzero; ++M) nonzero = !coeff_at(list, M).is_zero();
        if (!nonzero) continue;
        for (std::int64_t M = 1;; ++M) {
            if (coeff_at(list, M).is_zero()) continue;
            Rat x = periodic_exp(e, M);
            if (b_exps.count(x)) continue;
            best = min(best, x);
            break;
        }
    }
    if (best.is_inf()) return CertifiedVal::lower_bound(caps.max_precision);
    return CertifiedVal::exact(best);
}

} // namespace mlv
