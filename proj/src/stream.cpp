#include "mlv/stream.hpp"

#include <stdexcept>

namespace mlv {

std::string AlgebraicElement::describe() const
{
    if (!head) return finite.str();
    if (finite.empty()) return head->name;
    return head->name + " + " + finite.str();
}

ValOrInf SeriesStream::first_exponent() const
{
    auto c = clone();
    if (auto t = c->next()) return t->exp;
    return ValOrInf::infinity();
}

FiniteStream::FiniteStream(PuiseuxSeries s) : s_(std::move(s))
{
    if (!s_.is_exact()) throw std::invalid_argument("finite stream requires an exact series");
}

std::unique_ptr<SeriesStream> FiniteStream::clone() const { return std::make_unique<FiniteStream>(s_); }

std::optional<Term> FiniteStream::next()
{
    if (pos_ >= s_.terms().size()) return std::nullopt;
    return s_.terms()[pos_++];
}

Truncation FiniteStream::truncate_below(const Rat& r) const
{
    Truncation t{nullptr, PuiseuxSeries(s_.field()), ValOrInf::infinity()};
    std::vector<Term> kept;
    for (const auto& term : s_.terms()) {
        if (term.exp < r) {
            kept.push_back(term);
        } else {
            t.next = term.exp;
            break;
        }
    }
    t.finite = PuiseuxSeries(s_.field(), std::move(kept), t.next);
    return t;
}

std::optional<AlgebraicElement> FiniteStream::exact_element() const { return AlgebraicElement{nullptr, s_}; }

CertifiedVal stream_difference_valuation(const SeriesStream& a, const SeriesStream& b, std::size_t max_terms)
{
    if (auto v = a.difference_valuation(b)) return *v;
    if (auto v = b.difference_valuation(a)) return *v;
    auto ga = a.clone();
    auto gb = b.clone();
    auto ta = ga->next();
    auto tb = gb->next();
    for (std::size_t k = 0;; ++k) {
        if (!ta && !tb) return CertifiedVal::exact(ValOrInf::infinity());
        if (!ta) return CertifiedVal::exact(tb->exp);
        if (!tb) return CertifiedVal::exact(ta->exp);
        if (ta->exp < tb->exp) return CertifiedVal::exact(ta->exp);
        if (tb->exp < ta->exp) return CertifiedVal::exact(tb->exp);
        if (!(ta->coeff == tb->coeff)) return CertifiedVal::exact(ta->exp);
        if (k == max_terms) return CertifiedVal::lower_bound(ta->exp);
        ta = ga->next();
        tb = gb->next();
    }
}

std::vector<Term> take_terms(const SeriesStream& s, std::size_t count)
{
    auto g = s.clone();
    std::vector<Term> out;
    while (out.size() < count) {
        auto t = g->next();
        if (!t) break;
        out.push_back(std::move(*t));
    }
    return out;
}

} // namespace mlv
