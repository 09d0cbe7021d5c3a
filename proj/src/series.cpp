#include "mlv/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlv {

namespace {

const FieldTower* common_field(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    if (a.field() && b.field() && a.field() != b.field()) throw std::logic_error("series over different fields");
    return a.field() ? a.field() : b.field();
}

// Sorts by exponent and merges equal exponents.
void combine(std::vector<Term>& v)
{
    std::sort(v.begin(), v.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
    std::size_t out = 0;
    for (std::size_t k = 0; k < v.size();) {
        Term acc = v[k];
        std::size_t m = k + 1;
        while (m < v.size() && v[m].exp == acc.exp) acc.coeff += v[m++].coeff;
        if (!acc.coeff.is_zero()) v[out++] = std::move(acc);
        k = m;
    }
    v.resize(out);
}

} // namespace

PuiseuxSeries::PuiseuxSeries(const FieldTower* field, std::vector<Term> terms, ValOrInf precision)
    : field_(field), terms_(std::move(terms)), prec_(precision)
{
    normalize();
}

void PuiseuxSeries::normalize()
{
    combine(terms_);
    if (prec_.is_finite()) {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), prec_.value(),
                                   [](const Term& t, const Rat& r) { return t.exp < r; });
        terms_.erase(it, terms_.end());
    }
}

PuiseuxSeries PuiseuxSeries::monomial(const FqElem& c, const Rat& e)
{
    PuiseuxSeries s(c.tower());
    if (!c.is_zero()) s.terms_.push_back({e, c});
    return s;
}

PuiseuxSeries PuiseuxSeries::constant(const FieldTower* field, std::int64_t c)
{
    return monomial(field->from_int(c), 0);
}

bool PuiseuxSeries::is_one() const noexcept
{
    return is_exact() && terms_.size() == 1 && terms_[0].exp.is_zero() && terms_[0].coeff.is_one();
}

CertifiedVal PuiseuxSeries::valuation() const
{
    if (!terms_.empty()) return CertifiedVal::exact(terms_.front().exp);
    if (prec_.is_inf()) return CertifiedVal::exact(ValOrInf::infinity());
    return CertifiedVal::lower_bound(prec_.value());
}

ValOrInf PuiseuxSeries::order_bound() const
{
    return terms_.empty() ? prec_ : ValOrInf(terms_.front().exp);
}

const Term& PuiseuxSeries::leading() const
{
    if (terms_.empty()) throw std::logic_error("leading term of a series with no known terms");
    return terms_.front();
}

PuiseuxSeries PuiseuxSeries::operator-() const
{
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    PuiseuxSeries r(common_field(a, b));
    r.prec_ = min(a.prec_, b.prec_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    auto below = [&](const Rat& e) { return r.prec_.is_inf() || e < r.prec_.value(); };
    while (i < a.terms_.size() || j < b.terms_.size()) {
        const Term* t;
        if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp < b.terms_[j].exp)) {
            t = &a.terms_[i++];
        } else if (i == a.terms_.size() || b.terms_[j].exp < a.terms_[i].exp) {
            t = &b.terms_[j++];
        } else {
            if (!below(a.terms_[i].exp)) break;
            FqElem c = a.terms_[i].coeff + b.terms_[j].coeff;
            if (!c.is_zero()) r.terms_.push_back({a.terms_[i].exp, std::move(c)});
            ++i;
            ++j;
            continue;
        }
        if (!below(t->exp)) break;
        r.terms_.push_back(*t);
    }
    return r;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    PuiseuxSeries r(common_field(a, b));
    if (a.is_exact_zero() || b.is_exact_zero()) return r;
    r.prec_ = min(a.prec_ + b.order_bound(), b.prec_ + a.order_bound());
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            Rat e = ta.exp + tb.exp;
            if (r.prec_.is_finite() && !(e < r.prec_.value())) break;
            out.push_back({e, ta.coeff * tb.coeff});
        }
    }
    combine(out);
    r.terms_ = std::move(out);
    return r;
}

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    if (a.prec_ != b.prec_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
        if (a.terms_[k].exp != b.terms_[k].exp || !(a.terms_[k].coeff == b.terms_[k].coeff)) return false;
    return true;
}

PuiseuxSeries PuiseuxSeries::scaled(const FqElem& c) const
{
    if (c.is_zero()) return PuiseuxSeries(field_ ? field_ : c.tower(), {}, prec_);
    PuiseuxSeries r = *this;
    if (!r.field_) r.field_ = c.tower();
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

PuiseuxSeries PuiseuxSeries::shifted(const Rat& e) const
{
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) t.exp += e;
    if (r.prec_.is_finite()) r.prec_ = r.prec_.value() + e;
    return r;
}

PuiseuxSeries PuiseuxSeries::frobenius() const
{
    if (!field_) return *this;
    const Rat p(static_cast<std::int64_t>(field_->p()));
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) {
        t.exp *= p;
        t.coeff = t.coeff.frobenius();
    }
    if (r.prec_.is_finite()) r.prec_ = r.prec_.value() * p;
    return r;
}

PuiseuxSeries PuiseuxSeries::pow(std::uint64_t n) const
{
    if (n == 0) {
        if (!field_) throw std::logic_error("power of a series without field");
        return constant(field_, 1);
    }
    PuiseuxSeries result;
    PuiseuxSeries base = *this;
    bool have = false;
    while (n) {
        if (n & 1) {
            result = have ? result * base : base;
            have = true;
        }
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

PuiseuxSeries PuiseuxSeries::truncated(const ValOrInf& bound) const
{
    if (bound >= prec_) return *this;
    PuiseuxSeries r = *this;
    r.prec_ = bound;
    r.normalize();
    return r;
}

std::string render_monomial(const Rat& e)
{
    if (e.is_zero()) return "1";
    return "t^(" + e.str() + ")";
}

std::string PuiseuxSeries::str() const
{
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += " + ";
        if (t.exp.is_zero()) {
            s += t.coeff.str();
        } else if (t.coeff.is_one()) {
            s += render_monomial(t.exp);
        } else {
            s += t.coeff.str() + "*" + render_monomial(t.exp);
        }
    }
    if (s.empty()) s = "0";
    if (prec_.is_finite()) s += " + O(t^(" + prec_.value().str() + "))";
    return s;
}

PuiseuxSeries as_operator(const PuiseuxSeries& s) { return s.frobenius() - s; }

} // namespace mlv
