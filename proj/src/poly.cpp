#include "mlv/poly.hpp"

#include "mlv/lucas.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mlv {

namespace {

const FieldTower* pick_field(const FieldTower* a, const FieldTower* b)
{
    if (a && b && a != b) throw std::logic_error("polynomials over different fields");
    return a ? a : b;
}

std::string render_coeff_series(const PuiseuxSeries& s)
{
    std::string body;
    for (const auto& t : s.terms()) {
        if (!body.empty()) body += " + ";
        if (t.exp.is_zero())
            body += t.coeff.str();
        else if (t.coeff.is_one())
            body += render_monomial(t.exp);
        else
            body += t.coeff.str() + "*" + render_monomial(t.exp);
    }
    if (s.precision().is_finite()) body += (body.empty() ? "" : " + ") + std::string("O(t^(") + s.precision().value().str() + "))";
    return body;
}

} // namespace

Poly::Poly(const FieldTower* field, std::vector<PuiseuxSeries> coeffs) : field_(field), c_(std::move(coeffs))
{
    for (const auto& c : c_) field_ = pick_field(field_, c.field());
    trim();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

Poly Poly::x(const FieldTower* field)
{
    return Poly(field, {PuiseuxSeries(field), PuiseuxSeries::constant(field, 1)});
}

Poly Poly::constant(const PuiseuxSeries& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const PuiseuxSeries& c, std::size_t deg)
{
    std::vector<PuiseuxSeries> v(deg + 1, PuiseuxSeries(c.field()));
    v[deg] = c;
    return Poly(c.field(), std::move(v));
}

Poly Poly::additive(const FieldTower* field, const std::vector<PuiseuxSeries>& psi)
{
    Poly r(field);
    std::uint64_t deg = 1;
    for (const auto& c : psi) {
        r += monomial(c, deg);
        deg *= field->p();
    }
    return r;
}

bool Poly::is_exact() const noexcept
{
    return std::all_of(c_.begin(), c_.end(), [](const PuiseuxSeries& s) { return s.is_exact(); });
}

PuiseuxSeries Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : PuiseuxSeries(field_); }

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b)
{
    const FieldTower* F = pick_field(a.field_, b.field_);
    std::vector<PuiseuxSeries> out(std::max(a.c_.size(), b.c_.size()), PuiseuxSeries(F));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k < a.c_.size() && k < b.c_.size())
            out[k] = a.c_[k] + b.c_[k];
        else
            out[k] = k < a.c_.size() ? a.c_[k] : b.c_[k];
    }
    return Poly(F, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b)
{
    const FieldTower* F = pick_field(a.field_, b.field_);
    if (a.is_zero() || b.is_zero()) return Poly(F);
    std::vector<PuiseuxSeries> out(a.c_.size() + b.c_.size() - 1, PuiseuxSeries(F));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_exact_zero()) continue;
            out[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Poly(F, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

Poly Poly::scaled(const PuiseuxSeries& c) const
{
    Poly r = *this;
    r.field_ = pick_field(field_, c.field());
    for (auto& x : r.c_) x = x * c;
    r.trim();
    return r;
}

Poly Poly::pow(unsigned n) const
{
    Poly result = constant(PuiseuxSeries::constant(field_, 1));
    Poly base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

PuiseuxSeries Poly::evaluate(const PuiseuxSeries& a) const
{
    PuiseuxSeries acc(pick_field(field_, a.field()));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + *it;
    return acc;
}

Poly Poly::shifted(const PuiseuxSeries& h) const
{
    auto ders = hasse_derivatives(*this);
    std::vector<PuiseuxSeries> out;
    out.reserve(ders.size());
    for (const auto& d : ders) out.push_back(d.evaluate(h));
    return Poly(field_, std::move(out));
}

std::string Poly::str() const
{
    if (c_.empty()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        const auto& c = c_[static_cast<std::size_t>(k)];
        if (c.is_exact_zero()) continue;
        std::string term;
        std::string body = render_coeff_series(c);
        bool single = c.terms().size() == 1 && c.is_exact();
        if (k == 0) {
            term = single ? body : "(" + body + ")";
        } else {
            std::string xs = k == 1 ? "x" : "x^" + std::to_string(k);
            if (c.is_one())
                term = xs;
            else if (single)
                term = body + "*" + xs;
            else
                term = "(" + body + ")*" + xs;
        }
        if (!s.empty()) s += " + ";
        s += term;
    }
    return s;
}

std::pair<Poly, Poly> divmod_monic(const Poly& f, const Poly& phi)
{
    if (phi.degree() < 1 || !phi.is_monic()) throw std::invalid_argument("divmod_monic requires a monic divisor of degree >= 1");
    const FieldTower* F = pick_field(f.field(), phi.field());
    const auto d = static_cast<std::size_t>(phi.degree());
    std::vector<PuiseuxSeries> r = f.coeffs();
    if (r.size() <= d) return {Poly(F), f};
    std::vector<PuiseuxSeries> q(r.size() - d, PuiseuxSeries(F));
    for (std::size_t k = r.size(); k-- > d;) {
        PuiseuxSeries lead = r[k];
        r.pop_back();
        if (lead.is_exact_zero()) continue;
        q[k - d] = lead;
        for (std::size_t i = 0; i < d; ++i) {
            const auto& pc = phi.coeffs()[i];
            if (pc.is_exact_zero()) continue;
            r[k - d + i] -= lead * pc;
        }
    }
    return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

std::vector<Poly> phi_expansion(const Poly& f, const Poly& phi)
{
    if (phi.degree() < 1 || !phi.is_monic()) throw std::invalid_argument("phi_expansion requires a monic divisor of degree >= 1");
    std::vector<Poly> out;
    Poly cur = f;
    do {
        auto [q, r] = divmod_monic(cur, phi);
        out.push_back(std::move(r));
        cur = std::move(q);
    } while (!cur.is_zero());
    return out;
}

Poly reassemble(const std::vector<Poly>& expansion, const Poly& phi)
{
    Poly acc(phi.field());
    for (auto it = expansion.rbegin(); it != expansion.rend(); ++it) acc = acc * phi + *it;
    return acc;
}

std::vector<Poly> hasse_derivatives(const Poly& f)
{
    if (f.is_zero()) return {f};
    const FieldTower* F = f.field();
    const auto n = static_cast<std::size_t>(f.degree());
    std::vector<Poly> out;
    out.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<PuiseuxSeries> c(n - k + 1, PuiseuxSeries(F));
        for (std::size_t m = k; m <= n; ++m) {
            const auto& a = f.coeffs()[m];
            if (a.is_exact_zero()) continue;
            std::uint32_t b = binomial_mod(static_cast<std::int64_t>(m), static_cast<std::int64_t>(k), F->p());
            if (b == 0) continue;
            c[m - k] = b == 1 ? a : a.scaled(F->from_int(b));
        }
        out.emplace_back(F, std::move(c));
    }
    return out;
}

bool is_additive_plus_constant(const Poly& f)
{
    if (f.is_zero()) return true;
    const std::uint32_t p = f.field()->p();
    for (std::size_t k = 1; k < f.coeffs().size(); ++k) {
        if (f.coeffs()[k].is_exact_zero()) continue;
        std::size_t m = k;
        while (m % p == 0) m /= p;
        if (m != 1) return false;
    }
    return true;
}

PuiseuxSeries determinant(const SeriesMatrix& a)
{
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
    const FieldTower* F = nullptr;
    for (const auto& row : a)
        for (const auto& e : row) F = pick_field(F, e.field());
    // vect holds the characteristic polynomial of the leading r x r block, highest degree first.
    std::vector<PuiseuxSeries> vect{PuiseuxSeries::constant(F, 1), -a[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<PuiseuxSeries> q;
        q.reserve(r + 2);
        q.push_back(PuiseuxSeries::constant(F, 1));
        q.push_back(-a[r][r]);
        std::vector<PuiseuxSeries> col(r, PuiseuxSeries(F));
        for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
        for (std::size_t k = 0; k < r; ++k) {
            PuiseuxSeries dot(F);
            for (std::size_t j = 0; j < r; ++j)
                if (!a[r][j].is_exact_zero() && !col[j].is_exact_zero()) dot += a[r][j] * col[j];
            q.push_back(-dot);
            if (k + 1 == r) break;
            std::vector<PuiseuxSeries> next(r, PuiseuxSeries(F));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    if (!a[i][j].is_exact_zero() && !col[j].is_exact_zero()) next[i] += a[i][j] * col[j];
            col = std::move(next);
        }
        std::vector<PuiseuxSeries> nv(r + 2, PuiseuxSeries(F));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j)
                if (!q[i - j].is_exact_zero() && !vect[j].is_exact_zero()) nv[i] += q[i - j] * vect[j];
        vect = std::move(nv);
    }
    return n % 2 == 0 ? vect[n] : -vect[n];
}

PuiseuxSeries determinant_by_permutations(const SeriesMatrix& a)
{
    const std::size_t n = a.size();
    const FieldTower* F = nullptr;
    for (const auto& row : a)
        for (const auto& e : row) F = pick_field(F, e.field());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    PuiseuxSeries total(F);
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        PuiseuxSeries prod = PuiseuxSeries::constant(F, 1);
        for (std::size_t i = 0; i < n; ++i) prod = prod * a[i][perm[i]];
        total += inversions % 2 ? -prod : prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace mlv
