#include "mlv/tower.hpp"

#include "mlv/lucas.hpp"

#include <stdexcept>

namespace mlv {

namespace {

PuiseuxSeries lowered(const PuiseuxSeries& s)
{
    std::vector<Term> terms;
    terms.reserve(s.terms().size());
    for (const auto& t : s.terms()) terms.push_back({t.exp, t.coeff.lowered()});
    return PuiseuxSeries(s.field(), std::move(terms), s.precision());
}

FqElem as_map(const FqElem& a) { return a.frobenius() - a; }

// Element of the F_p-span sum_k c_k s_k + constant, closed under Frobenius
// because s_k^p = s_k + s_{k-1} with s_{-1} = t^{-1}.
struct LinearForm {
    std::vector<PuiseuxSeries> coeff;
    PuiseuxSeries constant;
};

LinearForm frobenius(const LinearForm& f, const FieldTower* F)
{
    LinearForm out{std::vector<PuiseuxSeries>(f.coeff.size(), PuiseuxSeries(F)), f.constant.frobenius()};
    for (std::size_t m = 0; m < f.coeff.size(); ++m) {
        if (f.coeff[m].is_exact_zero()) continue;
        PuiseuxSeries fm = f.coeff[m].frobenius();
        out.coeff[m] += fm;
        if (m > 0)
            out.coeff[m - 1] += fm;
        else
            out.constant += fm.shifted(Rat(-1));
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------- TowerContext

TowerContext::TowerContext(std::uint32_t p) : p_(p), field_(std::make_unique<FieldTower>(p)) {}

std::shared_ptr<TowerContext> TowerContext::create(std::uint32_t p)
{
    return std::shared_ptr<TowerContext>(new TowerContext(p));
}

bool TowerContext::in_S(int n, int i) const { return n >= 0 && n <= i && lucas_nonzero(i, n, p_); }

Rat TowerContext::delta(int n, int i) const
{
    if (!in_S(n, i)) throw std::invalid_argument("index (" + std::to_string(n) + "," + std::to_string(i) + ") is not in S");
    return Rat(n) - Rat(1, checked_pow(p_, static_cast<unsigned>(i + 1)));
}

IndexPair TowerContext::index_successor(int n, int i) const
{
    if (!in_S(n, i)) throw std::invalid_argument("index (" + std::to_string(n) + "," + std::to_string(i) + ") is not in S");
    int j = i + 1;
    while (!lucas_nonzero(j, n, p_)) ++j;
    return {n, j};
}

StreamPtr TowerContext::stream_s_m(int m) const { return std::make_shared<RowStream>(shared_from_this(), m); }

StreamPtr TowerContext::stream_s() const { return tower_stream(std::nullopt, PuiseuxSeries(field_.get())); }

StreamPtr TowerContext::stream_s_trunc(int n, int i) const
{
    if (!in_S(n, i)) throw std::invalid_argument("index (" + std::to_string(n) + "," + std::to_string(i) + ") is not in S");
    return tower_stream(IndexPair{n, i}, PuiseuxSeries(field_.get()));
}

StreamPtr TowerContext::tower_stream(std::optional<IndexPair> bound, PuiseuxSeries offset) const
{
    return std::make_shared<TowerStream>(shared_from_this(), bound, std::move(offset));
}

std::vector<FqElem> TowerContext::kernel_basis(int n) const
{
    std::lock_guard lock(mutex_);
    return field_->as_kernel_basis(n);
}

PuiseuxSeries TowerContext::conjugate_shift(int n, const std::vector<std::uint32_t>& lambda) const
{
    auto basis = kernel_basis(n);
    FqElem ell = field_->zero();
    for (std::size_t k = 0; k < lambda.size() && k < basis.size(); ++k)
        ell += basis[k] * field_->from_int(lambda[k]);
    // AS^{n-1-m}(ell) for m = n-1 down to 0.
    PuiseuxSeries c(field_.get());
    FqElem cur = ell;
    for (int m = n - 1; m >= 0; --m) {
        c += PuiseuxSeries::monomial(cur.lowered(), Rat(m));
        cur = as_map(cur);
    }
    return c;
}

const std::vector<PuiseuxSeries>& TowerContext::psi_coefficients(int n) const
{
    if (n < 1) throw std::invalid_argument("Psi_n needs n >= 1");
    std::lock_guard lock(mutex_);
    if (auto it = psi_.find(n); it != psi_.end()) return it->second;
    const FieldTower* F = field_.get();
    std::vector<PuiseuxSeries> P{PuiseuxSeries::constant(F, 1)};
    for (int j = 0; j < n; ++j) {
        std::vector<std::uint32_t> lambda(static_cast<std::size_t>(n), 0);
        lambda[static_cast<std::size_t>(j)] = 1;
        PuiseuxSeries w = conjugate_shift(n, lambda);
        PuiseuxSeries at_w(F);
        PuiseuxSeries pw = w;
        for (std::size_t k = 0; k < P.size(); ++k) {
            if (k) pw = pw.frobenius();
            at_w += P[k] * pw;
        }
        PuiseuxSeries scale = at_w.pow(p_ - 1);
        std::vector<PuiseuxSeries> next(P.size() + 1, PuiseuxSeries(F));
        for (std::size_t k = 0; k < P.size(); ++k) {
            next[k + 1] += P[k].frobenius();
            next[k] -= scale * P[k];
        }
        P = std::move(next);
    }
    for (auto& c : P) {
        if (!c.is_exact()) throw std::logic_error("Psi coefficient lost precision");
        c = lowered(c);
    }
    return psi_.emplace(n, std::move(P)).first->second;
}

Poly TowerContext::psi_polynomial(int n) const { return Poly::additive(field_.get(), psi_coefficients(n)); }

Poly TowerContext::psi_by_product(int n) const
{
    const FieldTower* F = field_.get();
    Poly acc = Poly::constant(PuiseuxSeries::constant(F, 1));
    std::vector<std::uint32_t> lambda(static_cast<std::size_t>(n), 0);
    while (true) {
        PuiseuxSeries c = conjugate_shift(n, lambda);
        acc *= Poly::x(F) - Poly::constant(c);
        std::size_t k = 0;
        while (k < lambda.size() && ++lambda[k] == p_) lambda[k++] = 0;
        if (k == lambda.size()) break;
    }
    std::vector<PuiseuxSeries> cs;
    for (const auto& c : acc.coeffs()) cs.push_back(lowered(c));
    return Poly(F, std::move(cs));
}

const PuiseuxSeries& TowerContext::psi_at_truncation(int n) const
{
    std::lock_guard lock(mutex_);
    if (auto it = psi_value_.find(n); it != psi_value_.end()) return it->second;
    const auto& psi = psi_coefficients(n);
    const FieldTower* F = field_.get();
    LinearForm cur{std::vector<PuiseuxSeries>(static_cast<std::size_t>(n), PuiseuxSeries(F)), PuiseuxSeries(F)};
    for (int m = 0; m < n; ++m) cur.coeff[static_cast<std::size_t>(m)] = PuiseuxSeries::monomial(F->one(), Rat(m));
    LinearForm total{std::vector<PuiseuxSeries>(static_cast<std::size_t>(n), PuiseuxSeries(F)), PuiseuxSeries(F)};
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if (k) cur = frobenius(cur, F);
        for (std::size_t m = 0; m < cur.coeff.size(); ++m) total.coeff[m] += psi[k] * cur.coeff[m];
        total.constant += psi[k] * cur.constant;
    }
    for (const auto& c : total.coeff)
        if (!c.is_exact_zero()) throw std::logic_error("Psi_n(s_{n,n}) did not reduce to an element of K");
    return psi_value_.emplace(n, lowered(total.constant)).first->second;
}

HeadPtr TowerContext::head(int n) const
{
    if (n < 1) return nullptr;
    std::lock_guard lock(mutex_);
    if (auto it = heads_.find(n); it != heads_.end()) return it->second;
    auto h = std::make_shared<AlgebraicHead>();
    h->name = "s_{" + std::to_string(n) + "," + std::to_string(n) + "}";
    h->psi = psi_coefficients(n);
    h->psi_value = psi_at_truncation(n);
    h->degree = static_cast<std::size_t>(checked_pow(p_, static_cast<unsigned>(n)));
    h->support_bound = Rat(n - 1);
    return heads_.emplace(n, std::move(h)).first->second;
}

HeadPtr TowerContext::row_head(int m) const
{
    std::lock_guard lock(mutex_);
    if (auto it = row_heads_.find(m); it != row_heads_.end()) return it->second;
    const FieldTower* F = field_.get();
    auto h = std::make_shared<AlgebraicHead>();
    h->name = "s_" + std::to_string(m);
    // AS^{m+1}(x) = sum_j C(m+1, j) (-1)^{m+1-j} x^{p^j}
    for (int j = 0; j <= m + 1; ++j) {
        std::int64_t c = binomial_mod(m + 1, j, p_);
        if ((m + 1 - j) % 2) c = -c;
        h->psi.push_back(PuiseuxSeries::monomial(F->from_int(c), Rat(0)));
    }
    h->psi_value = PuiseuxSeries::monomial(F->one(), Rat(-1));
    h->degree = static_cast<std::size_t>(checked_pow(p_, static_cast<unsigned>(m + 1)));
    h->support_bound = Rat(0);
    return row_heads_.emplace(m, std::move(h)).first->second;
}

const Poly& TowerContext::phi(int n) const
{
    std::lock_guard lock(mutex_);
    if (auto it = phi_.find(n); it != phi_.end()) return it->second;
    Poly f = psi_polynomial(n) - Poly::constant(psi_at_truncation(n));
    return phi_.emplace(n, std::move(f)).first->second;
}

Rat TowerContext::gamma(int n, const Caps& caps) const
{
    CertifiedVal v = vs_value(phi(n), caps);
    if (!v.is_exact() || v.value().is_inf())
        throw std::runtime_error("gamma_" + std::to_string(n) + " not certified; reached " + v.str());
    return v.value().value();
}

Rat TowerContext::krasner_delta(int n) const
{
    if (n < 1) throw std::invalid_argument("krasner_delta needs n >= 1");
    std::vector<std::uint32_t> lambda(static_cast<std::size_t>(n), 0);
    std::optional<Rat> best;
    while (true) {
        std::size_t k = 0;
        while (k < lambda.size() && ++lambda[k] == p_) lambda[k++] = 0;
        if (k == lambda.size()) break;
        auto v = conjugate_shift(n, lambda).valuation();
        if (!v.is_exact() || v.value().is_inf()) throw std::logic_error("conjugate shift of a nonzero kernel element vanished");
        if (!best || v.value().value() > *best) best = v.value().value();
    }
    return *best;
}

CertifiedVal TowerContext::rho_value(int n, int i, const Poly& f, const Caps& caps) const
{
    return depth_zero_value(*stream_s_trunc(n, i), delta(n, i), f, caps);
}

CertifiedVal TowerContext::mu_value(int n, const Poly& f, const Caps& caps) const { return rho_value(n, n, f, caps); }

CertifiedVal TowerContext::vs_value(const Poly& f, const Caps& caps) const
{
    return eval_valuation_at_stream(f, *stream_s(), caps);
}

StabilityWitness TowerContext::stability_value(int n, const Poly& f, const Caps& caps) const
{
    const auto limit = checked_pow(p_, static_cast<unsigned>(n + 1));
    if (f.degree() >= limit) throw std::invalid_argument("stability requires deg f < p^(n+1)");
    CertifiedVal target = vs_value(f, caps);
    if (!target.is_exact() || target.value().is_inf())
        throw std::runtime_error("v_s(" + f.str() + ") not certified: " + target.str());
    std::string seen;
    for (int i = n; i <= caps.index_budget; i = index_successor(n, i).i) {
        CertifiedVal v = rho_value(n, i, f, caps);
        if (v.is_exact() && v.value() == target.value()) return {target.value().value(), {n, i}};
        seen += " " + v.str();
    }
    throw std::runtime_error("no stability witness for " + f.str() + " in row " + std::to_string(n) + " up to i = " +
                             std::to_string(caps.index_budget) + "; v_s = " + target.str() + ", rho values:" + seen);
}

ValuationPtr TowerContext::rho(int n, int i) const { return Valuation::depth_zero(stream_s_trunc(n, i), delta(n, i)); }

ValuationPtr TowerContext::vs() const { return Valuation::oracle(stream_s()); }

FamilyPtr TowerContext::family(int n) const { return std::make_shared<TowerFamily>(shared_from_this(), n); }

MLVChain TowerContext::chain(int levels, const Caps& caps) const
{
    MLVChain c;
    for (int n = 1; n <= levels; ++n)
        c.steps.push_back({ChainStep::Kind::Limit, phi(n), gamma(n, caps),
                           static_cast<std::size_t>(checked_pow(p_, static_cast<unsigned>(n)))});
    return c;
}

std::vector<IndexPair> TowerContext::segment_indices(const IndexPair& lo, std::optional<IndexPair> hi, std::size_t max) const
{
    std::vector<IndexPair> out;
    IndexPair cur = lo;
    while (out.size() < max && (!hi || cur < *hi)) {
        out.push_back(cur);
        cur = next_index(cur);
    }
    return out;
}

// ---------------------------------------------------------------- RowStream

RowStream::RowStream(std::shared_ptr<const TowerContext> ctx, int m) : ctx_(std::move(ctx)), m_(m), j_(m)
{
    if (m < 0) throw std::invalid_argument("row index must be >= 0");
}

std::unique_ptr<SeriesStream> RowStream::clone() const
{
    auto c = std::make_unique<RowStream>(ctx_, m_);
    c->j_ = j_;
    return c;
}

std::optional<Term> RowStream::next()
{
    const std::uint32_t p = ctx_->p();
    while (true) {
        int j = j_++;
        std::uint32_t c = binomial_mod(j, m_, p);
        if (c) return Term{-Rat(1, checked_pow(p, static_cast<unsigned>(j + 1))), ctx_->field().from_int(c)};
    }
}

Truncation RowStream::truncate_below(const Rat& r) const
{
    const FieldTower* F = &ctx_->field();
    if (r >= Rat(0)) return {ctx_->row_head(m_), PuiseuxSeries(F), ValOrInf::infinity()};
    RowStream g(ctx_, m_);
    std::vector<Term> kept;
    while (true) {
        Term t = *g.next();
        if (!(t.exp < r)) return {nullptr, PuiseuxSeries(F, std::move(kept), t.exp), t.exp};
        kept.push_back(std::move(t));
    }
}

std::size_t RowStream::approximant_degree(const Rat& r) const
{
    return r >= Rat(0) ? static_cast<std::size_t>(checked_pow(ctx_->p(), static_cast<unsigned>(m_ + 1))) : 1;
}

std::optional<AlgebraicElement> RowStream::exact_element() const
{
    return AlgebraicElement{ctx_->row_head(m_), PuiseuxSeries(&ctx_->field())};
}

// ---------------------------------------------------------------- TowerStream

TowerStream::TowerStream(std::shared_ptr<const TowerContext> ctx, std::optional<IndexPair> bound, PuiseuxSeries offset)
    : ctx_(std::move(ctx)), bound_(bound), offset_(std::move(offset))
{
    if (!offset_.is_exact()) throw std::invalid_argument("stream offset must be exact");
    if (!offset_.field()) offset_ = PuiseuxSeries(&ctx_->field());
    if (bound_ && !ctx_->in_S(bound_->n, bound_->i)) throw std::invalid_argument("stream bound is not in S");
}

std::unique_ptr<SeriesStream> TowerStream::clone() const { return std::make_unique<TowerStream>(*this); }

void TowerStream::reset()
{
    cursor_ = {0, 0};
    segment_done_ = false;
    offset_pos_ = 0;
    pending_segment_.reset();
}

Term TowerStream::segment_term(const IndexPair& idx) const
{
    return {ctx_->delta(idx.n, idx.i), ctx_->field().from_int(binomial_mod(idx.i, idx.n, ctx_->p()))};
}

std::optional<Term> TowerStream::next_segment_term()
{
    if (pending_segment_) {
        auto t = std::move(pending_segment_);
        pending_segment_.reset();
        return t;
    }
    if (segment_done_ || !below_bound(cursor_)) {
        segment_done_ = true;
        return std::nullopt;
    }
    Term t = segment_term(cursor_);
    cursor_ = ctx_->next_index(cursor_);
    return t;
}

std::optional<Term> TowerStream::next()
{
    while (true) {
        auto seg = next_segment_term();
        const Term* off = offset_pos_ < offset_.terms().size() ? &offset_.terms()[offset_pos_] : nullptr;
        if (!seg && !off) return std::nullopt;
        if (seg && (!off || seg->exp < off->exp)) return seg;
        if (!seg || off->exp < seg->exp) {
            if (seg) pending_segment_ = std::move(seg);
            ++offset_pos_;
            return *off;
        }
        ++offset_pos_;
        FqElem c = seg->coeff + off->coeff;
        if (!c.is_zero()) return Term{seg->exp, c};
    }
}

Truncation TowerStream::truncate_below(const Rat& r) const
{
    const FieldTower* F = &ctx_->field();
    const bool exhausted = bound_ && r >= ctx_->delta(bound_->n, bound_->i);
    const Rat rr = exhausted ? ctx_->delta(bound_->n, bound_->i) : r;
    const std::int64_t L = rr.floor() + 1;

    Truncation out{L >= 1 ? ctx_->head(static_cast<int>(L)) : nullptr, PuiseuxSeries(F), ValOrInf::infinity()};
    std::vector<Term> kept;
    std::optional<IndexPair> seg_next;
    if (L >= 0) {
        IndexPair idx{static_cast<int>(L), static_cast<int>(L)};
        while (below_bound(idx)) {
            Term t = segment_term(idx);
            if (!(t.exp < rr)) {
                seg_next = idx;
                break;
            }
            kept.push_back(std::move(t));
            idx = ctx_->next_index(idx);
        }
    } else if (!exhausted) {
        seg_next = IndexPair{0, 0};
    }
    std::size_t op = 0;
    const auto& oterms = offset_.terms();
    while (op < oterms.size() && oterms[op].exp < r) kept.push_back(oterms[op++]);

    // First nonzero combined term at or above r.
    while (true) {
        std::optional<Term> seg;
        if (seg_next && below_bound(*seg_next)) seg = segment_term(*seg_next);
        const Term* off = op < oterms.size() ? &oterms[op] : nullptr;
        if (!seg && !off) break;
        if (seg && (!off || seg->exp < off->exp)) {
            out.next = seg->exp;
            break;
        }
        if (!seg || off->exp < seg->exp) {
            out.next = off->exp;
            break;
        }
        ++op;
        seg_next = ctx_->next_index(*seg_next);
        if (!(seg->coeff + off->coeff).is_zero()) {
            out.next = seg->exp;
            break;
        }
    }
    out.finite = PuiseuxSeries(F, std::move(kept), out.next);
    return out;
}

std::size_t TowerStream::approximant_degree(const Rat& r) const
{
    Rat rr = r;
    if (bound_) rr = min(rr, ctx_->delta(bound_->n, bound_->i));
    const std::int64_t L = rr.floor() + 1;
    return L >= 1 ? static_cast<std::size_t>(checked_pow(ctx_->p(), static_cast<unsigned>(L))) : 1;
}

std::optional<AlgebraicElement> TowerStream::exact_element() const
{
    if (!bound_) return std::nullopt;
    Truncation t = truncate_below(ctx_->delta(bound_->n, bound_->i) + Rat(1));
    if (!t.next.is_inf()) throw std::logic_error("bounded tower stream did not exhaust");
    return AlgebraicElement{t.head, PuiseuxSeries(&ctx_->field(), t.finite.terms())};
}

std::optional<CertifiedVal> TowerStream::difference_valuation(const SeriesStream& other) const
{
    std::optional<IndexPair> ob;
    PuiseuxSeries ooff;
    if (auto* ts = dynamic_cast<const TowerStream*>(&other)) {
        if (ts->ctx_ != ctx_) return std::nullopt;
        ob = ts->bound_;
        ooff = ts->offset_;
    } else if (auto* fs = dynamic_cast<const FiniteStream*>(&other)) {
        ob = IndexPair{0, 0};
        ooff = fs->series();
    } else {
        return std::nullopt;
    }
    PuiseuxSeries c = offset_ - ooff;
    if (bound_ == ob) return c.valuation();

    auto less = [](const std::optional<IndexPair>& a, const std::optional<IndexPair>& b) { return a && (!b || *a < *b); };
    const bool mine_longer = less(ob, bound_);
    const std::optional<IndexPair> lo = mine_longer ? ob : bound_;
    const std::optional<IndexPair> hi = mine_longer ? bound_ : ob;

    // (this - other) = +/- segment[lo, hi) + c
    std::optional<IndexPair> cur = lo;
    std::size_t op = 0;
    const auto& cterms = c.terms();
    while (true) {
        std::optional<Term> seg;
        if (cur && (!hi || *cur < *hi)) {
            seg = segment_term(*cur);
            if (!mine_longer) seg->coeff = -seg->coeff;
        }
        const Term* off = op < cterms.size() ? &cterms[op] : nullptr;
        if (!seg && !off) return CertifiedVal::exact(ValOrInf::infinity());
        if (seg && (!off || seg->exp < off->exp)) return CertifiedVal::exact(seg->exp);
        if (!seg || off->exp < seg->exp) return CertifiedVal::exact(off->exp);
        ++op;
        cur = ctx_->next_index(*cur);
        if (!(seg->coeff + off->coeff).is_zero()) return CertifiedVal::exact(seg->exp);
    }
}

std::string TowerStream::describe() const
{
    std::string s = bound_ ? "s_{" + std::to_string(bound_->n) + "," + std::to_string(bound_->i) + "}" : "s";
    if (!offset_.empty()) s += " + (" + offset_.str() + ")";
    return s;
}

// ---------------------------------------------------------------- TowerFamily

TowerFamily::TowerFamily(std::shared_ptr<const TowerContext> ctx, int n) : ctx_(std::move(ctx)), n_(n)
{
    if (n < 0) throw std::invalid_argument("family index must be >= 0");
}

std::size_t TowerFamily::stable_degree() const
{
    return static_cast<std::size_t>(checked_pow(ctx_->p(), static_cast<unsigned>(n_)));
}

CertifiedVal TowerFamily::value_at(int i, const Poly& f, const Caps& caps) const { return ctx_->rho_value(n_, i, f, caps); }

StabilityResult TowerFamily::stability(const Poly& f, const Caps& caps) const
{
    StabilityWitness w = ctx_->stability_value(n_, f, caps);
    return {w.value, w.witness.i};
}

} // namespace mlv
