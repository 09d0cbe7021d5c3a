#pragma once

#include "mlv/valuation.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace mlv {

/// (n, i) with 0 <= n <= i and p not dividing C(i, n), ordered lexicographically.
struct IndexPair {
    int n = 0;
    int i = 0;
    friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
    [[nodiscard]] std::string str() const { return "(" + std::to_string(n) + "," + std::to_string(i) + ")"; }
};

struct StabilityWitness {
    Rat value;
    IndexPair witness;
};

/// The Artin-Schreier construction over F_p:
///   s_m = sum_{j>=m} C(j,m) t^{-1/p^{j+1}},  s = sum_n t^n s_n,
///   s_{n,i} = truncation of s below delta(n,i) = n - 1/p^{i+1},
/// together with Psi_n (the additive polynomial whose roots are the
/// differences of conjugates of s_{n,n}), phi_n = Irr_K(s_{n,n}) and
/// gamma_n = v(phi_n(s)). Caches are filled lazily under a mutex.
class TowerContext : public std::enable_shared_from_this<TowerContext> {
public:
    static std::shared_ptr<TowerContext> create(std::uint32_t p);

    [[nodiscard]] std::uint32_t p() const noexcept { return p_; }
    [[nodiscard]] FieldTower& field() const noexcept { return *field_; }

    [[nodiscard]] bool in_S(int n, int i) const;
    /// Throws std::invalid_argument outside S.
    [[nodiscard]] Rat delta(int n, int i) const;
    [[nodiscard]] IndexPair index_successor(int n, int i) const;
    /// Successor of (n, i) in the whole of S: the row successor.
    [[nodiscard]] IndexPair next_index(const IndexPair& idx) const { return index_successor(idx.n, idx.i); }

    [[nodiscard]] StreamPtr stream_s_m(int m) const;
    [[nodiscard]] StreamPtr stream_s() const;
    /// s_{n,i}; i = n gives the limit truncation sum_{m<n} t^m s_m.
    [[nodiscard]] StreamPtr stream_s_trunc(int n, int i) const;
    /// Truncation of s below delta(bound) (all of s when bound is empty) plus a finite offset.
    [[nodiscard]] StreamPtr tower_stream(std::optional<IndexPair> bound, PuiseuxSeries offset) const;

    /// theta_1..theta_n spanning Ker(AS^n).
    std::vector<FqElem> kernel_basis(int n) const;
    /// c_l = sum_{m<n} t^m AS^{n-1-m}(l) for l = sum_k lambda_k theta_{k+1}.
    [[nodiscard]] PuiseuxSeries conjugate_shift(int n, const std::vector<std::uint32_t>& lambda) const;
    /// Linearized coefficients of Psi_n, by the subspace recursion
    /// P_{V + <w>} = P_V^p - P_V(w)^{p-1} P_V.
    [[nodiscard]] const std::vector<PuiseuxSeries>& psi_coefficients(int n) const;
    [[nodiscard]] Poly psi_polynomial(int n) const;
    /// prod_l (y - c_l) expanded directly over all p^n kernel elements.
    [[nodiscard]] Poly psi_by_product(int n) const;
    /// Psi_n(s_{n,n}), exact.
    [[nodiscard]] const PuiseuxSeries& psi_at_truncation(int n) const;
    [[nodiscard]] HeadPtr head(int n) const;
    [[nodiscard]] HeadPtr row_head(int m) const;
    /// Psi_n(x) - Psi_n(s_{n,n}).
    [[nodiscard]] const Poly& phi(int n) const;
    /// v(phi_n(s)); throws std::runtime_error when only a lower bound is reached.
    [[nodiscard]] Rat gamma(int n, const Caps& caps) const;
    /// max over nonzero kernel elements of v(c_l).
    [[nodiscard]] Rat krasner_delta(int n) const;

    [[nodiscard]] CertifiedVal rho_value(int n, int i, const Poly& f, const Caps& caps) const;
    [[nodiscard]] CertifiedVal mu_value(int n, const Poly& f, const Caps& caps) const;
    [[nodiscard]] CertifiedVal vs_value(const Poly& f, const Caps& caps) const;
    /// v_s(f) and the first (n, i) in row n with rho_{n,i}(f) = v_s(f), i <= caps.index_budget.
    [[nodiscard]] StabilityWitness stability_value(int n, const Poly& f, const Caps& caps) const;

    [[nodiscard]] ValuationPtr rho(int n, int i) const;
    [[nodiscard]] ValuationPtr mu(int n) const { return rho(n, n); }
    [[nodiscard]] ValuationPtr vs() const;
    /// C_n = (rho_{n,i})_i.
    [[nodiscard]] FamilyPtr family(int n) const;

    /// chain mu_0 -> mu_1 -> ... -> mu_levels of limit augmentations.
    [[nodiscard]] MLVChain chain(int levels, const Caps& caps) const;

    /// Terms of s_{n,i} ... s_{m,j} segment of s in [delta(lo), delta(hi)).
    [[nodiscard]] std::vector<IndexPair> segment_indices(const IndexPair& lo, std::optional<IndexPair> hi, std::size_t max) const;

private:
    explicit TowerContext(std::uint32_t p);

    std::uint32_t p_;
    std::unique_ptr<FieldTower> field_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<int, std::vector<PuiseuxSeries>> psi_;
    mutable std::map<int, PuiseuxSeries> psi_value_;
    mutable std::map<int, HeadPtr> heads_;
    mutable std::map<int, HeadPtr> row_heads_;
    mutable std::map<int, Poly> phi_;
};

/// Stream of s_m.
class RowStream final : public SeriesStream {
public:
    RowStream(std::shared_ptr<const TowerContext> ctx, int m);

    [[nodiscard]] std::unique_ptr<SeriesStream> clone() const override;
    [[nodiscard]] const FieldTower* field() const override { return &ctx_->field(); }
    std::optional<Term> next() override;
    void reset() override { j_ = m_; }
    [[nodiscard]] Truncation truncate_below(const Rat& r) const override;
    [[nodiscard]] std::size_t approximant_degree(const Rat& r) const override;
    [[nodiscard]] std::optional<AlgebraicElement> exact_element() const override;
    [[nodiscard]] std::optional<int> row_index() const override { return m_; }
    [[nodiscard]] std::string describe() const override { return "s_" + std::to_string(m_); }

private:
    std::shared_ptr<const TowerContext> ctx_;
    int m_;
    int j_;
};

/// Stream of (s truncated below delta(bound)) + offset; bound empty means all of s.
class TowerStream final : public SeriesStream {
public:
    TowerStream(std::shared_ptr<const TowerContext> ctx, std::optional<IndexPair> bound, PuiseuxSeries offset);

    [[nodiscard]] std::unique_ptr<SeriesStream> clone() const override;
    [[nodiscard]] const FieldTower* field() const override { return &ctx_->field(); }
    std::optional<Term> next() override;
    void reset() override;
    [[nodiscard]] Truncation truncate_below(const Rat& r) const override;
    [[nodiscard]] std::size_t approximant_degree(const Rat& r) const override;
    [[nodiscard]] std::optional<AlgebraicElement> exact_element() const override;
    [[nodiscard]] std::optional<CertifiedVal> difference_valuation(const SeriesStream& other) const override;
    [[nodiscard]] std::string describe() const override;

    [[nodiscard]] const std::optional<IndexPair>& bound() const noexcept { return bound_; }
    [[nodiscard]] const PuiseuxSeries& offset() const noexcept { return offset_; }

private:
    [[nodiscard]] bool below_bound(const IndexPair& idx) const { return !bound_ || idx < *bound_; }
    [[nodiscard]] Term segment_term(const IndexPair& idx) const;
    std::optional<Term> next_segment_term();

    std::shared_ptr<const TowerContext> ctx_;
    std::optional<IndexPair> bound_;
    PuiseuxSeries offset_;
    IndexPair cursor_{0, 0};
    bool segment_done_ = false;
    std::size_t offset_pos_ = 0;
    std::optional<Term> pending_segment_;
};

/// The family C_n = (rho_{n,i}) over row n of S.
class TowerFamily final : public FamilyHandle {
public:
    TowerFamily(std::shared_ptr<const TowerContext> ctx, int n);

    [[nodiscard]] std::string name() const override { return "C_" + std::to_string(n_); }
    [[nodiscard]] std::size_t stable_degree() const override;
    [[nodiscard]] int first_index() const override { return n_; }
    [[nodiscard]] int next_index(int i) const override { return ctx_->index_successor(n_, i).i; }
    [[nodiscard]] CertifiedVal value_at(int i, const Poly& f, const Caps& caps) const override;
    [[nodiscard]] StabilityResult stability(const Poly& f, const Caps& caps) const override;

private:
    std::shared_ptr<const TowerContext> ctx_;
    int n_;
};

} // namespace mlv
