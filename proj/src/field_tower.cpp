#include "mlv/field_tower.hpp"

#include "mlv/lucas.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlv {

namespace {

void add_into(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t p)
{
    for (std::size_t k = 0; k < n; ++k) {
        std::uint32_t v = dst[k] + src[k];
        dst[k] = v >= p ? v - p : v;
    }
}

const FieldTower& tower_of(const FqElem& a, const FqElem& b)
{
    if (a.tower() == nullptr || a.tower() != b.tower())
        throw std::logic_error("field elements from different towers");
    return *a.tower();
}

} // namespace

// ---------------------------------------------------------------- FqElem

FqElem::FqElem(const FieldTower* tower, int level, Coords coords)
    : tower_(tower), level_(level), c_(std::move(coords))
{
    if (tower_ == nullptr) throw std::logic_error("field element without tower");
    if (c_.size() != tower_->degree(level_)) throw std::logic_error("coordinate length mismatch");
}

std::uint32_t FqElem::p() const { return tower_->p(); }

bool FqElem::is_zero() const noexcept
{
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

bool FqElem::is_one() const noexcept
{
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
}

FqElem FqElem::operator-() const
{
    FqElem r = *this;
    const std::uint32_t p = tower_->p();
    for (auto& v : r.c_) v = v == 0 ? 0 : p - v;
    return r;
}

FqElem operator+(const FqElem& a, const FqElem& b)
{
    const FieldTower& F = tower_of(a, b);
    if (a.level_ == 0 && b.level_ == 0) {
        std::uint32_t v = a.c_[0] + b.c_[0];
        return FqElem(&F, 0, {v >= F.p() ? v - F.p() : v});
    }
    int lvl = std::max(a.level_, b.level_);
    FqElem r = a.embed(lvl);
    FqElem bb = b.embed(lvl);
    add_into(r.c_.data(), bb.c_.data(), r.c_.size(), F.p());
    return r;
}

FqElem operator-(const FqElem& a, const FqElem& b) { return a + (-b); }

FqElem operator*(const FqElem& a, const FqElem& b)
{
    const FieldTower& F = tower_of(a, b);
    if (a.level_ == 0 && b.level_ == 0)
        return FqElem(&F, 0, {static_cast<std::uint32_t>(std::uint64_t{a.c_[0]} * b.c_[0] % F.p())});
    int lvl = std::max(a.level_, b.level_);
    FqElem aa = a.embed(lvl);
    FqElem bb = b.embed(lvl);
    FqElem::Coords out(aa.c_.size(), 0);
    F.mul_raw(lvl, aa.c_.data(), bb.c_.data(), out.data());
    return FqElem(&F, lvl, std::move(out));
}

bool operator==(const FqElem& a, const FqElem& b)
{
    if (a.tower_ != b.tower_) return false;
    if (a.level_ == b.level_) return a.c_ == b.c_;
    int lvl = std::max(a.level_, b.level_);
    return a.embed(lvl).c_ == b.embed(lvl).c_;
}

FqElem FqElem::embed(int level) const
{
    if (level < level_) throw std::logic_error("cannot embed into a shallower level");
    if (level == level_) return *this;
    Coords c(tower_->degree(level), 0);
    std::copy(c_.begin(), c_.end(), c.begin());
    return FqElem(tower_, level, std::move(c));
}

FqElem FqElem::lowered() const
{
    int lvl = level_;
    while (lvl > 0) {
        std::size_t d = tower_->degree(lvl - 1);
        if (!std::all_of(c_.begin() + static_cast<std::ptrdiff_t>(d), c_.end(), [](std::uint32_t v) { return v == 0; }))
            break;
        --lvl;
    }
    if (lvl == level_) return *this;
    Coords c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(tower_->degree(lvl)));
    return FqElem(tower_, lvl, std::move(c));
}

std::optional<std::uint32_t> FqElem::as_prime_field() const
{
    FqElem l = lowered();
    if (l.level_ != 0) return std::nullopt;
    return l.c_[0];
}

FqElem FqElem::pow(std::uint64_t e) const
{
    FqElem r = tower_->one(level_);
    FqElem b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

FqElem FqElem::frobenius() const
{
    if (level_ == 0) return *this;
    return pow(tower_->p());
}

FqElem FqElem::inv() const
{
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    if (level_ == 0) {
        const std::uint32_t p = tower_->p();
        std::uint64_t r = 1, b = c_[0], e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return FqElem(tower_, 0, {static_cast<std::uint32_t>(r)});
    }
    // Solve a * x = 1 as an F_p-linear system.
    const std::size_t d = c_.size();
    std::vector<std::vector<std::uint32_t>> m(d, std::vector<std::uint32_t>(d, 0));
    Coords basis(d, 0), col(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        std::fill(basis.begin(), basis.end(), 0);
        basis[j] = 1;
        tower_->mul_raw(level_, c_.data(), basis.data(), col.data());
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
    }
    std::vector<std::uint32_t> rhs(d, 0);
    rhs[0] = 1;
    auto x = solve_mod_p(std::move(m), std::move(rhs), tower_->p());
    if (!x) throw std::logic_error("field inverse: singular multiplication map");
    return FqElem(tower_, level_, Coords(x->begin(), x->end()));
}

std::string FqElem::str() const
{
    if (auto v = as_prime_field()) return std::to_string(*v);
    FqElem l = lowered();
    std::string s = "{";
    for (std::size_t k = 0; k < l.c_.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(l.c_[k]);
    }
    return s + "}@" + std::to_string(l.level_);
}

// ---------------------------------------------------------------- FieldTower

FieldTower::FieldTower(std::uint32_t p) : p_(p)
{
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime, got " + std::to_string(p));
    levels_[0].degree = 1;
}

std::size_t FieldTower::degree(int level) const
{
    if (level < 0 || level >= level_count()) throw std::out_of_range("field tower level out of range");
    return levels_[static_cast<std::size_t>(level)].degree;
}

const FqElem& FieldTower::modulus_theta(int level) const
{
    if (level < 1 || level >= level_count()) throw std::out_of_range("level has no modulus");
    return levels_[static_cast<std::size_t>(level)].theta;
}

FqElem FieldTower::zero(int level) const { return FqElem(this, level, FqElem::Coords(degree(level), 0)); }

FqElem FieldTower::one(int level) const
{
    FqElem::Coords c(degree(level), 0);
    c[0] = 1;
    return FqElem(this, level, std::move(c));
}

FqElem FieldTower::from_int(std::int64_t v, int level) const
{
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    FqElem::Coords c(degree(level), 0);
    c[0] = static_cast<std::uint32_t>(r);
    return FqElem(this, level, std::move(c));
}

FqElem FieldTower::generator(int level) const
{
    if (level < 1) throw std::out_of_range("level 0 has no generator");
    FqElem::Coords c(degree(level), 0);
    c[degree(level - 1)] = 1;
    return FqElem(this, level, std::move(c));
}

void FieldTower::mul_raw(int level, const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const
{
    if (level == 0) {
        out[0] = static_cast<std::uint32_t>(std::uint64_t{a[0]} * b[0] % p_);
        return;
    }
    const std::size_t d = levels_[static_cast<std::size_t>(level - 1)].degree;
    const std::size_t terms = 2 * p_ - 1;
    std::vector<std::uint32_t> acc(terms * d, 0), tmp(d, 0);
    for (std::size_t i = 0; i < p_; ++i) {
        const std::uint32_t* ai = a + i * d;
        if (std::all_of(ai, ai + d, [](std::uint32_t v) { return v == 0; })) continue;
        for (std::size_t j = 0; j < p_; ++j) {
            const std::uint32_t* bj = b + j * d;
            if (std::all_of(bj, bj + d, [](std::uint32_t v) { return v == 0; })) continue;
            mul_raw(level - 1, ai, bj, tmp.data());
            add_into(acc.data() + (i + j) * d, tmp.data(), d, p_);
        }
    }
    // y^e = y^{e-p+1} + theta y^{e-p}
    const auto& theta = levels_[static_cast<std::size_t>(level)].theta.coords();
    for (std::size_t e = terms - 1; e >= p_; --e) {
        std::uint32_t* ce = acc.data() + e * d;
        if (std::all_of(ce, ce + d, [](std::uint32_t v) { return v == 0; })) continue;
        add_into(acc.data() + (e - p_ + 1) * d, ce, d, p_);
        mul_raw(level - 1, ce, theta.data(), tmp.data());
        add_into(acc.data() + (e - p_) * d, tmp.data(), d, p_);
    }
    std::copy(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(p_ * d), out);
}

std::optional<FqElem> FieldTower::as_solve(int level, const FqElem& theta) const
{
    if (theta.tower() != this) throw std::logic_error("element from another tower");
    if (theta.level() > level) throw std::invalid_argument("theta does not lie in the requested level");
    const std::size_t d = degree(level);
    FqElem th = theta.embed(level);
    std::vector<std::vector<std::uint32_t>> m(d, std::vector<std::uint32_t>(d, 0));
    for (std::size_t j = 0; j < d; ++j) {
        FqElem::Coords c(d, 0);
        c[j] = 1;
        FqElem e(this, level, std::move(c));
        FqElem img = e.frobenius() - e;
        for (std::size_t i = 0; i < d; ++i) m[i][j] = img.coords()[i];
    }
    std::vector<std::uint32_t> rhs(th.coords().begin(), th.coords().end());
    auto x = solve_mod_p(std::move(m), std::move(rhs), p_);
    if (!x) return std::nullopt;
    return FqElem(this, level, FqElem::Coords(x->begin(), x->end()));
}

int FieldTower::extend(const FqElem& theta)
{
    std::lock_guard lock(extend_mutex_);
    const int top = level_count() - 1;
    if (top + 1 >= kMaxLevels) throw std::length_error("field tower depth limit reached");
    if (as_solve(top, theta)) throw std::invalid_argument("Artin-Schreier polynomial is reducible over the top level");
    Level& nl = levels_[static_cast<std::size_t>(top + 1)];
    nl.degree = levels_[static_cast<std::size_t>(top)].degree * p_;
    nl.theta = theta.embed(top);
    count_.store(top + 2, std::memory_order_release);
    return top + 1;
}

std::vector<FqElem> FieldTower::as_kernel_basis(int n)
{
    if (n < 1) throw std::invalid_argument("as_kernel_basis requires n >= 1");
    {
        std::lock_guard lock(extend_mutex_);
        if (kernel_basis_.size() >= static_cast<std::size_t>(n))
            return {kernel_basis_.begin(), kernel_basis_.begin() + n};
        if (kernel_basis_.empty()) kernel_basis_.push_back(one(0));
    }
    while (true) {
        FqElem prev;
        {
            std::lock_guard lock(extend_mutex_);
            if (kernel_basis_.size() >= static_cast<std::size_t>(n)) break;
            prev = kernel_basis_.back();
        }
        const int top = level_count() - 1;
        auto sol = as_solve(top, prev);
        FqElem next = sol ? *sol : generator(extend(prev));
        std::lock_guard lock(extend_mutex_);
        kernel_basis_.push_back(next.lowered());
    }
    std::lock_guard lock(extend_mutex_);
    return {kernel_basis_.begin(), kernel_basis_.begin() + n};
}

std::optional<std::vector<std::uint32_t>> solve_mod_p(std::vector<std::vector<std::uint32_t>> a,
                                                      std::vector<std::uint32_t> b, std::uint32_t p)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    auto inv = [p](std::uint64_t v) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * v % p;
            v = v * v % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        std::uint64_t iv = inv(a[r][c]);
        for (auto& v : a[r]) v = static_cast<std::uint32_t>(v * iv % p);
        b[r] = static_cast<std::uint32_t>(b[r] * iv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            std::uint64_t f = a[i][c];
            for (std::size_t k = 0; k < cols; ++k)
                a[i][k] = static_cast<std::uint32_t>((a[i][k] + (p - f) * a[r][k]) % p);
            b[i] = static_cast<std::uint32_t>((b[i] + (p - f) * b[r]) % p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<std::uint32_t> x(cols, 0);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

} // namespace mlv
