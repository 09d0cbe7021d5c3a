#include "mlv/tower.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

using namespace mlv;

namespace {

PuiseuxSeries mono(const FieldTower& F, Rat e) { return PuiseuxSeries::monomial(F.one(), e); }

std::uint32_t binomial_mod_direct(int i, int n, std::uint32_t p)
{
    boost::multiprecision::cpp_int r = 1;
    for (int j = 1; j <= n; ++j) r = r * (i - n + j) / j;
    return static_cast<std::uint32_t>(r % p);
}

} // namespace

TEST_CASE("index set and delta")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto ctx = TowerContext::create(p);
        for (int n = 0; n <= 3; ++n)
            for (int i = n; i <= 8; ++i) {
                CHECK(ctx->in_S(n, i) == (binomial_mod_direct(i, n, p) != 0));
                if (!ctx->in_S(n, i)) {
                    CHECK_THROWS_AS((void)ctx->delta(n, i), std::invalid_argument);
                    continue;
                }
                Rat d = Rat(n) - Rat(1, checked_pow(p, static_cast<unsigned>(i + 1)));
                CHECK(ctx->delta(n, i) == d);
                IndexPair next = ctx->index_successor(n, i);
                CHECK(next.n == n);
                CHECK(ctx->delta(n, i) < ctx->delta(next.n, next.i));
            }
    }
    auto ctx = TowerContext::create(2);
    CHECK(ctx->index_successor(1, 1).i == 3);
    CHECK(ctx->index_successor(2, 3).i == 6);
}

TEST_CASE("rows of s have the stated terms and leading exponent")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto ctx = TowerContext::create(p);
        Caps caps;
        for (int m = 0; m <= 3; ++m) {
            auto terms = take_terms(*ctx->stream_s_m(m), 6);
            int j = m;
            for (const auto& t : terms) {
                while (binomial_mod_direct(j, m, p) == 0) ++j;
                CHECK(t.exp == Rat(-1, checked_pow(p, static_cast<unsigned>(j + 1))));
                CHECK(t.exp + Rat(m) == ctx->delta(m, j));
                CHECK(*t.coeff.as_prime_field() == binomial_mod_direct(j, m, p));
                ++j;
            }
            Rat expected(-1, checked_pow(p, static_cast<unsigned>(m + 1)));
            CHECK(eval_valuation_at_stream(Poly::x(&ctx->field()), *ctx->stream_s_m(m), caps) == CertifiedVal::exact(expected));
        }
    }
}

TEST_CASE("Psi is additive and equals the product over the kernel")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto ctx = TowerContext::create(p);
        const int top = p == 2 ? 3 : 1;
        for (int n = 1; n <= top; ++n) {
            Poly psi = ctx->psi_polynomial(n);
            CHECK(psi.degree() == checked_pow(p, static_cast<unsigned>(n)));
            CHECK(is_additive_plus_constant(psi));
            CHECK(psi.coeff(0).is_exact_zero());
            CHECK(psi == ctx->psi_by_product(n));
        }
    }
    auto ctx = TowerContext::create(2);
    CHECK(ctx->psi_polynomial(2).str() == "x^4 + (1 + t^(1))*x^2 + (t^(1) + t^(2) + t^(3))*x");
}

TEST_CASE("phi_n, gamma_n and Krasner constants for p = 2")
{
    auto ctx = TowerContext::create(2);
    Caps caps;
    CHECK(ctx->phi(1).str() == "x^2 + x + t^(-1)");
    CHECK(ctx->phi(2).str() == "x^4 + (1 + t^(1))*x^2 + (t^(1) + t^(2) + t^(3))*x + (t^(-2) + 1 + t^(3))");
    CHECK(ctx->phi(3).degree() == 8);
    CHECK(ctx->gamma(1, caps) == Rat(3, 4));
    CHECK(ctx->gamma(2, caps) == Rat(23, 8));
    CHECK(ctx->gamma(3, caps) == Rat(111, 16));
    for (int n = 1; n <= 3; ++n) CHECK(ctx->krasner_delta(n) == Rat(n - 1));
}

TEST_CASE("Psi(s_{n,n}) matches the product of conjugate differences")
{
    // Psi_n(s_{n,n}) is the constant of Psi_n(x) - Psi_n(s_{n,n}) = prod (x - s_{n,n} - c_l).
    auto ctx = TowerContext::create(2);
    for (int n = 1; n <= 2; ++n) {
        Poly phi = ctx->phi(n);
        CHECK(phi.coeff(0) == -ctx->psi_at_truncation(n));
        CHECK(valuation_at(phi, AlgebraicElement{ctx->head(n), PuiseuxSeries(&ctx->field())}).is_inf());
    }
}

TEST_CASE("rho values along rows")
{
    auto ctx = TowerContext::create(2);
    const FieldTower& F = ctx->field();
    Caps caps;
    for (int i = 0; i <= 10; ++i)
        CHECK(ctx->rho_value(0, i, ctx->phi(1), caps) == CertifiedVal::exact(Rat(-1, checked_pow(2, static_cast<unsigned>(i)))));
    CHECK(ctx->rho_value(0, 0, Poly::x(&F), caps) == CertifiedVal::exact(Rat(-1, 2)));
    for (int i = 1; i <= 7; i = ctx->index_successor(1, i).i)
        CHECK(ctx->rho_value(1, i, ctx->phi(2), caps).value() < ValOrInf(Rat(23, 8)));
}

TEST_CASE("stability witnesses")
{
    auto ctx = TowerContext::create(2);
    const FieldTower& F = ctx->field();
    Caps caps;
    auto w = ctx->stability_value(0, Poly::x(&F) - Poly::constant(mono(F, Rat(-1, 2))), caps);
    CHECK(w.value == Rat(-1, 4));
    CHECK(w.witness == IndexPair{0, 1});
    w = ctx->stability_value(0, Poly::x(&F), caps);
    CHECK(w.value == Rat(-1, 2));
    CHECK(w.witness == IndexPair{0, 0});
    w = ctx->stability_value(1, Poly::constant(mono(F, Rat(5, 8))), caps);
    CHECK(w.value == Rat(5, 8));
    CHECK(w.witness == IndexPair{1, 1});
    CHECK_THROWS_AS((void)ctx->stability_value(0, ctx->phi(1), caps), std::invalid_argument);
    auto fam = ctx->family(1);
    CHECK(fam->stable_degree() == 2);
    CHECK(fam->name() == "C_1");
}

TEST_CASE("limit augmentation equals mu_{n+1} on phi-expansion building blocks")
{
    auto ctx = TowerContext::create(2);
    const FieldTower& F = ctx->field();
    Caps caps;
    auto fam = ctx->family(0);
    Poly x = Poly::x(&F);
    for (const Poly& f : {x, ctx->phi(1), ctx->phi(1) * x, ctx->phi(1).pow(2) + x})
        CHECK(limit_aug_value(*fam, ctx->phi(1), Rat(3, 4), f, caps) == ctx->mu_value(1, f, caps));
}

TEST_CASE("p = 3 construction")
{
    auto ctx = TowerContext::create(3);
    Caps caps;
    CHECK(ctx->phi(1).str() == "x^3 + 2*x + 2*t^(-1)");
    CHECK(ctx->gamma(1, caps) == Rat(8, 9));
    CHECK(ctx->krasner_delta(1) == Rat(0));
    CHECK(ctx->delta(1, 2) == Rat(26, 27));
}

TEST_CASE("chain shape")
{
    auto ctx = TowerContext::create(2);
    Caps caps;
    MLVChain c = ctx->chain(3, caps);
    REQUIRE(c.steps.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(c.steps[k].kind == ChainStep::Kind::Limit);
        CHECK(c.steps[k].degree == static_cast<std::size_t>(checked_pow(2, static_cast<unsigned>(k + 1))));
    }
    CHECK(ctx->segment_indices({0, 0}, IndexPair{0, 3}, 10).size() == 3);
}
