#include "mlv/tower.hpp"
#include "mlv/verify.hpp"

#include <doctest.h>

#include <random>

using namespace mlv;

namespace {

PuiseuxSeries mono(const FieldTower& F, Rat e) { return PuiseuxSeries::monomial(F.one(), e); }

// min over the (x - a)-expansion computed from the shifted polynomial, a in K.
Rat depth_zero_oracle(const Poly& f, const PuiseuxSeries& a, const Rat& delta)
{
    Poly g = f.shifted(a);
    ValOrInf best = ValOrInf::infinity();
    for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
        if (g.coeffs()[k].is_exact_zero()) continue;
        best = min(best, g.coeffs()[k].valuation().value() + ValOrInf(delta * Rat(static_cast<std::int64_t>(k))));
    }
    return best.value();
}

} // namespace

TEST_CASE("depth-zero valuations with centers in K")
{
    FieldTower F(2);
    std::mt19937_64 rng(9);
    Caps caps;
    for (int k = 0; k < 100; ++k) {
        PuiseuxSeries a = random_coefficient(F, rng);
        Rat delta(static_cast<std::int64_t>(uniform_int(rng, -16, 16)), 8);
        Poly f = random_poly(F, rng, static_cast<int>(uniform_int(rng, 1, 5)), false);
        auto mu = Valuation::depth_zero(std::make_shared<FiniteStream>(a), delta);
        CHECK(mu->value(f, caps) == CertifiedVal::exact(depth_zero_oracle(f, a, delta)));
    }
}

TEST_CASE("valuation axioms on sampled products")
{
    auto ctx = TowerContext::create(2);
    std::mt19937_64 rng(12);
    Caps caps;
    auto mu = ctx->rho(1, 3);
    for (int k = 0; k < 30; ++k) {
        Poly f = random_poly(ctx->field(), rng, static_cast<int>(uniform_int(rng, 1, 3)), false);
        Poly g = random_poly(ctx->field(), rng, static_cast<int>(uniform_int(rng, 1, 3)), false);
        auto vf = mu->value(f, caps), vg = mu->value(g, caps), vfg = mu->value(f * g, caps);
        REQUIRE(vf.is_exact());
        REQUIRE(vg.is_exact());
        CHECK(vfg == CertifiedVal::exact(vf.value() + vg.value()));
        CHECK(mu->value(f + g, caps).value() >= min(vf.value(), vg.value()));
    }
}

TEST_CASE("ordinary augmentation")
{
    FieldTower F(2);
    Caps caps;
    auto mu = Valuation::depth_zero(std::make_shared<FiniteStream>(PuiseuxSeries(&F)), Rat(0));
    Poly phi = Poly::x(&F).pow(2) + Poly::constant(mono(F, Rat(1)));
    CHECK(mu->value(phi, caps) == CertifiedVal::exact(Rat(0)));
    auto nu = Valuation::ordinary(mu, phi, Rat(3), caps);
    CHECK(nu->value(phi, caps) == CertifiedVal::exact(Rat(3)));
    CHECK(nu->value(phi * phi + Poly::x(&F), caps) == CertifiedVal::exact(Rat(0)));
    CHECK(nu->value(phi * Poly::x(&F), caps) == CertifiedVal::exact(Rat(3)));
    CHECK(nu->degree() == 2);
    CHECK_THROWS_AS(Valuation::ordinary(mu, phi, Rat(0), caps), std::invalid_argument);
    CHECK(divisibility_probe(*mu, *nu, phi, caps));
    CHECK_FALSE(divisibility_probe(*mu, *nu, Poly::x(&F), caps));
}

TEST_CASE("minimality witness: key polynomial passes, non-minimal pair is caught")
{
    FieldTower F(2);
    Caps caps;
    auto mu = Valuation::depth_zero(std::make_shared<FiniteStream>(PuiseuxSeries(&F)), Rat(-1, 2));
    Poly x = Poly::x(&F);
    std::vector<Poly> samples{x, x.pow(2) + Poly::constant(mono(F, Rat(-1))), Poly::constant(mono(F, Rat(2)))};
    CHECK(is_minimal_witness(*mu, x, samples, caps).all_pass());
    // x + t^(-1) lies outside the ball: mu(x) = -1/2 but its expansion gives -1.
    Poly g = x + Poly::constant(mono(F, Rat(-1)));
    auto rep = is_minimal_witness(*mu, g, samples, caps);
    CHECK(rep.counterexample_found());
}

TEST_CASE("limit augmentation factory checks the family")
{
    auto ctx = TowerContext::create(2);
    Caps caps;
    CHECK_NOTHROW(Valuation::limit(ctx->family(0), ctx->phi(1), Rat(3, 4), caps));
    CHECK_THROWS_AS(Valuation::limit(ctx->family(0), ctx->phi(1), Rat(-2), caps), std::invalid_argument);
}

TEST_CASE("chain validation")
{
    auto ctx = TowerContext::create(2);
    Caps caps;
    MLVChain chain = ctx->chain(2, caps);
    std::vector<ValuationPtr> nodes{ctx->mu(0), ctx->mu(1), ctx->mu(2)};
    auto vs = ctx->vs();
    CHECK(chain_validate(chain, nodes, caps, vs.get()).ok());
    chain.steps[0].gamma = Rat(1, 2);
    CHECK_FALSE(chain_validate(chain, nodes, caps, vs.get()).ok());
    nodes.pop_back();
    CHECK_FALSE(chain_validate(chain, nodes, caps).ok());
    CHECK(kind_name(ChainStep::Kind::Limit) == "limit");
}
