#include "mlv/field_tower.hpp"

#include <doctest.h>

#include <random>

using namespace mlv;

namespace {

FqElem random_elem(const FieldTower& F, int level, std::mt19937_64& rng)
{
    FqElem::Coords c(F.degree(level));
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % F.p());
    return FqElem(&F, level, c);
}

FqElem as(const FqElem& a) { return a.frobenius() - a; }

} // namespace

TEST_CASE("kernel basis satisfies the Artin-Schreier recursion")
{
    for (std::uint32_t p : {2u, 3u}) {
        FieldTower F(p);
        auto theta = F.as_kernel_basis(3);
        REQUIRE(theta.size() == 3);
        CHECK(theta[0].is_one());
        for (std::size_t k = 1; k < theta.size(); ++k) CHECK(as(theta[k]) == theta[k - 1]);
        // AS(x) = theta_2 needs F_16 over F_2 (Tr(theta_2) = 1 in F_4) but is solvable in F_27.
        CHECK(F.degree(F.level_count() - 1) == (p == 2 ? 4u : 3u));
    }
}

TEST_CASE("field axioms on random elements")
{
    for (std::uint32_t p : {2u, 3u}) {
        FieldTower F(p);
        F.as_kernel_basis(3);
        std::mt19937_64 rng(p);
        const int top = F.level_count() - 1;
        for (int k = 0; k < 200; ++k) {
            FqElem a = random_elem(F, top, rng), b = random_elem(F, top, rng), c = random_elem(F, top, rng);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
            CHECK(a.pow(p) == a.frobenius());
            if (!a.is_zero()) CHECK((a * a.inv()).is_one());
        }
    }
}

TEST_CASE("Frobenius has the expected order")
{
    FieldTower F(2);
    F.as_kernel_basis(3);
    std::mt19937_64 rng(5);
    const int top = F.level_count() - 1;
    const auto q = static_cast<std::uint64_t>(F.degree(top));
    for (int k = 0; k < 20; ++k) {
        FqElem a = random_elem(F, top, rng);
        FqElem b = a;
        for (std::uint64_t j = 0; j < q; ++j) b = b.frobenius();
        CHECK(b == a);
    }
}

TEST_CASE("Artin-Schreier solve and embedding")
{
    FieldTower F(2);
    auto theta = F.as_kernel_basis(3);
    auto x = F.as_solve(F.level_count() - 1, theta[1]);
    REQUIRE(x.has_value());
    CHECK(as(*x) == theta[1].embed(F.level_count() - 1));
    CHECK(F.from_int(5).str() == "1");
    CHECK(F.from_int(-1).as_prime_field() == 1u);
    CHECK(theta[0].embed(2).lowered().level() == 0);
    CHECK_FALSE(F.as_solve(0, F.one()).has_value());
}

TEST_CASE("linear solver over F_p")
{
    auto x = solve_mod_p({{1, 1}, {0, 1}}, {0, 1}, 2);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    CHECK_FALSE(solve_mod_p({{1, 1}, {1, 1}}, {0, 1}, 2).has_value());
}

TEST_CASE("inverse of zero is an error")
{
    FieldTower F(3);
    CHECK_THROWS((void)F.zero().inv());
    CHECK(F.one().frobenius().is_one());
}
