#include "mlv/verify.hpp"

#include <doctest.h>

using namespace mlv;

TEST_CASE("uniform draws stay in range and are reproducible")
{
    std::mt19937_64 a(1), b(1);
    for (int k = 0; k < 1000; ++k) {
        auto x = uniform_int(a, -3, 4);
        CHECK(x >= -3);
        CHECK(x <= 4);
        CHECK(x == uniform_int(b, -3, 4));
    }
    CHECK_THROWS_AS(uniform_int(a, 2, 1), std::invalid_argument);
}

TEST_CASE("random polynomials follow the sampling rules")
{
    FieldTower F(3);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        Poly f = random_poly(F, rng, 3, k % 2 == 0);
        CHECK(f.degree() == 3);
        if (k % 2 == 0) CHECK(f.is_monic());
        for (const auto& c : f.coeffs()) {
            CHECK(c.terms().size() >= 1);
            CHECK(c.terms().size() <= 2);
            for (const auto& t : c.terms()) {
                CHECK((t.exp * Rat(8)).den() == 1);
                CHECK(t.exp >= Rat(-2));
                CHECK(t.exp <= Rat(2));
            }
        }
    }
}

TEST_CASE("suites are deterministic and pass at level 1")
{
    auto ctx = TowerContext::create(2);
    VerifyConfig cfg;
    cfg.levels = 1;
    cfg.samples = 5;
    cfg.seed = 7;
    for (const auto& s : suite_names()) {
        Report a = run_suite(*ctx, s, cfg);
        Report b = run_suite(*ctx, s, cfg);
        CHECK(report_to_json(a).dump() == report_to_json(b).dump());
        CHECK_MESSAGE(all_passed(a), s);
        CHECK_FALSE(a.empty());
    }
    CHECK_THROWS_AS(run_suite(*ctx, "nope", cfg), std::invalid_argument);
}

TEST_CASE("seeds change the samples")
{
    auto ctx = TowerContext::create(2);
    VerifyConfig cfg;
    cfg.levels = 1;
    cfg.samples = 5;
    cfg.seed = 1;
    auto a = report_to_json(run_suite(*ctx, "stable-limit", cfg)).dump();
    cfg.seed = 2;
    CHECK(a != report_to_json(run_suite(*ctx, "stable-limit", cfg)).dump());
}

TEST_CASE("corrupted gamma fails the mlv suite")
{
    auto ctx = TowerContext::create(2);
    VerifyConfig cfg;
    cfg.levels = 2;
    cfg.corrupt_gamma = Rat(1, 2);
    Report r = run_suite(*ctx, "mlv", cfg);
    CHECK_FALSE(all_passed(r));
    auto j = report_to_json(r);
    CHECK(j[0].contains("millis"));
    CHECK(j[0]["millis"] == 0);
}
