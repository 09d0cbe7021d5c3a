#include "mlv/series.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace mlv;

namespace {

const FieldTower& field()
{
    static FieldTower F(3);
    return F;
}

PuiseuxSeries random_series(std::mt19937_64& rng, int terms)
{
    std::map<Rat, std::int64_t> m;
    for (int k = 0; k < terms; ++k) m[Rat(static_cast<std::int64_t>(rng() % 33) - 16, 8)] += 1 + static_cast<std::int64_t>(rng() % 2);
    std::vector<Term> t;
    for (auto& [e, c] : m)
        if (c % 3 != 0) t.push_back({e, field().from_int(c)});
    return PuiseuxSeries(&field(), t);
}

// Convolution over an exponent map, independent of the merge used by the library.
std::map<Rat, std::int64_t> brute_product(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    std::map<Rat, std::int64_t> m;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms())
            m[x.exp + y.exp] = (m[x.exp + y.exp] + *x.coeff.as_prime_field() * *y.coeff.as_prime_field()) % 3;
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    return m;
}

} // namespace

TEST_CASE("exact products match convolution")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 300; ++k) {
        PuiseuxSeries a = random_series(rng, 4), b = random_series(rng, 4);
        auto expected = brute_product(a, b);
        PuiseuxSeries c = a * b;
        REQUIRE(c.terms().size() == expected.size());
        auto it = expected.begin();
        for (const auto& t : c.terms()) {
            CHECK(t.exp == it->first);
            CHECK(*t.coeff.as_prime_field() == it->second);
            ++it;
        }
        CHECK(c.is_exact());
        CHECK(a * b == b * a);
        CHECK((a + b) * a == a * a + b * a);
    }
}

TEST_CASE("Frobenius equals the p-th power")
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
        PuiseuxSeries a = random_series(rng, 3);
        CHECK(a.frobenius() == a.pow(3));
        CHECK(as_operator(a) == a.pow(3) - a);
    }
}

TEST_CASE("precision propagation")
{
    const auto& F = field();
    PuiseuxSeries a(&F, {{Rat(-1), F.one()}}, ValOrInf(Rat(2)));
    PuiseuxSeries b(&F, {{Rat(1, 2), F.one()}}, ValOrInf(Rat(5)));
    CHECK((a + b).precision() == ValOrInf(Rat(2)));
    // pa + v(b) = 5/2 and pb + v(a) = 4
    CHECK((a * b).precision() == ValOrInf(Rat(5, 2)));
    CHECK(a.frobenius().precision() == ValOrInf(Rat(6)));
    PuiseuxSeries unknown(&F, {}, ValOrInf(Rat(3)));
    CHECK(unknown.valuation() == CertifiedVal::lower_bound(Rat(3)));
    CHECK(a.valuation() == CertifiedVal::exact(Rat(-1)));
    CHECK(PuiseuxSeries(&F).valuation().value().is_inf());
}

TEST_CASE("truncation, shifting and rendering")
{
    const auto& F = field();
    PuiseuxSeries a(&F, {{Rat(-1, 2), F.one()}, {Rat(0), F.from_int(2)}, {Rat(3), F.one()}});
    CHECK(a.str() == "t^(-1/2) + 2 + t^(3)");
    PuiseuxSeries tr = a.truncated(ValOrInf(Rat(1)));
    CHECK(tr.str() == "t^(-1/2) + 2 + O(t^(1))");
    CHECK(a.shifted(Rat(1, 2)).leading().exp == Rat(0));
    CHECK(a.scaled(F.from_int(2)).str() == "2*t^(-1/2) + 1 + 2*t^(3)");
    CHECK(render_monomial(Rat(0)) == "1");
    CHECK(PuiseuxSeries(&F).str() == "0");
}

TEST_CASE("characteristic two cancellation and precision of mixed products")
{
    FieldTower F(2);
    PuiseuxSeries a = PuiseuxSeries::monomial(F.one(), Rat(-1, 2));
    CHECK((a + a).is_exact_zero());
    CHECK(a * a == PuiseuxSeries::monomial(F.one(), Rat(-1)));
    PuiseuxSeries exact = PuiseuxSeries::monomial(F.one(), Rat(1));
    PuiseuxSeries truncated(&F, {{Rat(0), F.one()}}, ValOrInf(Rat(3)));
    CHECK((exact * truncated).precision() == ValOrInf(Rat(4)));
}
