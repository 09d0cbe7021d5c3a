#include "mlv/lucas.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

using boost::multiprecision::cpp_int;

namespace {

cpp_int binomial(int n, int k)
{
    cpp_int r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

} // namespace

TEST_CASE("Lucas binomials match direct binomials mod p")
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (int i = 0; i < 60; ++i)
            for (int n = 0; n <= i; ++n) {
                auto expected = static_cast<std::uint32_t>(binomial(i, n) % p);
                CHECK(mlv::binomial_mod(i, n, p) == expected);
                CHECK(mlv::lucas_nonzero(i, n, p) == (expected != 0));
            }
}

TEST_CASE("out of range arguments")
{
    CHECK(mlv::binomial_mod(3, 5, 2) == 0);
    CHECK_THROWS_AS(mlv::lucas_nonzero(3, 5, 2), std::invalid_argument);
}

TEST_CASE("primality")
{
    CHECK(mlv::is_prime(2));
    CHECK(mlv::is_prime(3));
    CHECK(mlv::is_prime(97));
    CHECK_FALSE(mlv::is_prime(1));
    CHECK_FALSE(mlv::is_prime(4));
    CHECK_FALSE(mlv::is_prime(91));
}
