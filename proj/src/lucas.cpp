#include "mlv/lucas.hpp"

#include <stdexcept>

namespace mlv {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

// C(a, b) mod p for 0 <= b <= a < p.
std::uint32_t small_binomial(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    std::uint64_t num = 1, den = 1;
    for (std::uint32_t k = 0; k < b; ++k) {
        num = num * (a - k) % p;
        den = den * (k + 1) % p;
    }
    return static_cast<std::uint32_t>(num * pow_mod(den, p - 2, p) % p);
}

} // namespace

bool lucas_nonzero(std::int64_t i, std::int64_t n, std::uint32_t p)
{
    if (n < 0 || n > i) throw std::invalid_argument("lucas_nonzero requires 0 <= n <= i");
    while (n > 0) {
        if (n % p > i % p) return false;
        n /= p;
        i /= p;
    }
    return true;
}

std::uint32_t binomial_mod(std::int64_t i, std::int64_t n, std::uint32_t p)
{
    if (n < 0 || n > i) return 0;
    std::uint64_t acc = 1;
    while (n > 0 || i > 0) {
        auto a = static_cast<std::uint32_t>(i % p);
        auto b = static_cast<std::uint32_t>(n % p);
        if (b > a) return 0;
        acc = acc * small_binomial(a, b, p) % p;
        i /= p;
        n /= p;
    }
    return static_cast<std::uint32_t>(acc);
}

bool is_prime(std::uint32_t p)
{
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace mlv
