#pragma once

#include <cstdint>

namespace mlv {

/// True iff p does not divide C(i, n); every base-p digit of n is dominated by
/// the matching digit of i. Throws std::invalid_argument when n > i or n < 0.
bool lucas_nonzero(std::int64_t i, std::int64_t n, std::uint32_t p);

/// C(i, n) mod p by Lucas' theorem; 0 when n > i or n < 0.
std::uint32_t binomial_mod(std::int64_t i, std::int64_t n, std::uint32_t p);

/// Naive primality test for the small characteristics the engine accepts.
bool is_prime(std::uint32_t p);

} // namespace mlv
