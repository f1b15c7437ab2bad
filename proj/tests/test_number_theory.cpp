#include <stdexcept>
#include <doctest.h>

#include <numeric>
#include <random>

#include "lph/number_theory.hpp"

using namespace lph;

TEST_CASE("is_prime matches a sieve below 200000") {
  const std::size_t limit = 200000;
  std::vector<bool> composite(limit, false);
  composite[0] = composite[1] = true;
  for (std::size_t i = 2; i * i < limit; ++i) {
    if (!composite[i]) {
      for (std::size_t j = i * i; j < limit; j += i) composite[j] = true;
    }
  }
  for (std::uint64_t n = 0; n < limit; ++n) REQUIRE(is_prime(n) == !composite[n]);
}

TEST_CASE("is_prime on large and adversarial inputs") {
  CHECK(is_prime(2305843009213693951ull));   // 2^61 - 1
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551615ull));
  CHECK_FALSE(is_prime(3215031751ull));       // strong pseudoprime to bases 2,3,5,7
  CHECK_FALSE(is_prime(3825123056546413051ull));
  CHECK_FALSE(is_prime(4294967297ull));       // 641 * 6700417
  CHECK_FALSE(is_prime(561));
}

TEST_CASE("factorize reconstructs random products") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t n = rng() >> (rng() % 60);
    if (n == 0) continue;
    const auto f = factorize(n);
    std::uint64_t back = 1;
    for (const auto& [p, e] : f) {
      CHECK(is_prime(p));
      for (std::uint64_t i = 0; i < e; ++i) back *= p;
    }
    CHECK(back == n);
  }
  CHECK(factorize(1).empty());
  CHECK_THROWS(factorize(0));
  const auto semi = factorize(4294967291ull * 4294967279ull);
  CHECK(semi.size() == 2);
  CHECK(semi.at(4294967291ull) == 1);
}

TEST_CASE("modular helpers") {
  CHECK(floor_mod(std::int64_t{-1}, 8) == 7);
  CHECK(floor_mod(std::int64_t{-16}, 8) == 0);
  CHECK(floor_mod(std::numeric_limits<std::int64_t>::min(), 3) ==
        static_cast<std::uint64_t>((std::numeric_limits<std::int64_t>::min() % 3 + 3) % 3));
  const std::uint64_t big = 18446744073709551557ull;
  CHECK(mul_mod(big - 1, big - 1, big) == 1);
  CHECK(add_mod(big - 1, big - 1, big) == big - 2);
  CHECK(checked_mul(1ull << 32, 1ull << 32) == std::nullopt);
  CHECK(checked_mul(1ull << 31, 1ull << 32) == (1ull << 63));
  CHECK(lcm_checked(4, 6) == 12);
  CHECK_THROWS_AS(lcm_checked(1ull << 63, 3), std::overflow_error);
  CHECK(bit_width_u64(0) == 0);
  CHECK(bit_width_u64(1024) == 11);
}
