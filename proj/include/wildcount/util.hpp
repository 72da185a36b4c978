#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wildcount {

// Thrown when an enumeration would exceed a configured cap. The message
// names the cap that was hit so callers can report or raise it.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when fiber data fails the compatibility relation; carries the
// offending pair in the message.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

bool is_prime(std::uint64_t n);

// Distinct prime divisors, increasing.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// p-adic valuation and cofactor: n = p^v * u with p not dividing u.
unsigned valuation(std::uint64_t n, std::uint64_t p);

// base^exp, throwing std::overflow_error instead of wrapping.
std::uint64_t pow_u64(std::uint64_t base, unsigned exp);

std::uint64_t euler_phi(std::uint64_t n);

// Smallest k >= 1 with a^k = 1 mod n; requires gcd(a, n) = 1.
unsigned multiplicative_order(std::uint64_t a, std::uint64_t n);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

}  // namespace wildcount
