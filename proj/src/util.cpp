#include "wildcount/util.hpp"

#include <limits>
#include <numeric>

namespace wildcount {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw std::overflow_error("pow_u64 overflow");
        r *= base;
    }
    return r;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    unsigned __int128 acc = 1, b = base % mod;
    while (exp) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

unsigned multiplicative_order(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 1;
    if (std::gcd(a % n, n) != 1) throw std::invalid_argument("multiplicative_order: not a unit");
    std::uint64_t x = a % n;
    unsigned k = 1;
    while (x != 1) {
        x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * (a % n) % n);
        ++k;
    }
    return k;
}

}  // namespace wildcount
