#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "wildcount/ff.hpp"

namespace wildcount {

// Partition of a positive integer, parts non-increasing.
struct Partition {
    std::vector<unsigned> parts;

    unsigned sum() const;
    unsigned length() const { return static_cast<unsigned>(parts.size()); }
    // number of parts equal to i
    unsigned count_of(unsigned i) const;
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

// All partitions of n, descending lexicographic, each exactly once. n <= 20.
std::vector<Partition> enumerate_partitions(unsigned n);

struct PartitionStats {
    unsigned length;
    mpz_class perm_count;  // distinct orderings: length! / prod(multiplicity!)
};
PartitionStats partition_stats(const Partition& p);

// Exact coefficients of the degree-n log polynomial, indexed by partitions
// of n: partition p contributes (-1)^length(p) * perm_count(p) / length(p)
// on the monomial prod_i x_i^(count of i in p).
struct LogCoefficientTable {
    unsigned n = 0;
    std::map<Partition, mpq_class> terms;
};
LogCoefficientTable log_coefficient_table(unsigned n);

// Evaluate the table's polynomial at a rational point (x_1..x_n).
mpq_class evaluate_log_poly(const LogCoefficientTable& t, const std::vector<mpq_class>& x);

// Unit series 1 + sum c_i T^i (or log series sum c_i T^i), truncated:
// coeffs[i-1] holds c_i.
struct TruncatedSeries {
    std::vector<mpq_class> coeffs;
    unsigned order() const { return static_cast<unsigned>(coeffs.size()); }
    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;
};

// log(1 + sum c_i T^i) truncated at T^N, standard Mercator convention
// sum_{m>=1} (-1)^(m+1) (u-1)^m / m. Independent route to the same
// coefficients as log_coefficient_table, up to one global sign.
TruncatedSeries truncated_log(const TruncatedSeries& u, unsigned N);

// Coefficients of the product of two unit series:
// z_i = x_i + y_i + sum_{j<i} x_j y_{i-j}.
TruncatedSeries z_convolve(const TruncatedSeries& x, const TruncatedSeries& y);

// Rational points of the additivity identity r(x) + r(y) = r(z_convolve(x,y)),
// exact equality at seeded random points plus fixed corner points.
bool log_additivity_check(unsigned n, unsigned trials, std::uint64_t seed);

struct IntegralityReport {
    unsigned n = 0;
    bool pass = false;
    mpz_class max_denominator;
    std::vector<std::uint64_t> denominator_primes;  // union over all coefficients
};
// Certifies every reduced denominator in log_coefficient_table(n) has prime
// support contained in the primes dividing n.
IntegralityReport integrality_certificate(unsigned n);

// Weight-n coefficients of the formal log of the generic unit series,
// computed by direct series expansion (no partition formula). Keyed the
// same way as LogCoefficientTable; this is the oracle route.
std::map<Partition, mpq_class> generic_log_coefficients(unsigned n);

// Global sign relating log_coefficient_table to generic_log_coefficients:
// table = epsilon * series, the same epsilon for every n and partition.
int log_sign_epsilon();

// The degree-n table reduced mod p with the single-part term {n} removed:
// a polynomial in x_1..x_{n-1} over F_p, stored partition-indexed. Each
// rational a/b maps to a * b^-1 mod p; requires p not dividing n (otherwise
// some b is not invertible and the downstream count is zero anyway).
struct WitnessPolynomial {
    std::uint64_t p = 0;
    unsigned n = 0;
    std::map<Partition, std::uint64_t> terms;  // all parts < n
};
WitnessPolynomial witness_polynomial(unsigned n, std::uint64_t p);

// Evaluate on field arguments a_1..a_{n-1}.
FieldElement witness_eval(const WitnessPolynomial& w, const FieldSpec& k, const std::vector<FieldElement>& a);

}  // namespace wildcount
