#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "wildcount/subspace.hpp"

namespace wildcount {

// Query: base field K/Q_p with ramification index e and inertia degree
// f_base, jump level n, inertia degree f of the extensions being counted.
struct QueryParams {
    std::uint64_t p = 2;
    unsigned e = 1;
    unsigned f_base = 1;
    unsigned n = 1;
    unsigned f = 1;
    friend auto operator<=>(const QueryParams&, const QueryParams&) = default;
};

enum class Status { count, zero, out_of_range };

enum class BranchId {
    subspace_sum,        // e >= n, p not dividing n: the invariant-subspace sum
    zero_p_divides_n,    // e >= n, p | n
    zero_pth_power,      // e < n, p > e+1: p-th powers reach too deep
    unramified_two_adic, // p = 2, e = 1, n = 2
    open_region,         // p-1 <= e < n otherwise: no formula
};

const char* branch_name(BranchId b);
std::optional<BranchId> branch_from_name(std::string_view s);
const char* status_name(Status s);
std::optional<Status> status_from_name(std::string_view s);

struct CountResult {
    Status status = Status::out_of_range;
    mpz_class value = 0;  // meaningful for count and zero
    BranchId branch = BranchId::open_region;
    std::vector<std::string> flags;
    friend bool operator==(const CountResult&, const CountResult&) = default;
};

// b = n - 1 - floor((n-1)/p): the prime-to-p coefficient slots below the jump.
unsigned b_exponent(unsigned n, std::uint64_t p);

// q^(b f' f + 1) * sum over Frobenius-invariant subspaces h of k_0 of
// |h ∩ t| / |h|^(b f' + 1), in exact rationals with a final integrality
// assertion. Returns zero status when p | n. The term at h = k_0 is always
// exactly 1 and is recorded in the flags (the properness annotation).
CountResult invariant_sum_count(const QueryParams& q, std::uint64_t subspace_cap = 1'000'000);

struct FactorClass {
    unsigned deg = 0;
    unsigned mult = 0;
    bool is_x_minus_one = false;
};

// Degree/multiplicity data of x^f - 1 over F_p via multiplicative orders,
// plus the divisor-count table of m = (x^f - 1)/(x - 1)^(p^v).
struct ZetaData {
    std::uint64_t p = 0;
    unsigned f = 0;
    std::vector<FactorClass> factors;  // all irreducible factors of x^f - 1
    unsigned d = 0;                    // deg m
    std::vector<mpz_class> a;          // a[i] = # monic degree-i divisors of m
};
ZetaData cyclotomic_factor_degrees(std::uint64_t p, unsigned f);

// The printed totally ramified closed form (requires f' = 1 and b >= 1;
// throws std::domain_error at b = 0 where the expression divides by zero).
// The exact rational value is returned alongside; when it is not an
// integer the result carries a "non_integral" flag and the value field
// holds the numerator with the denominator flagged.
struct ClosedFormEval {
    mpq_class exact;
    CountResult result;
};
ClosedFormEval totally_ramified_closed_form(const QueryParams& q);

// The divisor-sum evaluation for f' = 1: p^(b f + 1) * sum over monic
// divisors g of x^f - 1 of |h_g ∩ t| / |h_g|^(b+1), using only degrees and
// multiplicities. Agrees with invariant_sum_count by construction.
CountResult totally_ramified_divisor_sum(const QueryParams& q);

// p = 2, unramified base of degree f_base, jump 2: 2^(f_base + 1),
// independent of f.
CountResult unramified_two_adic_count(unsigned f_base);

// Branch dispatch over the whole parameter space; exactly one branch fires.
CountResult count_extensions(const QueryParams& q);

// Stable text rendering used by the CLI and the sweep cache.
std::string render_result_json(const QueryParams& q, const CountResult& r);

}  // namespace wildcount
