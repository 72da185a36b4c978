#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "wildcount/partition_log.hpp"
#include "wildcount/subspace.hpp"

namespace wildcount {

// One instance of the twisted functional equation: count Galois-equivariant
// f: k_0^(n-1) -> k_0^+/h with
//   f(a) + f(b) + sum_{i=1}^{n-1} a_i b_{n-i}  =  f(c)  mod h,
// where c is the coefficientwise unit-series product of a and b and the
// Galois action is the q-power Frobenius, q = p^fprime.
struct EquivariantInstance {
    const FieldTable* field = nullptr;  // k_0
    unsigned fprime = 1;
    unsigned n = 2;
    Subspace h;  // Frobenius_q-invariant
};

// q^(b * codim) with b = n - 1 - floor((n-1)/p), and 0 when p divides n.
mpz_class equivariant_count_closed(std::uint64_t p, unsigned n, const mpz_class& q, unsigned codim);

struct BruteOptions {
    std::uint64_t budget = 1'000'000;  // cap on |k_0/h|^(#domain orbits)
    bool parallel = true;
};

/// Precomputed search tables for one instance. Enumerates equivariant
/// candidates orbit by orbit (one quotient value per domain orbit, filtered
/// by the orbit stabilizer) and checks the relation on all pairs. The serial
/// and OpenMP kernels are kept separate; they count the same set and the
/// benchmark compares them.
class EquivariantKernel {
public:
    EquivariantKernel(const EquivariantInstance& inst, std::uint64_t budget);

    mpz_class candidate_bound() const { return bound_; }  // |k_0/h|^(#orbits)
    std::uint64_t candidate_total() const { return total_; }
    unsigned orbit_count() const { return static_cast<unsigned>(orbits_.size()); }
    std::uint32_t domain_size() const { return domain_; }

    std::uint64_t count_serial() const;
    std::uint64_t count_parallel() const;

private:
    bool check_candidate(std::uint64_t cand, std::vector<std::uint32_t>& fval) const;

    std::uint32_t Q_ = 0, C_ = 0, domain_ = 0;
    mpz_class bound_;
    std::uint64_t total_ = 0;
    struct Orbit {
        std::uint32_t rep;
        unsigned size;
        std::vector<std::uint32_t> allowed;  // stabilizer-fixed quotient values
    };
    std::vector<Orbit> orbits_;
    std::vector<std::uint32_t> orbit_of_, power_of_;   // per domain tuple
    std::vector<std::vector<std::uint32_t>> qfrob_pow_;  // class tables, power j
    std::vector<std::uint32_t> qadd_;        // class addition table
    std::vector<std::uint32_t> pair_c_;      // domain x domain -> product tuple
    std::vector<std::uint32_t> pair_cross_;  // domain x domain -> class of cross sum
};

// Exhaustive equivariant solution count; throws resource_error when the
// candidate bound exceeds opts.budget. The n = 1 instance has one function
// (the empty-domain case is not extrapolated from the formula).
mpz_class equivariant_count_brute(const EquivariantInstance& inst, const BruteOptions& opts = {});

// Table of quotient classes of the canonical polynomial solution (the
// degree-n log tail reduced mod p), one entry per domain tuple, verified
// against the relation on all pairs (or a seeded sample past pair_budget).
std::vector<std::uint32_t> canonical_witness_table(const EquivariantInstance& inst,
                                                   std::uint64_t pair_budget = 1'000'000,
                                                   std::uint64_t seed = 1);

enum class CountMode { closed, brute, brute_serial };

// Characteristic 2 refinement: number of f: h' -> k_0^+/h with
// f(a+b) = f(a) + f(b) + ab mod h. Closed form is 0 unless every x in h'
// squares into h, else 2^(dim h' * codim h). Brute force enumerates values
// on a basis of h', extends through the relation, and checks all pairs.
mpz_class quadratic_refinement_count(const FieldTable& k0, const Subspace& h, const Subspace& hprime,
                                     CountMode mode, const BruteOptions& opts = {});

}  // namespace wildcount
