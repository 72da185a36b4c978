#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "wildcount/subspace.hpp"

namespace wildcount {

/// The unit group (1 + T k_0[T]) / (1 + T^(n+1) k_0[T]): truncated
/// polynomials 1 + a_1 T + ... + a_n T^n over k_0 with coefficientwise
/// q-power Frobenius. Elements are indices encoding (a_1..a_n) base |k_0|,
/// little-endian, so the identity is index 0 and dropping the top
/// coefficient is reduction mod |k_0|^(n-1).
class TruncUnitGroup {
public:
    TruncUnitGroup(const FieldTable& k0, unsigned level, unsigned fprime,
                   std::uint64_t order_cap = 4096);

    const FieldTable& field() const { return *k0_; }
    unsigned level() const { return n_; }
    unsigned fprime() const { return fprime_; }
    std::uint32_t size() const { return size_; }
    std::uint32_t one() const { return 0; }

    std::uint32_t mul(std::uint32_t u, std::uint32_t v) const;
    std::uint32_t inv(std::uint32_t u) const { return inv_[u]; }
    std::uint32_t frob(std::uint32_t u) const { return frob_[u]; }
    std::vector<std::uint32_t> frob_orbit(std::uint32_t u) const;

    // Image in the level-(n-1) group (top coefficient dropped).
    std::uint32_t truncate_idx(std::uint32_t u) const { return u % trunc_size_; }
    std::uint32_t truncate_size() const { return trunc_size_; }

    std::vector<std::uint32_t> coeffs(std::uint32_t u) const;  // field indices a_1..a_n
    std::uint32_t from_coeffs(const std::vector<std::uint32_t>& a) const;

private:
    std::uint32_t mul_compute(std::uint32_t u, std::uint32_t v) const;

    const FieldTable* k0_;
    unsigned n_, fprime_;
    std::uint32_t Q_, size_, trunc_size_;
    std::vector<std::uint16_t> mul_tab_;  // only when size is small
    std::vector<std::uint32_t> inv_, frob_;
};

struct UnitSubgroup {
    std::vector<std::uint32_t> elements;    // sorted; the canonical identity
    std::vector<std::uint32_t> generators;  // advisory small generating set
    friend bool operator==(const UnitSubgroup& a, const UnitSubgroup& b) {
        return a.elements == b.elements;
    }
};

// All subgroups H that are Frobenius-invariant and surject onto the
// level-(n-1) group under truncation; proper subgroups only unless
// include_full is set. Deterministic order (by size, then elements).
std::vector<UnitSubgroup> enumerate_valid_subgroups(const TruncUnitGroup& G, bool include_full,
                                                    std::uint64_t subgroup_cap = 200000);

// The kernel subgroup h and the coset-valued section of a valid subgroup:
// reps[d] is the least field element index of the coset of top coefficients
// sitting over the length-(n-1) tuple d.
struct FiberData {
    Subspace h;
    std::vector<std::uint32_t> reps;
};

FiberData fiber_extract(const TruncUnitGroup& G, const UnitSubgroup& H);

// Rebuild the subgroup from fiber data, checking the compatibility relation
// on every pair first; throws consistency_error naming the offending pair.
UnitSubgroup fiber_assemble(const TruncUnitGroup& G, const FiberData& fd);

struct OracleOptions {
    bool include_full = false;
    std::uint64_t group_cap = 4096;
    std::uint64_t subgroup_cap = 200000;
};

struct OracleBreakdown {
    struct PerSubgroup {
        std::uint64_t order;
        unsigned h_dim;
        std::uint64_t fixed_cosets;
    };
    mpz_class total = 0;
    std::vector<PerSubgroup> subgroups;
};

// Ground-truth extension count for e >= n: sum over valid subgroups of the
// number of Frobenius-fixed cosets of the unit group modulo the subgroup,
// counted directly in the group (no closed form anywhere on this path).
OracleBreakdown oracle_breakdown(std::uint64_t p, unsigned fprime, unsigned f, unsigned n,
                                 const OracleOptions& opts = {});

mpz_class oracle_total_count(std::uint64_t p, unsigned fprime, unsigned f, unsigned n,
                             bool include_full, std::uint64_t group_cap = 4096,
                             std::uint64_t subgroup_cap = 200000);

}  // namespace wildcount
