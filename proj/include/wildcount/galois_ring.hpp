#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "wildcount/subspace.hpp"

namespace wildcount {

/// Z/8[x] modulo a monic degree-d polynomial whose mod-2 reduction is
/// irreducible: the ring of integers of the unramified 2-adic field of
/// degree d, truncated mod 8. The modulus lifts the binary field modulus
/// verbatim; the Frobenius is the Hensel-lifted root congruent to x^2 mod 2.
/// Elements are indices with base-8 digit vectors, little-endian.
class GaloisRing {
public:
    explicit GaloisRing(unsigned d);  // 1 <= d <= 4

    unsigned degree() const { return d_; }
    std::uint32_t size() const { return size_; }  // 8^d
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }
    std::uint32_t from_int(unsigned c) const { return c % 8; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

    bool is_unit(std::uint32_t a) const;      // nonzero reduction mod 2
    std::uint32_t unit_inv(std::uint32_t a) const;

    std::uint32_t frobenius_image() const { return frob_image_; }  // sigma(x)
    std::uint32_t sigma(std::uint32_t a, unsigned k = 1) const;

    // Digit-wise reductions keyed as small indices: mod 4 (base-4 digits)
    // and mod 2 (the residue field element index).
    std::uint32_t reduce_mod4(std::uint32_t a) const;
    std::uint32_t reduce_mod2(std::uint32_t a) const;

    const std::vector<std::uint32_t>& units() const { return units_; }

    // Horner evaluation of a coefficient list at a ring element.
    std::uint32_t eval_poly(const std::vector<std::uint32_t>& coeffs, std::uint32_t at) const;

private:
    std::vector<std::uint32_t> digits(std::uint32_t a) const;
    std::uint32_t from_digits(const std::vector<std::uint32_t>& v) const;

    unsigned d_;
    std::uint32_t size_;
    std::vector<std::uint32_t> modulus_;  // d+1 coefficients mod 8
    std::uint32_t frob_image_ = 0;
    std::vector<std::uint32_t> sigma_tab_;
    std::vector<std::uint32_t> units_;
};

struct SquareClassReport {
    unsigned degree = 0;
    bool squares_match = false;     // {u^2 : u in 1+2R} equals {1 + 4(z^2+z)}
    bool image_index_two = false;   // the induced subgroup of k_0^+ has index 2
    bool equals_trace_zero = false; // and equals the trace-zero subspace
    bool pass() const { return squares_match && image_index_two && equals_trace_zero; }
};

// Exhaustive verification of the square classes of 1 + 2R mod 8 and the
// induced Artin-Schreier image inside (1+4R)/(1+8R) = k_0^+.
SquareClassReport square_class_check(const GaloisRing& R);

struct UnramifiedOracleReport {
    mpz_class total = 0;
    struct PerSubgroup {
        std::uint64_t order;
        unsigned h_dim;             // induced subgroup of (1+4R)/(1+8R)
        std::uint64_t fixed_cosets;
    };
    std::vector<PerSubgroup> subgroups;
};

// Ground truth for the unramified 2-adic jump-2 count: enumerate proper
// sigma^nK-invariant subgroups of (R/8)^x that surject onto units mod 4 and
// total the Galois-fixed cosets. The ambient degree is d = nK * r.
UnramifiedOracleReport unramified_oracle_report(unsigned nK, unsigned r,
                                                std::uint64_t subgroup_cap = 200000,
                                                unsigned d_cap = 3);

mpz_class unramified_oracle_count(unsigned nK, unsigned r, std::uint64_t subgroup_cap = 200000,
                                  unsigned d_cap = 3);

}  // namespace wildcount
