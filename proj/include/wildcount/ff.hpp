#pragma once

#include <cstdint>
#include <vector>

#include "wildcount/util.hpp"

namespace wildcount {

using coeff_t = std::uint32_t;

// Element of F_{p^m}: residue coefficients of a polynomial of degree < m,
// little-endian (coeffs[0] is the constant term). Length always equals m.
struct FieldElement {
    std::vector<coeff_t> coeffs;
    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// F_{p^m} presented as F_p[x] modulo a monic irreducible of degree m.
///
/// The modulus is the first monic irreducible of degree m in index order
/// (indices enumerate coefficient vectors little-endian, so candidates are
/// tried with small low-order coefficients first), found by trial division
/// against every monic polynomial of degree <= m/2. Immutable after
/// construction; all operations are pure, so concurrent reads are safe.
class FieldSpec {
public:
    FieldSpec(std::uint64_t p, unsigned m);

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return m_; }
    const std::vector<coeff_t>& modulus() const { return modulus_; }

    // p^m; throws std::overflow_error past 2^62 (enumeration contexts only).
    std::uint64_t order() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(std::uint64_t c) const;  // image of an integer in the prime field

    // Enumeration order: element <-> index with coeffs as base-p digits,
    // coeffs[0] least significant. Canonical order for subspace and
    // subgroup representations.
    FieldElement from_index(std::uint64_t idx) const;
    std::uint64_t to_index(const FieldElement& x) const;

    bool is_zero(const FieldElement& x) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement scalar_mul(std::uint64_t c, const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, std::uint64_t e) const;
    FieldElement inv(const FieldElement& a) const;  // throws on zero

    /// x^(p^k), the k-th power of the absolute Frobenius. k may exceed m.
    FieldElement frobenius_power(const FieldElement& x, unsigned k) const;

    /// Trace to the subfield of order q = p^fprime inside F_{p^m} = F_{q^f}:
    /// sum of x^(q^i) for 0 <= i < f. Requires fprime * f == m; the result
    /// satisfies result^q = result.
    FieldElement relative_trace(const FieldElement& x, unsigned fprime, unsigned f) const;

    void check_element(const FieldElement& x) const;  // length and range

private:
    std::uint64_t p_;
    unsigned m_;
    std::vector<coeff_t> modulus_;
};

/// Dense index-based arithmetic for small fields; the substrate the counting
/// kernels run on. Element indices follow FieldSpec enumeration order, so
/// index 0 is zero and index 1 is one.
class FieldTable {
public:
    static constexpr std::uint64_t max_order = 2048;

    explicit FieldTable(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t size() const { return n_; }
    std::uint64_t p() const { return spec_.p(); }
    unsigned degree() const { return spec_.degree(); }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * n_ + b]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * n_ + b]; }
    std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg_[b]); }
    std::uint32_t inv(std::uint32_t a) const;  // throws on zero
    std::uint32_t frob_p(std::uint32_t a) const { return frob_[a]; }

    // a^(p^(fprime*k)): the q-power Frobenius iterated k times.
    std::uint32_t frob_q(std::uint32_t a, unsigned fprime, unsigned k = 1) const;

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    const FieldElement& element(std::uint32_t idx) const { return elems_[idx]; }
    const std::vector<coeff_t>& vec(std::uint32_t idx) const { return elems_[idx].coeffs; }

private:
    FieldSpec spec_;
    std::uint32_t n_;
    std::vector<FieldElement> elems_;
    std::vector<std::uint16_t> add_;
    std::vector<std::uint16_t> mul_;
    std::vector<std::uint16_t> neg_;
    std::vector<std::uint16_t> inv_;
    std::vector<std::uint16_t> frob_;
};

}  // namespace wildcount
