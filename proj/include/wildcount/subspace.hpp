#pragma once

#include <cstdint>
#include <vector>

#include "wildcount/ff.hpp"

namespace wildcount {

// F_p-subspace of F_{p^m}, held as a reduced row echelon basis (rows are
// length-m coefficient vectors, pivots strictly increasing, pivot entries 1,
// pivot columns otherwise zero). The representation is unique per subspace,
// so equality of subspaces is equality of representations.
struct Subspace {
    std::vector<std::vector<coeff_t>> basis;
    unsigned dim() const { return static_cast<unsigned>(basis.size()); }
    friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

Subspace zero_subspace();
Subspace full_subspace(unsigned m);

// Canonicalize the span of arbitrary rows.
Subspace rref_span(std::vector<std::vector<coeff_t>> rows, std::uint64_t p);

bool subspace_contains(const Subspace& s, std::vector<coeff_t> v, std::uint64_t p);
Subspace subspace_join(const Subspace& a, const Subspace& b, std::uint64_t p);
Subspace subspace_intersect(const Subspace& a, const Subspace& b, std::uint64_t p, unsigned m);
std::uint64_t subspace_size(const Subspace& s, std::uint64_t p);

// Element indices of the subspace, ascending. Requires p^dim to fit easily.
std::vector<std::uint32_t> subspace_elements(const Subspace& s, const FieldSpec& k);

bool is_frobenius_invariant(const Subspace& s, const FieldSpec& k, unsigned fprime);

// All F_p-subspaces h with h^(q) = h for q = p^fprime, each once, in a
// deterministic order (by dimension, then basis). Built from the cyclic
// Frobenius-module closure of each element followed by join closure.
// Throws resource_error past `cap` subspaces.
std::vector<Subspace> enumerate_invariant_subspaces(const FieldSpec& k, unsigned fprime,
                                                    std::uint64_t cap = 1'000'000);

// Kernel of the trace to the subfield of order p^fprime; dim = fprime*f - fprime.
Subspace trace_zero_subspace(const FieldSpec& k, unsigned fprime, unsigned f);

// Number of cosets x + h in k_0/h with x^q - x in h, q = p^fprime.
// Closed form q * |h ∩ t| / |h|; brute force scans the field. h must be
// Frobenius_q-invariant; the two must agree (tested exhaustively).
std::uint64_t fixed_coset_count_closed(const FieldSpec& k, const Subspace& h, unsigned fprime,
                                       unsigned f);
std::uint64_t fixed_coset_count_brute(const FieldTable& k, const Subspace& h, unsigned fprime);

// Additive quotient k_0^+/h with canonical class representatives (the least
// element index of each coset).
struct QuotientMap {
    std::uint32_t classes = 0;
    std::vector<std::uint32_t> proj;  // element index -> class index
    std::vector<std::uint32_t> rep;   // class index -> least element index
};
QuotientMap make_quotient(const FieldTable& k, const Subspace& h);

// Basis of the absolute trace-zero subspace t of F_{p^k} shaped as
//   { g^i a_j : 0 <= i < r, 1 <= j <= s-1 } u { g^i (g-1) a_s : 0 <= i < r-1 }
// where g generates Gal(F_{p^k} / F_{p^s}), r = |G|, s = k/r. Found by
// seeded random search with full verification (count, membership in t,
// independence); throws resource_error when the try budget runs out.
struct TraceBasis {
    unsigned r = 0, s = 0;
    std::vector<FieldElement> alphas;   // a_1 .. a_s
    std::vector<FieldElement> vectors;  // the r(s-1) + (r-1) basis vectors
};
TraceBasis structured_trace_basis(const FieldTable& k, unsigned r, std::uint64_t seed,
                                  unsigned budget = 4000);

// Characteristic 2, q = 2^r, field degree r*m with m >= 2. With
// a_i = alpha^(q^i) + alpha^(q^(i+1)), evaluates sum_{i<j<m} a_i a_j and
// reduces it modulo the absolute trace-zero subspace (the coset is the trace
// bit). Checks the closed form: trace of alpha^(q+1) + alpha when m is odd,
// 0 when m is even; throws consistency_error on mismatch.
unsigned cross_sum_residue(const FieldTable& k, std::uint32_t alpha, unsigned r, unsigned m);

}  // namespace wildcount
