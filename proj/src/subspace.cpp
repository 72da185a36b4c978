#include "wildcount/subspace.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace wildcount {

namespace {

// In-place reduced row echelon form over F_p; returns rank.
unsigned rref(std::vector<std::vector<coeff_t>>& rows, std::uint64_t p) {
    if (rows.empty()) return 0;
    const unsigned width = static_cast<unsigned>(rows[0].size());
    unsigned rank = 0;
    for (unsigned col = 0; col < width && rank < rows.size(); ++col) {
        unsigned pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        std::uint64_t inv = mod_pow(rows[rank][col], p - 2, p);
        for (unsigned j = 0; j < width; ++j)
            rows[rank][j] = static_cast<coeff_t>(rows[rank][j] * inv % p);
        for (unsigned i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            std::uint64_t c = rows[i][col];
            for (unsigned j = 0; j < width; ++j) {
                rows[i][j] = static_cast<coeff_t>(
                    (rows[i][j] + (p - rows[rank][j]) % p * c) % p);
            }
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

std::vector<coeff_t> reduce_against(const Subspace& s, std::vector<coeff_t> v, std::uint64_t p) {
    for (const auto& row : s.basis) {
        unsigned pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size()) continue;
        std::uint64_t c = v[pivot];
        if (c == 0) continue;
        for (unsigned j = 0; j < v.size(); ++j)
            v[j] = static_cast<coeff_t>((v[j] + (p - row[j]) % p * c) % p);
    }
    return v;
}

}  // namespace

Subspace zero_subspace() { return Subspace{}; }

Subspace full_subspace(unsigned m) {
    Subspace s;
    for (unsigned i = 0; i < m; ++i) {
        std::vector<coeff_t> row(m, 0);
        row[i] = 1;
        s.basis.push_back(std::move(row));
    }
    return s;
}

Subspace rref_span(std::vector<std::vector<coeff_t>> rows, std::uint64_t p) {
    rref(rows, p);
    return Subspace{std::move(rows)};
}

bool subspace_contains(const Subspace& s, std::vector<coeff_t> v, std::uint64_t p) {
    v = reduce_against(s, std::move(v), p);
    return std::all_of(v.begin(), v.end(), [](coeff_t c) { return c == 0; });
}

Subspace subspace_join(const Subspace& a, const Subspace& b, std::uint64_t p) {
    std::vector<std::vector<coeff_t>> rows = a.basis;
    rows.insert(rows.end(), b.basis.begin(), b.basis.end());
    return rref_span(std::move(rows), p);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, std::uint64_t p, unsigned m) {
    // Zassenhaus: rref of [A|A] stacked on [B|0]; rows with zero left half
    // carry an intersection basis in the right half.
    std::vector<std::vector<coeff_t>> rows;
    for (const auto& r : a.basis) {
        std::vector<coeff_t> row(2 * m, 0);
        std::copy(r.begin(), r.end(), row.begin());
        std::copy(r.begin(), r.end(), row.begin() + m);
        rows.push_back(std::move(row));
    }
    for (const auto& r : b.basis) {
        std::vector<coeff_t> row(2 * m, 0);
        std::copy(r.begin(), r.end(), row.begin());
        rows.push_back(std::move(row));
    }
    rref(rows, p);
    std::vector<std::vector<coeff_t>> inter;
    for (const auto& row : rows) {
        bool left_zero = std::all_of(row.begin(), row.begin() + m, [](coeff_t c) { return c == 0; });
        if (left_zero) inter.emplace_back(row.begin() + m, row.end());
    }
    return rref_span(std::move(inter), p);
}

std::uint64_t subspace_size(const Subspace& s, std::uint64_t p) { return pow_u64(p, s.dim()); }

std::vector<std::uint32_t> subspace_elements(const Subspace& s, const FieldSpec& k) {
    const std::uint64_t p = k.p();
    std::uint64_t count = subspace_size(s, p);
    std::vector<std::uint32_t> out;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        FieldElement acc = k.zero();
        std::uint64_t t = mask;
        for (const auto& row : s.basis) {
            std::uint64_t c = t % p;
            t /= p;
            if (c) acc = k.add(acc, k.scalar_mul(c, FieldElement{row}));
        }
        out.push_back(static_cast<std::uint32_t>(k.to_index(acc)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_frobenius_invariant(const Subspace& s, const FieldSpec& k, unsigned fprime) {
    for (const auto& row : s.basis) {
        FieldElement img = k.frobenius_power(FieldElement{row}, fprime);
        if (!subspace_contains(s, img.coeffs, k.p())) return false;
    }
    return true;
}

std::vector<Subspace> enumerate_invariant_subspaces(const FieldSpec& k, unsigned fprime,
                                                    std::uint64_t cap) {
    if (fprime == 0) throw std::invalid_argument("enumerate_invariant_subspaces: fprime >= 1");
    std::uint64_t order = k.order();
    if (order > (1u << 20))
        throw resource_error("enumerate_invariant_subspaces: field too large to scan");

    // Cyclic Frobenius-module closures, deduplicated.
    std::set<Subspace> cyclic;
    cyclic.insert(zero_subspace());
    for (std::uint64_t idx = 1; idx < order; ++idx) {
        FieldElement x = k.from_index(idx);
        std::vector<std::vector<coeff_t>> orbit;
        FieldElement cur = x;
        for (unsigned step = 0; step < k.degree(); ++step) {
            orbit.push_back(cur.coeffs);
            cur = k.frobenius_power(cur, fprime);
            if (cur == x) break;
        }
        cyclic.insert(rref_span(std::move(orbit), k.p()));
    }

    // Join closure.
    std::set<Subspace> found = cyclic;
    std::vector<Subspace> queue(found.begin(), found.end());
    while (!queue.empty()) {
        Subspace cur = std::move(queue.back());
        queue.pop_back();
        for (const Subspace& gen : cyclic) {
            Subspace j = subspace_join(cur, gen, k.p());
            if (found.insert(j).second) {
                if (found.size() > cap)
                    throw resource_error("enumerate_invariant_subspaces: subspace cap exceeded");
                queue.push_back(std::move(j));
            }
        }
    }

    std::vector<Subspace> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a.basis < b.basis;
    });
    return out;
}

Subspace trace_zero_subspace(const FieldSpec& k, unsigned fprime, unsigned f) {
    const unsigned m = k.degree();
    if (fprime * f != m) throw std::invalid_argument("trace_zero_subspace: need fprime * f = m");
    // Kernel of the F_p-linear trace map, via RREF with an identity tail:
    // row i holds [Tr(e_i) | e_i]; combinations with zero left half span the
    // kernel.
    std::vector<std::vector<coeff_t>> rows;
    for (unsigned i = 0; i < m; ++i) {
        FieldElement e = k.zero();
        e.coeffs[i] = 1;
        FieldElement tr = k.relative_trace(e, fprime, f);
        std::vector<coeff_t> row(2 * m, 0);
        std::copy(tr.coeffs.begin(), tr.coeffs.end(), row.begin());
        row[m + i] = 1;
        rows.push_back(std::move(row));
    }
    rref(rows, k.p());
    std::vector<std::vector<coeff_t>> kernel;
    for (const auto& row : rows) {
        bool left_zero = std::all_of(row.begin(), row.begin() + m, [](coeff_t c) { return c == 0; });
        if (left_zero) kernel.emplace_back(row.begin() + m, row.end());
    }
    Subspace t = rref_span(std::move(kernel), k.p());
    if (t.dim() != m - fprime) throw std::logic_error("trace_zero_subspace: unexpected kernel dimension");
    return t;
}

std::uint64_t fixed_coset_count_closed(const FieldSpec& k, const Subspace& h, unsigned fprime,
                                       unsigned f) {
    if (!is_frobenius_invariant(h, k, fprime))
        throw std::invalid_argument("fixed_coset_count: h not Frobenius-invariant");
    Subspace t = trace_zero_subspace(k, fprime, f);
    Subspace ht = subspace_intersect(h, t, k.p(), k.degree());
    // q * |h ∩ t| / |h| = p^(fprime + dim(h∩t) - dim h); the exponent is
    // nonnegative because h/(h∩t) embeds in k_0/t.
    unsigned expo = fprime + ht.dim();
    if (expo < h.dim()) throw std::logic_error("fixed_coset_count_closed: negative exponent");
    return pow_u64(k.p(), expo - h.dim());
}

std::uint64_t fixed_coset_count_brute(const FieldTable& k, const Subspace& h, unsigned fprime) {
    const FieldSpec& spec = k.spec();
    if (!is_frobenius_invariant(h, spec, fprime))
        throw std::invalid_argument("fixed_coset_count: h not Frobenius-invariant");
    std::vector<char> member(k.size(), 0);
    for (std::uint32_t e : subspace_elements(h, spec)) member[e] = 1;
    std::uint64_t hits = 0;
    for (std::uint32_t x = 0; x < k.size(); ++x) {
        std::uint32_t d = k.sub(k.frob_q(x, fprime), x);
        if (member[d]) ++hits;
    }
    std::uint64_t hsize = subspace_size(h, spec.p());
    // x^q - x lands in h coset-uniformly, so hits is a multiple of |h|.
    if (hits % hsize != 0) throw std::logic_error("fixed_coset_count_brute: non-uniform fibers");
    return hits / hsize;
}

QuotientMap make_quotient(const FieldTable& k, const Subspace& h) {
    std::vector<std::uint32_t> helems = subspace_elements(h, k.spec());
    QuotientMap qm;
    qm.proj.assign(k.size(), UINT32_MAX);
    for (std::uint32_t x = 0; x < k.size(); ++x) {
        if (qm.proj[x] != UINT32_MAX) continue;
        std::uint32_t cls = qm.classes++;
        qm.rep.push_back(x);  // x is minimal in its coset: earlier members were marked
        for (std::uint32_t e : helems) qm.proj[k.add(x, e)] = cls;
    }
    return qm;
}

TraceBasis structured_trace_basis(const FieldTable& k, unsigned r, std::uint64_t seed,
                                  unsigned budget) {
    const FieldSpec& spec = k.spec();
    const unsigned deg = spec.degree();
    if (r == 0 || deg % r != 0) throw std::invalid_argument("structured_trace_basis: r must divide the degree");
    const unsigned s = deg / r;  // subfield degree; g = Frobenius^s
    Subspace t = trace_zero_subspace(spec, 1, deg);
    std::vector<std::uint32_t> t_elems = subspace_elements(t, spec);

    std::mt19937_64 rng(seed);
    for (unsigned attempt = 0; attempt < budget; ++attempt) {
        std::vector<FieldElement> alphas;
        for (unsigned j = 0; j + 1 < s; ++j)
            alphas.push_back(spec.from_index(t_elems[rng() % t_elems.size()]));
        alphas.push_back(spec.from_index(rng() % k.size()));

        std::vector<FieldElement> vectors;
        for (unsigned j = 0; j + 1 < s; ++j) {
            FieldElement cur = alphas[j];
            for (unsigned i = 0; i < r; ++i) {
                vectors.push_back(cur);
                cur = spec.frobenius_power(cur, s);
            }
        }
        FieldElement beta = spec.sub(spec.frobenius_power(alphas[s - 1], s), alphas[s - 1]);
        FieldElement cur = beta;
        for (unsigned i = 0; i + 1 < r; ++i) {
            vectors.push_back(cur);
            cur = spec.frobenius_power(cur, s);
        }

        bool in_t = true;
        for (const FieldElement& v : vectors)
            if (!subspace_contains(t, v.coeffs, spec.p())) in_t = false;
        if (!in_t) continue;  // cannot happen; checked anyway

        std::vector<std::vector<coeff_t>> rows;
        for (const FieldElement& v : vectors) rows.push_back(v.coeffs);
        if (rref(rows, spec.p()) != deg - 1) continue;

        TraceBasis out;
        out.r = r;
        out.s = s;
        out.alphas = std::move(alphas);
        out.vectors = std::move(vectors);
        return out;
    }
    throw resource_error("structured_trace_basis: search budget exhausted; retry with another seed");
}

unsigned cross_sum_residue(const FieldTable& k, std::uint32_t alpha, unsigned r, unsigned m) {
    const FieldSpec& spec = k.spec();
    if (spec.p() != 2) throw std::invalid_argument("cross_sum_residue: characteristic 2 only");
    if (m < 2 || r * m != spec.degree())
        throw std::invalid_argument("cross_sum_residue: need degree = r*m with m >= 2");

    auto trace_bit = [&](std::uint32_t x) {
        std::uint32_t acc = 0, cur = x;
        for (unsigned i = 0; i < spec.degree(); ++i) {
            acc = k.add(acc, cur);
            cur = k.frob_p(cur);
        }
        return static_cast<unsigned>(acc);  // 0 or 1
    };

    std::vector<std::uint32_t> a(m);
    std::uint32_t pw = alpha;  // alpha^(q^i)
    for (unsigned i = 0; i < m; ++i) {
        std::uint32_t next = k.frob_q(pw, r);
        a[i] = k.add(pw, next);
        pw = next;
    }
    std::uint32_t total = 0;
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = i + 1; j < m; ++j) total = k.add(total, k.mul(a[i], a[j]));

    unsigned got = trace_bit(total);
    unsigned expect = 0;
    if (m % 2 == 1) {
        std::uint32_t q1 = k.mul(k.frob_q(alpha, r), alpha);  // alpha^(q+1)
        expect = trace_bit(k.add(q1, alpha));
    }
    if (got != expect)
        throw consistency_error("cross_sum_residue: closed form mismatch at alpha index " +
                                std::to_string(alpha));
    return got;
}

}  // namespace wildcount
