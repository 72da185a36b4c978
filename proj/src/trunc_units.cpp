#include "wildcount/trunc_units.hpp"

#include <algorithm>

#include "wildcount/group_enum.hpp"

namespace wildcount {

TruncUnitGroup::TruncUnitGroup(const FieldTable& k0, unsigned level, unsigned fprime,
                               std::uint64_t order_cap)
    : k0_(&k0), n_(level), fprime_(fprime), Q_(k0.size()) {
    if (level < 1) throw std::invalid_argument("TruncUnitGroup: level >= 1");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < level; ++i) {
        size *= Q_;
        if (size > order_cap) throw resource_error("TruncUnitGroup: group order exceeds cap");
    }
    size_ = static_cast<std::uint32_t>(size);
    trunc_size_ = size_ / Q_;

    inv_.resize(size_);
    frob_.resize(size_);
    std::vector<std::uint32_t> a(n_), b(n_);
    for (std::uint32_t u = 0; u < size_; ++u) {
        std::uint32_t t = u;
        for (unsigned i = 0; i < n_; ++i) {
            a[i] = t % Q_;
            t /= Q_;
        }
        // inverse coefficients: b_i = -(a_i + sum_{j<i} a_j b_{i-j})
        std::uint32_t idx = 0, mul = 1;
        for (unsigned i = 1; i <= n_; ++i) {
            std::uint32_t acc = a[i - 1];
            for (unsigned j = 1; j < i; ++j) acc = k0.add(acc, k0.mul(a[j - 1], b[i - j - 1]));
            b[i - 1] = k0.neg(acc);
            idx += b[i - 1] * mul;
            mul *= Q_;
        }
        inv_[u] = idx;
        idx = 0;
        mul = 1;
        for (unsigned i = 0; i < n_; ++i) {
            idx += k0.frob_q(a[i], fprime_) * mul;
            mul *= Q_;
        }
        frob_[u] = idx;
    }

    if (std::uint64_t(size_) * size_ <= (1u << 20)) {
        mul_tab_.resize(std::size_t(size_) * size_);
        for (std::uint32_t u = 0; u < size_; ++u)
            for (std::uint32_t v = 0; v <= u; ++v) {
                auto w = static_cast<std::uint16_t>(mul_compute(u, v));
                mul_tab_[std::size_t(u) * size_ + v] = w;
                mul_tab_[std::size_t(v) * size_ + u] = w;
            }
    }
}

std::uint32_t TruncUnitGroup::mul_compute(std::uint32_t u, std::uint32_t v) const {
    const FieldTable& k = *k0_;
    std::vector<std::uint32_t> a(n_), b(n_);
    for (unsigned i = 0; i < n_; ++i) {
        a[i] = u % Q_;
        u /= Q_;
        b[i] = v % Q_;
        v /= Q_;
    }
    std::uint32_t idx = 0, mul = 1;
    for (unsigned i = 1; i <= n_; ++i) {
        std::uint32_t ci = k.add(a[i - 1], b[i - 1]);
        for (unsigned j = 1; j < i; ++j) ci = k.add(ci, k.mul(a[j - 1], b[i - j - 1]));
        idx += ci * mul;
        mul *= Q_;
    }
    return idx;
}

std::uint32_t TruncUnitGroup::mul(std::uint32_t u, std::uint32_t v) const {
    if (!mul_tab_.empty()) return mul_tab_[std::size_t(u) * size_ + v];
    return mul_compute(u, v);
}

std::vector<std::uint32_t> TruncUnitGroup::frob_orbit(std::uint32_t u) const {
    std::vector<std::uint32_t> orbit;
    std::uint32_t cur = u;
    do {
        orbit.push_back(cur);
        cur = frob_[cur];
    } while (cur != u);
    return orbit;
}

std::vector<std::uint32_t> TruncUnitGroup::coeffs(std::uint32_t u) const {
    std::vector<std::uint32_t> a(n_);
    for (unsigned i = 0; i < n_; ++i) {
        a[i] = u % Q_;
        u /= Q_;
    }
    return a;
}

std::uint32_t TruncUnitGroup::from_coeffs(const std::vector<std::uint32_t>& a) const {
    if (a.size() != n_) throw std::invalid_argument("TruncUnitGroup::from_coeffs: wrong length");
    std::uint32_t idx = 0, mul = 1;
    for (unsigned i = 0; i < n_; ++i) {
        idx += a[i] * mul;
        mul *= Q_;
    }
    return idx;
}

std::vector<UnitSubgroup> enumerate_valid_subgroups(const TruncUnitGroup& G, bool include_full,
                                                    std::uint64_t subgroup_cap) {
    auto mul = [&G](std::uint32_t x, std::uint32_t y) { return G.mul(x, y); };
    auto orbit = [&G](std::uint32_t x) { return G.frob_orbit(x); };
    auto subs = enumerate_subgroups(G.size(), G.one(), mul, orbit, subgroup_cap);

    std::vector<UnitSubgroup> out;
    std::vector<char> image(G.truncate_size());
    for (auto& elems : subs) {
        if (!include_full && elems.size() == G.size()) continue;
        std::fill(image.begin(), image.end(), 0);
        std::uint32_t distinct = 0;
        for (std::uint32_t u : elems) {
            std::uint32_t t = G.truncate_idx(u);
            if (!image[t]) {
                image[t] = 1;
                ++distinct;
            }
        }
        if (distinct != G.truncate_size()) continue;
        UnitSubgroup H;
        H.generators = greedy_generators(elems, G.one(), mul);
        H.elements = std::move(elems);
        out.push_back(std::move(H));
    }
    std::sort(out.begin(), out.end(), [](const UnitSubgroup& a, const UnitSubgroup& b) {
        if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
        return a.elements < b.elements;
    });
    return out;
}

FiberData fiber_extract(const TruncUnitGroup& G, const UnitSubgroup& H) {
    const FieldTable& k = G.field();
    const FieldSpec& spec = k.spec();
    const std::uint32_t D = G.truncate_size();
    const std::uint32_t Q = k.size();

    // Kernel coefficients: top coefficients of elements lying over the
    // identity tuple.
    std::vector<std::vector<coeff_t>> hrows;
    std::uint64_t hcount = 0;
    for (std::uint32_t u : H.elements) {
        if (G.truncate_idx(u) == 0) {
            std::uint32_t top = u / D;
            ++hcount;
            if (top != 0) hrows.push_back(k.element(top).coeffs);
        }
    }
    Subspace h = rref_span(std::move(hrows), spec.p());
    if (subspace_size(h, spec.p()) != hcount)
        throw std::logic_error("fiber_extract: kernel fiber is not a subspace");

    QuotientMap qm = make_quotient(k, h);
    std::vector<std::uint32_t> cls(D, UINT32_MAX);
    for (std::uint32_t u : H.elements) {
        std::uint32_t d = G.truncate_idx(u);
        std::uint32_t c = qm.proj[u / D];
        if (cls[d] == UINT32_MAX)
            cls[d] = c;
        else if (cls[d] != c)
            throw std::logic_error("fiber_extract: fiber spans several cosets");
    }
    for (std::uint32_t d = 0; d < D; ++d)
        if (cls[d] == UINT32_MAX)
            throw std::invalid_argument("fiber_extract: subgroup is not surjective");

    // Equivariance of the section; the kernel h is invariant by construction.
    for (std::uint32_t d = 0; d < D; ++d) {
        std::uint32_t fd = 0, mul = 1, t = d;
        for (unsigned i = 0; i + 1 < G.level(); ++i) {
            fd += k.frob_q(t % Q, G.fprime()) * mul;
            t /= Q;
            mul *= Q;
        }
        std::uint32_t expect = qm.proj[k.frob_q(qm.rep[cls[d]], G.fprime())];
        if (cls[fd] != expect) throw std::logic_error("fiber_extract: section not equivariant");
    }

    FiberData fd;
    fd.h = std::move(h);
    fd.reps.resize(D);
    for (std::uint32_t d = 0; d < D; ++d) fd.reps[d] = qm.rep[cls[d]];
    if (fd.reps[0] != 0) throw std::logic_error("fiber_extract: identity fiber misses zero");
    return fd;
}

UnitSubgroup fiber_assemble(const TruncUnitGroup& G, const FiberData& fd) {
    const FieldTable& k = G.field();
    const FieldSpec& spec = k.spec();
    const std::uint32_t D = G.truncate_size();
    const std::uint32_t Q = k.size();
    const unsigned n = G.level();
    if (fd.reps.size() != D) throw std::invalid_argument("fiber_assemble: wrong table length");

    QuotientMap qm = make_quotient(k, fd.h);
    auto cls_of = [&](std::uint32_t d) { return qm.proj[fd.reps[d]]; };
    if (cls_of(0) != qm.proj[0]) throw consistency_error("fiber_assemble: identity fiber must be h");

    // Equivariance.
    for (std::uint32_t d = 0; d < D; ++d) {
        std::uint32_t fdix = 0, mul = 1, t = d;
        for (unsigned i = 0; i + 1 < n; ++i) {
            fdix += k.frob_q(t % Q, G.fprime()) * mul;
            t /= Q;
            mul *= Q;
        }
        if (cls_of(fdix) != qm.proj[k.frob_q(fd.reps[d], G.fprime())])
            throw consistency_error("fiber_assemble: section not equivariant at tuple " +
                                    std::to_string(d));
    }

    // Compatibility relation on every pair of tuples.
    std::vector<std::uint32_t> da(n - 1), db(n - 1);
    for (std::uint32_t a = 0; a < D; ++a) {
        std::uint32_t t = a;
        for (unsigned i = 0; i + 1 < n; ++i) {
            da[i] = t % Q;
            t /= Q;
        }
        for (std::uint32_t b = a; b < D; ++b) {
            t = b;
            for (unsigned i = 0; i + 1 < n; ++i) {
                db[i] = t % Q;
                t /= Q;
            }
            std::uint32_t cidx = 0, mul = 1, cross = 0;
            for (unsigned i = 1; i + 1 <= n; ++i) {
                std::uint32_t ci = k.add(da[i - 1], db[i - 1]);
                for (unsigned j = 1; j < i; ++j) ci = k.add(ci, k.mul(da[j - 1], db[i - j - 1]));
                cidx += ci * mul;
                mul *= Q;
            }
            for (unsigned i = 1; i + 1 <= n; ++i) {
                unsigned j = n - i;
                if (j >= 1 && j + 1 <= n) cross = k.add(cross, k.mul(da[i - 1], db[j - 1]));
            }
            std::uint32_t lhs = qm.proj[k.add(k.add(fd.reps[a], fd.reps[b]), cross)];
            if (lhs != cls_of(cidx))
                throw consistency_error("fiber_assemble: relation violated at pair (" +
                                        std::to_string(a) + "," + std::to_string(b) + ")");
        }
    }

    std::vector<std::uint32_t> helems = subspace_elements(fd.h, spec);
    UnitSubgroup H;
    H.elements.reserve(std::size_t(D) * helems.size());
    for (std::uint32_t d = 0; d < D; ++d) {
        for (std::uint32_t e : helems) {
            std::uint32_t top = k.add(fd.reps[d], e);
            H.elements.push_back(d + top * D);
        }
    }
    std::sort(H.elements.begin(), H.elements.end());
    auto mul = [&G](std::uint32_t x, std::uint32_t y) { return G.mul(x, y); };
    H.generators = greedy_generators(H.elements, G.one(), mul);
    return H;
}

OracleBreakdown oracle_breakdown(std::uint64_t p, unsigned fprime, unsigned f, unsigned n,
                                 const OracleOptions& opts) {
    FieldSpec spec(p, fprime * f);
    FieldTable k(spec);
    TruncUnitGroup G(k, n, fprime, opts.group_cap);
    auto valid = enumerate_valid_subgroups(G, opts.include_full, opts.subgroup_cap);

    OracleBreakdown out;
    for (const UnitSubgroup& H : valid) {
        std::vector<char> member(G.size(), 0);
        for (std::uint32_t u : H.elements) member[u] = 1;
        std::uint64_t fixed_elems = 0;
        for (std::uint32_t u = 0; u < G.size(); ++u)
            if (member[G.mul(G.frob(u), G.inv(u))]) ++fixed_elems;
        if (fixed_elems % H.elements.size() != 0)
            throw std::logic_error("oracle_breakdown: fixed elements not coset-uniform");
        std::uint64_t fixed = fixed_elems / H.elements.size();
        unsigned h_dim = fiber_extract(G, H).h.dim();
        out.subgroups.push_back({H.elements.size(), h_dim, fixed});
        out.total += static_cast<unsigned long>(fixed);
    }
    return out;
}

mpz_class oracle_total_count(std::uint64_t p, unsigned fprime, unsigned f, unsigned n,
                             bool include_full, std::uint64_t group_cap,
                             std::uint64_t subgroup_cap) {
    OracleOptions opts;
    opts.include_full = include_full;
    opts.group_cap = group_cap;
    opts.subgroup_cap = subgroup_cap;
    return oracle_breakdown(p, fprime, f, n, opts).total;
}

}  // namespace wildcount
