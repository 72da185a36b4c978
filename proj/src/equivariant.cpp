#include "wildcount/equivariant.hpp"

#include <algorithm>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wildcount {

mpz_class equivariant_count_closed(std::uint64_t p, unsigned n, const mpz_class& q, unsigned codim) {
    if (n % p == 0) return 0;
    unsigned b = n - 1 - (n - 1) / static_cast<unsigned>(p);
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(b) * codim);
    return out;
}

namespace {

std::vector<std::uint32_t> make_qadd(const FieldTable& k, const QuotientMap& qm) {
    std::vector<std::uint32_t> qadd(std::size_t(qm.classes) * qm.classes);
    for (std::uint32_t c1 = 0; c1 < qm.classes; ++c1)
        for (std::uint32_t c2 = 0; c2 < qm.classes; ++c2)
            qadd[std::size_t(c1) * qm.classes + c2] = qm.proj[k.add(qm.rep[c1], qm.rep[c2])];
    return qadd;
}

void decode_tuple(std::uint32_t d, std::uint32_t base, std::vector<std::uint32_t>& out) {
    for (auto& digit : out) {
        digit = d % base;
        d /= base;
    }
}

// Product tuple index and cross-term field index for one pair of domain
// tuples: c_i = a_i + b_i + sum_{j<i} a_j b_{i-j}, cross = sum a_i b_{n-i}.
std::pair<std::uint32_t, std::uint32_t> pair_product(const FieldTable& k, unsigned n,
                                                     const std::vector<std::uint32_t>& da,
                                                     const std::vector<std::uint32_t>& db) {
    const unsigned nm1 = n - 1;
    std::uint32_t cidx = 0, mul = 1, cross = 0;
    for (unsigned i = 1; i <= nm1; ++i) {
        std::uint32_t ci = k.add(da[i - 1], db[i - 1]);
        for (unsigned j = 1; j < i; ++j) ci = k.add(ci, k.mul(da[j - 1], db[i - j - 1]));
        cidx += ci * mul;
        mul *= k.size();
    }
    for (unsigned i = 1; i <= nm1; ++i) {
        unsigned j = n - i;
        if (j >= 1 && j <= nm1) cross = k.add(cross, k.mul(da[i - 1], db[j - 1]));
    }
    return {cidx, cross};
}

}  // namespace

EquivariantKernel::EquivariantKernel(const EquivariantInstance& inst, std::uint64_t budget) {
    const FieldTable& k = *inst.field;
    const FieldSpec& spec = k.spec();
    if (inst.n < 1) throw std::invalid_argument("EquivariantKernel: n >= 1");
    if (!is_frobenius_invariant(inst.h, spec, inst.fprime))
        throw std::invalid_argument("EquivariantKernel: h not Frobenius-invariant");
    Q_ = k.size();
    QuotientMap qm = make_quotient(k, inst.h);
    C_ = qm.classes;
    if (C_ == 1) {
        // Trivial quotient: the single function f = 0 satisfies everything.
        bound_ = 1;
        total_ = 1;
        domain_ = 0;
        return;
    }

    const unsigned nm1 = inst.n - 1;
    mpz_class dsize;
    mpz_ui_pow_ui(dsize.get_mpz_t(), Q_, nm1);
    // With C >= 2 the bound is at least 2^(domain/orbit length), so a large
    // domain already blows any sane budget; refuse before building tables.
    if (mpz_cmp_ui(dsize.get_mpz_t(), 1u << 22) > 0)
        throw resource_error("equivariant brute force: candidate bound exceeds budget");
    domain_ = static_cast<std::uint32_t>(dsize.get_ui());

    std::vector<std::uint32_t> ffrob(Q_);
    for (std::uint32_t x = 0; x < Q_; ++x) ffrob[x] = k.frob_q(x, inst.fprime);
    auto tuple_frob = [&](std::uint32_t d) {
        std::uint32_t out = 0, mul = 1;
        for (unsigned i = 0; i < nm1; ++i) {
            out += ffrob[d % Q_] * mul;
            d /= Q_;
            mul *= Q_;
        }
        return out;
    };

    // Galois orbits of the domain and the sigma power reaching each member
    // from its representative.
    orbit_of_.assign(domain_, UINT32_MAX);
    power_of_.assign(domain_, 0);
    unsigned max_size = 1;
    for (std::uint32_t d = 0; d < domain_; ++d) {
        if (orbit_of_[d] != UINT32_MAX) continue;
        Orbit orb;
        orb.rep = d;
        std::uint32_t cur = d;
        unsigned size = 0;
        do {
            orbit_of_[cur] = static_cast<std::uint32_t>(orbits_.size());
            power_of_[cur] = size;
            cur = tuple_frob(cur);
            ++size;
        } while (cur != d);
        orb.size = size;
        max_size = std::max(max_size, size);
        orbits_.push_back(std::move(orb));
    }

    std::vector<std::uint32_t> qfrob(C_);
    for (std::uint32_t c = 0; c < C_; ++c) qfrob[c] = qm.proj[ffrob[qm.rep[c]]];
    qfrob_pow_.resize(max_size + 1);
    qfrob_pow_[0].resize(C_);
    for (std::uint32_t c = 0; c < C_; ++c) qfrob_pow_[0][c] = c;
    for (unsigned j = 1; j <= max_size; ++j) {
        qfrob_pow_[j].resize(C_);
        for (std::uint32_t c = 0; c < C_; ++c) qfrob_pow_[j][c] = qfrob[qfrob_pow_[j - 1][c]];
    }

    mpz_ui_pow_ui(bound_.get_mpz_t(), C_, orbits_.size());
    if (mpz_cmp_ui(bound_.get_mpz_t(), budget) > 0)
        throw resource_error("equivariant brute force: candidate bound exceeds budget");

    // Values on an orbit representative must be fixed by the orbit
    // stabilizer, i.e. by sigma^(orbit size).
    total_ = 1;
    for (auto& orb : orbits_) {
        const auto& sig = qfrob_pow_[orb.size];
        for (std::uint32_t v = 0; v < C_; ++v)
            if (sig[v] == v) orb.allowed.push_back(v);
        total_ *= orb.allowed.size();
    }

    pair_c_.resize(std::size_t(domain_) * domain_);
    pair_cross_.resize(std::size_t(domain_) * domain_);
    std::vector<std::uint32_t> da(nm1), db(nm1);
    for (std::uint32_t a = 0; a < domain_; ++a) {
        decode_tuple(a, Q_, da);
        for (std::uint32_t b = 0; b < domain_; ++b) {
            decode_tuple(b, Q_, db);
            auto [cidx, cross] = pair_product(k, inst.n, da, db);
            pair_c_[std::size_t(a) * domain_ + b] = cidx;
            pair_cross_[std::size_t(a) * domain_ + b] = qm.proj[cross];
        }
    }

    qadd_ = make_qadd(k, qm);
}

bool EquivariantKernel::check_candidate(std::uint64_t cand, std::vector<std::uint32_t>& fval) const {
    // Stage the chosen value at each orbit representative, then spread it
    // over the orbit by sigma powers (the rep slot maps through the
    // identity, so the staging survives).
    for (const Orbit& orb : orbits_) {
        fval[orb.rep] = orb.allowed[cand % orb.allowed.size()];
        cand /= orb.allowed.size();
    }
    for (std::uint32_t d = 0; d < domain_; ++d)
        fval[d] = qfrob_pow_[power_of_[d]][fval[orbits_[orbit_of_[d]].rep]];

    for (std::uint32_t a = 0; a < domain_; ++a) {
        const std::uint32_t* crow = &pair_c_[std::size_t(a) * domain_];
        const std::uint32_t* xrow = &pair_cross_[std::size_t(a) * domain_];
        const std::uint32_t fa = fval[a];
        for (std::uint32_t b = a; b < domain_; ++b) {
            std::uint32_t lhs = qadd_[std::size_t(qadd_[std::size_t(fa) * C_ + fval[b]]) * C_ + xrow[b]];
            if (lhs != fval[crow[b]]) return false;
        }
    }
    return true;
}

std::uint64_t EquivariantKernel::count_serial() const {
    if (C_ == 1) return 1;
    std::vector<std::uint32_t> fval(domain_);
    std::uint64_t count = 0;
    for (std::uint64_t cand = 0; cand < total_; ++cand)
        if (check_candidate(cand, fval)) ++count;
    return count;
}

std::uint64_t EquivariantKernel::count_parallel() const {
    if (C_ == 1) return 1;
#ifdef _OPENMP
    std::uint64_t count = 0;
#pragma omp parallel
    {
        std::vector<std::uint32_t> fval(domain_);
        std::uint64_t local = 0;
#pragma omp for schedule(dynamic, 1024) nowait
        for (long long cand = 0; cand < static_cast<long long>(total_); ++cand)
            if (check_candidate(static_cast<std::uint64_t>(cand), fval)) ++local;
#pragma omp atomic
        count += local;
    }
    return count;
#else
    return count_serial();
#endif
}

mpz_class equivariant_count_brute(const EquivariantInstance& inst, const BruteOptions& opts) {
    EquivariantKernel kernel(inst, opts.budget);
    return mpz_class(static_cast<unsigned long>(opts.parallel ? kernel.count_parallel()
                                                              : kernel.count_serial()));
}

std::vector<std::uint32_t> canonical_witness_table(const EquivariantInstance& inst,
                                                   std::uint64_t pair_budget, std::uint64_t seed) {
    const FieldTable& k = *inst.field;
    const FieldSpec& spec = k.spec();
    WitnessPolynomial w = witness_polynomial(inst.n, spec.p());

    const unsigned nm1 = inst.n - 1;
    std::uint64_t dsize = pow_u64(k.size(), nm1);
    if (dsize > (1u << 20)) throw resource_error("canonical_witness_table: domain too large");
    const std::uint32_t D = static_cast<std::uint32_t>(dsize);

    QuotientMap qm = make_quotient(k, inst.h);
    std::vector<std::uint32_t> qadd = make_qadd(k, qm);
    auto qsum = [&](std::uint32_t a, std::uint32_t b) { return qadd[std::size_t(a) * qm.classes + b]; };

    std::vector<std::uint32_t> table(D);
    std::vector<FieldElement> args(nm1, spec.zero());
    std::vector<std::uint32_t> digits(nm1);
    for (std::uint32_t d = 0; d < D; ++d) {
        decode_tuple(d, k.size(), digits);
        for (unsigned i = 0; i < nm1; ++i) args[i] = k.element(digits[i]);
        table[d] = qm.proj[spec.to_index(witness_eval(w, spec, args))];
    }

    std::vector<std::uint32_t> da(nm1), db(nm1);
    auto check_pair = [&](std::uint32_t a, std::uint32_t b) {
        decode_tuple(a, k.size(), da);
        decode_tuple(b, k.size(), db);
        auto [cidx, cross] = pair_product(k, inst.n, da, db);
        std::uint32_t lhs = qsum(qsum(table[a], table[b]), qm.proj[cross]);
        if (lhs != table[cidx])
            throw consistency_error("canonical witness violates the relation at pair (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
    };

    if (static_cast<std::uint64_t>(D) * D <= pair_budget) {
        for (std::uint32_t a = 0; a < D; ++a)
            for (std::uint32_t b = a; b < D; ++b) check_pair(a, b);
    } else {
        std::mt19937_64 rng(seed);
        for (std::uint64_t i = 0; i < pair_budget; ++i)
            check_pair(static_cast<std::uint32_t>(rng() % D), static_cast<std::uint32_t>(rng() % D));
    }
    return table;
}

mpz_class quadratic_refinement_count(const FieldTable& k0, const Subspace& h, const Subspace& hprime,
                                     CountMode mode, const BruteOptions& opts) {
    const FieldSpec& spec = k0.spec();
    if (spec.p() != 2) throw std::invalid_argument("quadratic_refinement_count: characteristic 2 only");
    const unsigned r = hprime.dim();
    const unsigned codim = spec.degree() - h.dim();

    if (mode == CountMode::closed) {
        // Squaring is additive in characteristic 2, so checking the basis of
        // h' decides whether all of h' squares into h.
        for (const auto& row : hprime.basis) {
            FieldElement x{row};
            if (!subspace_contains(h, spec.mul(x, x).coeffs, spec.p())) return 0;
        }
        mpz_class out;
        mpz_ui_pow_ui(out.get_mpz_t(), 2, static_cast<unsigned long>(r) * codim);
        return out;
    }

    QuotientMap qm = make_quotient(k0, h);
    const std::uint32_t C = qm.classes;
    std::vector<std::uint32_t> qadd = make_qadd(k0, qm);
    auto qsum = [&](std::uint32_t a, std::uint32_t b) { return qadd[std::size_t(a) * C + b]; };

    mpz_class cand_bound;
    mpz_ui_pow_ui(cand_bound.get_mpz_t(), C, r);
    if (mpz_cmp_ui(cand_bound.get_mpz_t(), opts.budget) > 0)
        throw resource_error("quadratic refinement brute force: candidate bound exceeds budget");
    std::uint64_t total = cand_bound.get_ui();

    // Elements of h' by basis mask; mask xor is addition in characteristic 2.
    const std::uint32_t masks = 1u << r;
    std::vector<std::uint32_t> elem(masks, 0);
    std::vector<std::uint32_t> basis_idx(r);
    for (unsigned i = 0; i < r; ++i)
        basis_idx[i] = static_cast<std::uint32_t>(spec.to_index(FieldElement{hprime.basis[i]}));
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
        unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
        elem[mask] = k0.add(elem[mask ^ (1u << low)], basis_idx[low]);
    }
    std::vector<std::uint32_t> cross(std::size_t(masks) * r);  // class of elem(mask) * basis_i
    for (std::uint32_t mask = 0; mask < masks; ++mask)
        for (unsigned i = 0; i < r; ++i)
            cross[std::size_t(mask) * r + i] = qm.proj[k0.mul(elem[mask], basis_idx[i])];
    std::vector<std::uint32_t> pairprod(std::size_t(masks) * masks);  // class of elem(ma) * elem(mb)
    for (std::uint32_t ma = 0; ma < masks; ++ma)
        for (std::uint32_t mb = 0; mb < masks; ++mb)
            pairprod[std::size_t(ma) * masks + mb] = qm.proj[k0.mul(elem[ma], elem[mb])];

    // Extend basis values through the relation, then check every pair; the
    // extension uses f(x + e_i) = f(x) + f(e_i) + x e_i.
    auto check = [&](std::uint64_t cand, std::vector<std::uint32_t>& f) {
        std::uint32_t assign[32];
        for (unsigned i = 0; i < r; ++i) {
            assign[i] = static_cast<std::uint32_t>(cand % C);
            cand /= C;
        }
        f[0] = qm.proj[0];
        for (std::uint32_t mask = 1; mask < masks; ++mask) {
            unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
            std::uint32_t prev = mask ^ (1u << low);
            f[mask] = qsum(f[prev], qsum(assign[low], cross[std::size_t(prev) * r + low]));
        }
        for (std::uint32_t ma = 0; ma < masks; ++ma)
            for (std::uint32_t mb = ma; mb < masks; ++mb) {
                std::uint32_t lhs = qsum(qsum(f[ma], f[mb]), pairprod[std::size_t(ma) * masks + mb]);
                if (lhs != f[ma ^ mb]) return false;
            }
        return true;
    };

    std::uint64_t count = 0;
    if (mode == CountMode::brute && opts.parallel) {
#ifdef _OPENMP
#pragma omp parallel
        {
            std::vector<std::uint32_t> f(masks);
            std::uint64_t local = 0;
#pragma omp for schedule(dynamic, 256) nowait
            for (long long cand = 0; cand < static_cast<long long>(total); ++cand)
                if (check(static_cast<std::uint64_t>(cand), f)) ++local;
#pragma omp atomic
            count += local;
        }
#else
        std::vector<std::uint32_t> f(masks);
        for (std::uint64_t cand = 0; cand < total; ++cand)
            if (check(cand, f)) ++count;
#endif
    } else {
        std::vector<std::uint32_t> f(masks);
        for (std::uint64_t cand = 0; cand < total; ++cand)
            if (check(cand, f)) ++count;
    }
    return mpz_class(static_cast<unsigned long>(count));
}

}  // namespace wildcount
