#include "wildcount/count_engine.hpp"

#include <json.hpp>

namespace wildcount {

const char* branch_name(BranchId b) {
    switch (b) {
        case BranchId::subspace_sum: return "subspace_sum";
        case BranchId::zero_p_divides_n: return "zero_p_divides_n";
        case BranchId::zero_pth_power: return "zero_pth_power";
        case BranchId::unramified_two_adic: return "unramified_two_adic";
        case BranchId::open_region: return "open_region";
    }
    return "?";
}

std::optional<BranchId> branch_from_name(std::string_view s) {
    for (BranchId b : {BranchId::subspace_sum, BranchId::zero_p_divides_n, BranchId::zero_pth_power,
                       BranchId::unramified_two_adic, BranchId::open_region})
        if (s == branch_name(b)) return b;
    return std::nullopt;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::count: return "count";
        case Status::zero: return "zero";
        case Status::out_of_range: return "out_of_range";
    }
    return "?";
}

std::optional<Status> status_from_name(std::string_view s) {
    for (Status v : {Status::count, Status::zero, Status::out_of_range})
        if (s == status_name(v)) return v;
    return std::nullopt;
}

unsigned b_exponent(unsigned n, std::uint64_t p) {
    if (n < 1) throw std::invalid_argument("b_exponent: n >= 1");
    return n - 1 - static_cast<unsigned>((n - 1) / p);
}

CountResult invariant_sum_count(const QueryParams& q, std::uint64_t subspace_cap) {
    if (q.n % q.p == 0) return {Status::zero, 0, BranchId::zero_p_divides_n, {}};
    const unsigned m = q.f_base * q.f;
    if (m > 16) throw resource_error("invariant_sum_count: residue degree above 16");
    FieldSpec k0(q.p, m);
    auto subspaces = enumerate_invariant_subspaces(k0, q.f_base, subspace_cap);
    Subspace t = trace_zero_subspace(k0, q.f_base, q.f);
    const unsigned b = b_exponent(q.n, q.p);

    mpz_class p(static_cast<unsigned long>(q.p));
    mpq_class sum = 0;
    mpq_class full_term = 0;
    for (const Subspace& h : subspaces) {
        Subspace cap = subspace_intersect(h, t, q.p, m);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), p.get_mpz_t(), cap.dim());
        mpz_pow_ui(den.get_mpz_t(), p.get_mpz_t(),
                   static_cast<unsigned long>(h.dim()) * (b * q.f_base + 1));
        mpq_class term(num, den);
        term.canonicalize();
        sum += term;
        if (h.dim() == m) full_term = term;
    }
    // q^(b f' f + 1) with q = p^(f'), as a power of p.
    mpz_class lead;
    mpz_pow_ui(lead.get_mpz_t(), p.get_mpz_t(),
               static_cast<unsigned long>(b) * q.f_base * q.f_base * q.f + q.f_base);
    mpq_class total = mpq_class(lead) * sum;

    // The h = k_0 term times the leading power is exactly 1.
    mpq_class full_contrib = mpq_class(lead) * full_term;
    if (full_contrib != 1)
        throw std::logic_error("invariant_sum_count: full-space term is not 1");
    if (total.get_den() != 1)
        throw std::logic_error("invariant_sum_count: sum is not an integer");

    CountResult out;
    out.status = Status::count;
    out.value = total.get_num();
    out.branch = BranchId::subspace_sum;
    out.flags.push_back("full_space_term=1");
    return out;
}

ZetaData cyclotomic_factor_degrees(std::uint64_t p, unsigned f) {
    if (f < 1 || f > 64) throw std::invalid_argument("cyclotomic_factor_degrees: f in [1,64]");
    ZetaData z;
    z.p = p;
    z.f = f;
    unsigned a = valuation(f, p);
    unsigned pa = static_cast<unsigned>(pow_u64(p, a));
    unsigned f0 = f / pa;
    // x^f - 1 = (x^f0 - 1)^(p^a); each divisor dd of f0 contributes
    // phi(dd)/ord_dd(p) irreducible factors of degree ord_dd(p).
    for (unsigned dd = 1; dd <= f0; ++dd) {
        if (f0 % dd != 0) continue;
        unsigned ord = multiplicative_order(p, dd);
        std::uint64_t phi = euler_phi(dd);
        unsigned count = static_cast<unsigned>(phi / ord);
        for (unsigned i = 0; i < count; ++i)
            z.factors.push_back({ord, pa, dd == 1});
    }
    z.d = f - pa;

    // Divisor-count generating table for m (all factors except x - 1):
    // product over factors of (1 + y^deg + ... + y^(mult*deg)).
    z.a.assign(z.d + 1, 0);
    z.a[0] = 1;
    for (const FactorClass& fc : z.factors) {
        if (fc.is_x_minus_one) continue;
        std::vector<mpz_class> next(z.d + 1, 0);
        for (unsigned i = 0; i <= z.d; ++i) {
            if (z.a[i] == 0) continue;
            for (unsigned k = 0; k <= fc.mult && i + k * fc.deg <= z.d; ++k)
                next[i + k * fc.deg] += z.a[i];
        }
        z.a = std::move(next);
    }
    return z;
}

ClosedFormEval totally_ramified_closed_form(const QueryParams& q) {
    if (q.f_base != 1)
        throw std::invalid_argument("totally_ramified_closed_form: requires f' = 1");
    if (q.n % q.p == 0) return {mpq_class(0), {Status::zero, 0, BranchId::zero_p_divides_n, {}}};
    const unsigned b = b_exponent(q.n, q.p);
    if (b == 0)
        throw std::domain_error("totally_ramified_closed_form: undefined at b = 0 (division by p^b - 1 = 0)");
    ZetaData z = cyclotomic_factor_degrees(q.p, q.f);
    mpz_class p(static_cast<unsigned long>(q.p));

    auto ppow = [&](unsigned long e) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
        return r;
    };
    mpz_class numer = ppow(static_cast<unsigned long>(q.f + 1) * b) - ppow(static_cast<unsigned long>(q.f) * b) +
                      ppow(static_cast<unsigned long>(q.f - 1) * b + 1) - ppow(static_cast<unsigned long>(z.d) * b + 1);
    mpz_class denom = ppow(b) - 1;
    mpq_class zeta = 0;
    for (unsigned i = 0; i <= z.d; ++i) {
        mpq_class term(z.a[i], ppow(static_cast<unsigned long>(i) * b));
        term.canonicalize();
        zeta += term;
    }
    mpq_class exact = mpq_class(numer) / mpq_class(denom) * zeta;
    exact.canonicalize();

    ClosedFormEval out;
    out.exact = exact;
    out.result.branch = BranchId::subspace_sum;
    out.result.status = Status::count;
    if (exact.get_den() == 1) {
        out.result.value = exact.get_num();
    } else {
        out.result.value = exact.get_num();
        out.result.flags.push_back("non_integral_denominator=" + exact.get_den().get_str());
    }
    return out;
}

CountResult totally_ramified_divisor_sum(const QueryParams& q) {
    if (q.f_base != 1)
        throw std::invalid_argument("totally_ramified_divisor_sum: requires f' = 1");
    if (q.n % q.p == 0) return {Status::zero, 0, BranchId::zero_p_divides_n, {}};
    const unsigned b = b_exponent(q.n, q.p);
    ZetaData z = cyclotomic_factor_degrees(q.p, q.f);
    mpz_class p(static_cast<unsigned long>(q.p));
    auto ppow = [&](unsigned long e) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
        return r;
    };

    // Walk all monic divisors of x^f - 1 through multiplicity vectors over
    // the factor classes; only the degree and divisibility by x - 1 matter:
    // |h_g| = p^(f - deg g), |h_g ∩ t| = |h_g| when (x-1) | g, else |h_g|/p.
    mpq_class sum = 0;
    std::vector<unsigned> mult(z.factors.size(), 0);
    while (true) {
        unsigned deg = 0;
        bool has_xm1 = false;
        for (std::size_t i = 0; i < z.factors.size(); ++i) {
            deg += mult[i] * z.factors[i].deg;
            if (z.factors[i].is_x_minus_one && mult[i] > 0) has_xm1 = true;
        }
        unsigned hdim = q.f - deg;
        mpz_class hsize = ppow(hdim);
        mpz_class inter = has_xm1 ? hsize : hsize / p;
        mpz_class den;
        mpz_pow_ui(den.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(hdim) * (b + 1));
        mpq_class term(inter, den);
        term.canonicalize();
        sum += term;

        std::size_t i = 0;
        while (i < mult.size() && mult[i] == z.factors[i].mult) mult[i++] = 0;
        if (i == mult.size()) break;
        ++mult[i];
    }
    mpq_class total = mpq_class(ppow(static_cast<unsigned long>(b) * q.f + 1)) * sum;
    if (total.get_den() != 1)
        throw std::logic_error("totally_ramified_divisor_sum: sum is not an integer");

    CountResult out;
    out.status = Status::count;
    out.value = total.get_num();
    out.branch = BranchId::subspace_sum;
    return out;
}

CountResult unramified_two_adic_count(unsigned f_base) {
    CountResult out;
    out.status = Status::count;
    mpz_ui_pow_ui(out.value.get_mpz_t(), 2, f_base + 1);
    out.branch = BranchId::unramified_two_adic;
    out.flags.push_back("independent_of_inertia_degree");
    return out;
}

CountResult count_extensions(const QueryParams& q) {
    if (!is_prime(q.p)) throw std::invalid_argument("count_extensions: p must be prime");
    if (q.e < 1 || q.f_base < 1 || q.n < 1 || q.f < 1)
        throw std::invalid_argument("count_extensions: parameters must be positive");
    if (q.e >= q.n) {
        if (q.n % q.p == 0) return {Status::zero, 0, BranchId::zero_p_divides_n, {}};
        return invariant_sum_count(q);
    }
    if (q.p > q.e + 1) return {Status::zero, 0, BranchId::zero_pth_power, {}};
    if (q.p == 2 && q.e == 1 && q.n == 2) return unramified_two_adic_count(q.f_base);
    return {Status::out_of_range, 0, BranchId::open_region, {}};
}

std::string render_result_json(const QueryParams& q, const CountResult& r) {
    nlohmann::json j;
    j["p"] = q.p;
    j["e"] = q.e;
    j["f_base"] = q.f_base;
    j["jump"] = q.n;
    j["inertia"] = q.f;
    j["status"] = status_name(r.status);
    j["branch"] = branch_name(r.branch);
    if (r.status != Status::out_of_range) j["value"] = r.value.get_str();
    if (!r.flags.empty()) j["flags"] = r.flags;
    return j.dump();
}

}  // namespace wildcount
