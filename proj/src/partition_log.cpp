#include "wildcount/partition_log.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace wildcount {

unsigned Partition::sum() const { return std::accumulate(parts.begin(), parts.end(), 0u); }

unsigned Partition::count_of(unsigned i) const {
    return static_cast<unsigned>(std::count(parts.begin(), parts.end(), i));
}

namespace {

void gen_partitions(unsigned remaining, unsigned max_part, Partition& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        cur.parts.push_back(part);
        gen_partitions(remaining - part, part, cur, out);
        cur.parts.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(unsigned n) {
    if (n < 1 || n > 20) throw std::invalid_argument("enumerate_partitions: n must be in [1,20]");
    std::vector<Partition> out;
    Partition cur;
    gen_partitions(n, n, cur, out);
    return out;
}

PartitionStats partition_stats(const Partition& p) {
    unsigned len = p.length();
    mpz_class count;
    mpz_fac_ui(count.get_mpz_t(), len);
    unsigned i = 0;
    while (i < len) {
        unsigned j = i;
        while (j < len && p.parts[j] == p.parts[i]) ++j;
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), j - i);
        count /= f;
        i = j;
    }
    return {len, count};
}

LogCoefficientTable log_coefficient_table(unsigned n) {
    if (n < 1 || n > 20) throw std::invalid_argument("log_coefficient_table: n must be in [1,20]");
    LogCoefficientTable t;
    t.n = n;
    for (const Partition& p : enumerate_partitions(n)) {
        auto [len, perm] = partition_stats(p);
        mpq_class c(perm, len);
        c.canonicalize();
        if (len % 2 == 1) c = -c;
        t.terms.emplace(p, std::move(c));
    }
    return t;
}

mpq_class evaluate_log_poly(const LogCoefficientTable& t, const std::vector<mpq_class>& x) {
    if (x.size() < t.n) throw std::invalid_argument("evaluate_log_poly: point too short");
    mpq_class total = 0;
    for (const auto& [part, coeff] : t.terms) {
        mpq_class mono = coeff;
        for (unsigned v : part.parts) mono *= x[v - 1];
        total += mono;
    }
    return total;
}

TruncatedSeries z_convolve(const TruncatedSeries& x, const TruncatedSeries& y) {
    if (x.order() != y.order()) throw std::invalid_argument("z_convolve: mismatched truncation orders");
    unsigned N = x.order();
    TruncatedSeries z;
    z.coeffs.resize(N, mpq_class(0));
    for (unsigned i = 1; i <= N; ++i) {
        mpq_class c = x.coeffs[i - 1] + y.coeffs[i - 1];
        for (unsigned j = 1; j < i; ++j) c += x.coeffs[j - 1] * y.coeffs[i - j - 1];
        z.coeffs[i - 1] = std::move(c);
    }
    return z;
}

TruncatedSeries truncated_log(const TruncatedSeries& u, unsigned N) {
    if (N > 20) throw std::invalid_argument("truncated_log: N must be <= 20");
    std::vector<mpq_class> x(N, mpq_class(0));  // u - 1
    for (unsigned i = 0; i < std::min(N, u.order()); ++i) x[i] = u.coeffs[i];
    std::vector<mpq_class> power = x;  // x^m, truncated
    TruncatedSeries out;
    out.coeffs.resize(N, mpq_class(0));
    for (unsigned m = 1; m <= N; ++m) {
        mpq_class c(m % 2 == 1 ? 1 : -1, m);
        for (unsigned i = 0; i < N; ++i) out.coeffs[i] += c * power[i];
        if (m == N) break;
        // power *= x, truncated at T^N; index i stands for T^(i+1)
        std::vector<mpq_class> next(N, mpq_class(0));
        for (unsigned i = 0; i < N; ++i) {
            if (power[i] == 0) continue;
            for (unsigned j = 0; i + j + 2 <= N; ++j) next[i + j + 1] += power[i] * x[j];
        }
        power = std::move(next);
    }
    return out;
}

bool log_additivity_check(unsigned n, unsigned trials, std::uint64_t seed) {
    if (n > 12) throw std::invalid_argument("log_additivity_check: n must be <= 12");
    LogCoefficientTable table = log_coefficient_table(n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);

    auto check_point = [&](const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
        TruncatedSeries xs{x}, ys{y};
        TruncatedSeries zs = z_convolve(xs, ys);
        mpq_class lhs = evaluate_log_poly(table, x) + evaluate_log_poly(table, y);
        mpq_class rhs = evaluate_log_poly(table, zs.coeffs);
        return lhs == rhs;
    };

    std::vector<mpq_class> zeros(n, mpq_class(0));
    if (!check_point(zeros, zeros)) return false;

    auto random_point = [&]() {
        std::vector<mpq_class> v(n);
        for (auto& c : v) {
            c = mpq_class(num(rng), den(rng));
            c.canonicalize();
        }
        return v;
    };

    {
        std::vector<mpq_class> x = random_point();
        if (!check_point(x, x)) return false;  // x = y corner
    }
    for (unsigned t = 0; t < trials; ++t) {
        if (!check_point(random_point(), random_point())) return false;
    }
    return true;
}

IntegralityReport integrality_certificate(unsigned n) {
    LogCoefficientTable table = log_coefficient_table(n);
    IntegralityReport rep;
    rep.n = n;
    rep.pass = true;
    rep.max_denominator = 1;
    std::vector<std::uint64_t> nprimes = prime_factors(n);
    std::vector<std::uint64_t> seen;
    for (const auto& [part, coeff] : table.terms) {
        mpz_class den = coeff.get_den();
        if (den > rep.max_denominator) rep.max_denominator = den;
        // denominators divide the partition length, so they fit in 64 bits
        std::uint64_t d = den.get_ui();
        for (std::uint64_t q : prime_factors(d)) {
            if (std::find(seen.begin(), seen.end(), q) == seen.end()) seen.push_back(q);
            if (std::find(nprimes.begin(), nprimes.end(), q) == nprimes.end()) rep.pass = false;
        }
    }
    std::sort(seen.begin(), seen.end());
    rep.denominator_primes = std::move(seen);
    return rep;
}

namespace {

// Sparse polynomial in a_1, a_2, ... with monomials keyed by the partition
// listing each a_i with its exponent; weight of a monomial is the sum of
// its parts. Everything is truncated at weight <= bound.
using PartPoly = std::map<Partition, mpq_class>;

PartPoly ppoly_mul(const PartPoly& f, const PartPoly& g, unsigned bound) {
    PartPoly out;
    for (const auto& [pf, cf] : f) {
        unsigned wf = pf.sum();
        for (const auto& [pg, cg] : g) {
            if (wf + pg.sum() > bound) continue;
            Partition m;
            m.parts.reserve(pf.parts.size() + pg.parts.size());
            std::merge(pf.parts.begin(), pf.parts.end(), pg.parts.begin(), pg.parts.end(),
                       std::back_inserter(m.parts), std::greater<unsigned>());
            out[m] += cf * cg;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    }
    return out;
}

}  // namespace

std::map<Partition, mpq_class> generic_log_coefficients(unsigned n) {
    if (n < 1 || n > 20) throw std::invalid_argument("generic_log_coefficients: n must be in [1,20]");
    PartPoly x;  // the generic series minus 1: a_1 + a_2 + ... + a_n
    for (unsigned i = 1; i <= n; ++i) x.emplace(Partition{{i}}, mpq_class(1));
    PartPoly power = x;
    PartPoly acc;
    for (unsigned m = 1; m <= n; ++m) {
        mpq_class c(m % 2 == 1 ? 1 : -1, m);
        for (const auto& [part, coeff] : power) acc[part] += c * coeff;
        if (m < n) power = ppoly_mul(power, x, n);
    }
    std::map<Partition, mpq_class> out;
    for (auto& [part, coeff] : acc) {
        if (part.sum() == n && coeff != 0) out.emplace(part, coeff);
    }
    return out;
}

int log_sign_epsilon() {
    // Determined from the small tables; tests confirm the same sign through
    // n = 12. The table stores the (-1)^length convention, the series the
    // Mercator convention, and they differ by a single global sign.
    static const int eps = [] {
        for (int cand : {+1, -1}) {
            bool ok = true;
            for (unsigned n = 1; n <= 4 && ok; ++n) {
                LogCoefficientTable t = log_coefficient_table(n);
                auto series = generic_log_coefficients(n);
                if (series.size() != t.terms.size()) ok = false;
                for (const auto& [part, coeff] : t.terms) {
                    auto it = series.find(part);
                    if (it == series.end() || coeff != cand * it->second) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return cand;
        }
        throw std::logic_error("log_sign_epsilon: no consistent sign");
    }();
    return eps;
}

WitnessPolynomial witness_polynomial(unsigned n, std::uint64_t p) {
    if (n % p == 0)
        throw std::invalid_argument("witness_polynomial: p divides n (count is zero, polynomial undefined)");
    WitnessPolynomial w;
    w.p = p;
    w.n = n;
    for (const auto& [part, coeff] : log_coefficient_table(n).terms) {
        if (part.parts.size() == 1) continue;  // drop the {n} term
        mpz_class num = coeff.get_num();
        mpz_class den = coeff.get_den();
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class num_mod = ((num % pz) + pz) % pz;
        mpz_class den_mod = ((den % pz) + pz) % pz;
        std::uint64_t r = num_mod.get_ui() * mod_pow(den_mod.get_ui(), p - 2, p) % p;
        if (r != 0) w.terms.emplace(part, r);
    }
    return w;
}

FieldElement witness_eval(const WitnessPolynomial& w, const FieldSpec& k, const std::vector<FieldElement>& a) {
    if (k.p() != w.p) throw std::invalid_argument("witness_eval: field characteristic mismatch");
    if (a.size() + 1 < w.n) throw std::invalid_argument("witness_eval: need n-1 arguments");
    FieldElement total = k.zero();
    for (const auto& [part, c] : w.terms) {
        FieldElement mono = k.one();
        for (unsigned v : part.parts) mono = k.mul(mono, a[v - 1]);
        total = k.add(total, k.scalar_mul(c, mono));
    }
    return total;
}

}  // namespace wildcount
