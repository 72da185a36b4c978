#include "wildcount/galois_ring.hpp"

#include <algorithm>
#include <set>

#include "wildcount/group_enum.hpp"

namespace wildcount {

namespace {

// Polynomial product mod 8 reduced by a monic modulus mod 8.
std::vector<std::uint32_t> polymul_mod(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b,
                                       const std::vector<std::uint32_t>& modulus, unsigned d) {
    std::vector<std::uint32_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % 8;
    for (std::size_t i = r.size(); i-- > d;) {
        std::uint32_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (unsigned j = 0; j < d; ++j) r[i - d + j] = (r[i - d + j] + (8 - modulus[j]) * c) % 8;
    }
    r.resize(d);
    return r;
}

}  // namespace

GaloisRing::GaloisRing(unsigned d) : d_(d) {
    if (d < 1 || d > 4) throw std::invalid_argument("GaloisRing: degree must be in [1,4]");
    size_ = 1;
    for (unsigned i = 0; i < d; ++i) size_ *= 8;

    FieldSpec f2(2, d);
    modulus_.assign(f2.modulus().begin(), f2.modulus().end());

    // Frobenius image by Newton refinement of the root x^2 mod 2.
    std::vector<std::uint32_t> x2(d, 0);
    if (d == 1) {
        x2[0] = 0;  // sigma is the identity; x represents 0 here
    } else {
        std::vector<std::uint32_t> x(2, 0);
        x[1] = 1;
        x2 = polymul_mod(x, x, modulus_, d);
        for (auto& c : x2) c %= 2;
    }

    auto add_vec = [&](std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) {
        for (unsigned i = 0; i < d_; ++i) a[i] = (a[i] + b[i]) % 8;
        return a;
    };
    auto neg_vec = [&](std::vector<std::uint32_t> a) {
        for (auto& v : a) v = (8 - v) % 8;
        return a;
    };
    auto eval_at = [&](const std::vector<std::uint32_t>& poly, const std::vector<std::uint32_t>& at) {
        // Horner over the ring
        std::vector<std::uint32_t> acc(d_, 0);
        for (std::size_t i = poly.size(); i-- > 0;) {
            acc = polymul_mod(acc, at, modulus_, d_);
            acc[0] = (acc[0] + poly[i]) % 8;
        }
        return acc;
    };
    auto inv_unit_vec = [&](const std::vector<std::uint32_t>& u) {
        // Newton lift of the mod-2 inverse: v <- v(2 - uv).
        FieldElement ubar{std::vector<coeff_t>(d_)};
        for (unsigned i = 0; i < d_; ++i) ubar.coeffs[i] = u[i] % 2;
        FieldElement vbar = f2.inv(ubar);
        std::vector<std::uint32_t> v(d_);
        for (unsigned i = 0; i < d_; ++i) v[i] = vbar.coeffs[i];
        for (int step = 0; step < 2; ++step) {
            std::vector<std::uint32_t> uv = polymul_mod(u, v, modulus_, d_);
            std::vector<std::uint32_t> two_minus(d_, 0);
            two_minus[0] = 2;
            two_minus = add_vec(two_minus, neg_vec(uv));
            v = polymul_mod(v, two_minus, modulus_, d_);
        }
        return v;
    };

    std::vector<std::uint32_t> mod_deriv(d_, 0);
    for (unsigned i = 1; i <= d_; ++i) mod_deriv[i - 1] = (modulus_[i] * i) % 8;

    std::vector<std::uint32_t> y = x2;
    for (int step = 0; step < 2; ++step) {
        std::vector<std::uint32_t> fy = eval_at(modulus_, y);
        std::vector<std::uint32_t> dfy = eval_at(mod_deriv, y);
        std::vector<std::uint32_t> corr = polymul_mod(fy, inv_unit_vec(dfy), modulus_, d_);
        y = add_vec(y, neg_vec(corr));
    }
    if (eval_at(modulus_, y) != std::vector<std::uint32_t>(d_, 0))
        throw std::logic_error("GaloisRing: Hensel lift failed");
    frob_image_ = from_digits(y);

    // sigma acts by substituting the lifted root for x.
    sigma_tab_.resize(size_);
    for (std::uint32_t a = 0; a < size_; ++a) {
        std::vector<std::uint32_t> da = digits(a);
        sigma_tab_[a] = from_digits(eval_at(da, y));
    }
    // sigma^d must be the identity on the generator.
    std::uint32_t xi = 0;
    if (d_ >= 2) {
        std::vector<std::uint32_t> xv(d_, 0);
        xv[1] = 1;
        xi = from_digits(xv);
    }
    std::uint32_t cur = xi;
    for (unsigned i = 0; i < d_; ++i) cur = sigma_tab_[cur];
    if (cur != xi) throw std::logic_error("GaloisRing: Frobenius order check failed");

    for (std::uint32_t a = 0; a < size_; ++a)
        if (is_unit(a)) units_.push_back(a);
}

std::vector<std::uint32_t> GaloisRing::digits(std::uint32_t a) const {
    std::vector<std::uint32_t> v(d_);
    for (unsigned i = 0; i < d_; ++i) {
        v[i] = a % 8;
        a /= 8;
    }
    return v;
}

std::uint32_t GaloisRing::from_digits(const std::vector<std::uint32_t>& v) const {
    std::uint32_t a = 0;
    for (unsigned i = d_; i-- > 0;) a = a * 8 + (v[i] % 8);
    return a;
}

std::uint32_t GaloisRing::eval_poly(const std::vector<std::uint32_t>& coeffs, std::uint32_t at) const {
    std::uint32_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = add(mul(acc, at), coeffs[i] % 8);
    return acc;
}

std::uint32_t GaloisRing::add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, mul = 1;
    for (unsigned i = 0; i < d_; ++i) {
        out += (a % 8 + b % 8) % 8 * mul;
        a /= 8;
        b /= 8;
        mul *= 8;
    }
    return out;
}

std::uint32_t GaloisRing::sub(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, mul = 1;
    for (unsigned i = 0; i < d_; ++i) {
        out += (a % 8 + 8 - b % 8) % 8 * mul;
        a /= 8;
        b /= 8;
        mul *= 8;
    }
    return out;
}

std::uint32_t GaloisRing::mul(std::uint32_t a, std::uint32_t b) const {
    return from_digits(polymul_mod(digits(a), digits(b), modulus_, d_));
}

bool GaloisRing::is_unit(std::uint32_t a) const {
    for (unsigned i = 0; i < d_; ++i) {
        if (a % 8 % 2) return true;
        a /= 8;
    }
    return false;
}

std::uint32_t GaloisRing::unit_inv(std::uint32_t a) const {
    if (!is_unit(a)) throw std::invalid_argument("GaloisRing::unit_inv: not a unit");
    // v <- v(2 - av), starting from the mod-2 inverse.
    FieldSpec f2(2, d_);
    std::vector<std::uint32_t> da = digits(a);
    FieldElement abar{std::vector<coeff_t>(d_)};
    for (unsigned i = 0; i < d_; ++i) abar.coeffs[i] = da[i] % 2;
    FieldElement vbar = f2.inv(abar);
    std::uint32_t v = 0;
    for (unsigned i = d_; i-- > 0;) v = v * 8 + vbar.coeffs[i];
    for (int step = 0; step < 2; ++step) v = mul(v, sub(from_int(2), mul(a, v)));
    if (mul(a, v) != one()) throw std::logic_error("GaloisRing::unit_inv: lift failed");
    return v;
}

std::uint32_t GaloisRing::sigma(std::uint32_t a, unsigned k) const {
    std::uint32_t cur = a;
    for (unsigned i = 0; i < k % d_; ++i) cur = sigma_tab_[cur];
    return cur;
}

std::uint32_t GaloisRing::reduce_mod4(std::uint32_t a) const {
    std::uint32_t out = 0, mul = 1;
    for (unsigned i = 0; i < d_; ++i) {
        out += (a % 8 % 4) * mul;
        a /= 8;
        mul *= 4;
    }
    return out;
}

std::uint32_t GaloisRing::reduce_mod2(std::uint32_t a) const {
    std::uint32_t out = 0, mul = 1;
    for (unsigned i = 0; i < d_; ++i) {
        out += (a % 8 % 2) * mul;
        a /= 8;
        mul *= 2;
    }
    return out;
}

SquareClassReport square_class_check(const GaloisRing& R) {
    const unsigned d = R.degree();
    SquareClassReport rep;
    rep.degree = d;

    std::uint32_t four = R.from_int(4);
    std::uint32_t two = R.from_int(2);

    // Enumerate z over the ring by index; 1 + 2z covers 1 + 2R.
    std::set<std::uint32_t> squares, targets;
    for (std::uint32_t z = 0; z < R.size(); ++z) {
        std::uint32_t u = R.add(R.one(), R.mul(two, z));
        squares.insert(R.mul(u, u));
        std::uint32_t w = R.add(R.mul(z, z), z);  // z^2 + z
        targets.insert(R.add(R.one(), R.mul(four, w)));
    }
    rep.squares_match = (squares == targets);

    // Induced subgroup of (1+4R)/(1+8R) = k_0^+: the mod-2 Artin-Schreier
    // image {z^2 + z}.
    FieldSpec k0(2, d);
    std::set<std::uint64_t> image;
    std::vector<std::vector<coeff_t>> rows;
    for (std::uint64_t zi = 0; zi < k0.order(); ++zi) {
        FieldElement z = k0.from_index(zi);
        FieldElement w = k0.add(k0.mul(z, z), z);
        if (image.insert(k0.to_index(w)).second && !k0.is_zero(w)) rows.push_back(w.coeffs);
    }
    Subspace h = rref_span(std::move(rows), 2);
    rep.image_index_two = (image.size() * 2 == k0.order()) && (h.dim() + 1 == d);
    rep.equals_trace_zero = (h == trace_zero_subspace(k0, 1, d));
    return rep;
}

UnramifiedOracleReport unramified_oracle_report(unsigned nK, unsigned r,
                                                std::uint64_t subgroup_cap, unsigned d_cap) {
    if (nK < 1 || r < 1) throw std::invalid_argument("unramified_oracle_report: nK, r >= 1");
    unsigned d = nK * r;
    if (d > d_cap) throw resource_error("unramified_oracle_report: degree cap exceeded");
    GaloisRing R(d);

    const auto& units = R.units();
    const std::uint32_t U = static_cast<std::uint32_t>(units.size());
    std::vector<std::uint32_t> pos(R.size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < U; ++i) pos[units[i]] = i;

    std::vector<std::uint16_t> mul_tab(std::size_t(U) * U);
    for (std::uint32_t i = 0; i < U; ++i)
        for (std::uint32_t j = 0; j <= i; ++j) {
            auto w = static_cast<std::uint16_t>(pos[R.mul(units[i], units[j])]);
            mul_tab[std::size_t(i) * U + j] = mul_tab[std::size_t(j) * U + i] = w;
        }
    auto mul = [&](std::uint32_t i, std::uint32_t j) -> std::uint32_t {
        return mul_tab[std::size_t(i) * U + j];
    };

    std::vector<std::uint32_t> sig(U), invpos(U);
    for (std::uint32_t i = 0; i < U; ++i) {
        sig[i] = pos[R.sigma(units[i], nK)];
        invpos[i] = pos[R.unit_inv(units[i])];
    }
    auto orbit = [&](std::uint32_t i) {
        std::vector<std::uint32_t> orb;
        std::uint32_t cur = i;
        do {
            orb.push_back(cur);
            cur = sig[cur];
        } while (cur != i);
        return orb;
    };

    // Distinct mod-4 keys over the whole unit group, for the surjectivity
    // test.
    std::set<std::uint32_t> all_mod4;
    for (std::uint32_t u : units) all_mod4.insert(R.reduce_mod4(u));

    auto subs = enumerate_subgroups(U, pos[R.one()], mul, orbit, subgroup_cap);

    UnramifiedOracleReport out;
    for (const auto& elems : subs) {
        if (elems.size() == U) continue;  // proper only
        std::set<std::uint32_t> mod4;
        for (std::uint32_t i : elems) mod4.insert(R.reduce_mod4(units[i]));
        if (mod4.size() != all_mod4.size()) continue;

        std::vector<char> member(U, 0);
        for (std::uint32_t i : elems) member[i] = 1;
        std::uint64_t fixed_elems = 0;
        for (std::uint32_t i = 0; i < U; ++i)
            if (member[mul(sig[i], invpos[i])]) ++fixed_elems;
        if (fixed_elems % elems.size() != 0)
            throw std::logic_error("unramified_oracle_report: fixed elements not coset-uniform");
        std::uint64_t fixed = fixed_elems / elems.size();

        // Induced subgroup of (1+4R)/(1+8R): elements congruent to 1 mod 4.
        std::vector<std::vector<coeff_t>> rows;
        std::uint64_t hcount = 0;
        for (std::uint32_t i : elems) {
            std::uint32_t u = units[i];
            if (R.reduce_mod4(u) == R.reduce_mod4(R.one())) {
                ++hcount;
                // u = 1 + 4w with w determined mod 2; recover w digitwise.
                std::vector<coeff_t> v(d, 0);
                std::uint32_t t = R.sub(u, R.one());
                for (unsigned di = 0; di < d; ++di) {
                    v[di] = static_cast<coeff_t>((t % 8) / 4 % 2);
                    t /= 8;
                }
                bool nonzero = std::any_of(v.begin(), v.end(), [](coeff_t c) { return c != 0; });
                if (nonzero) rows.push_back(std::move(v));
            }
        }
        Subspace h = rref_span(std::move(rows), 2);
        if (subspace_size(h, 2) != hcount)
            throw std::logic_error("unramified_oracle_report: kernel fiber not a subspace");

        out.subgroups.push_back({elems.size(), h.dim(), fixed});
        out.total += static_cast<unsigned long>(fixed);
    }
    return out;
}

mpz_class unramified_oracle_count(unsigned nK, unsigned r, std::uint64_t subgroup_cap,
                                  unsigned d_cap) {
    return unramified_oracle_report(nK, r, subgroup_cap, d_cap).total;
}

}  // namespace wildcount
