#include "wildcount/ff.hpp"

#include <algorithm>
#include <utility>

namespace wildcount {

namespace {

using Poly = std::vector<coeff_t>;  // little-endian coefficients

int poly_deg(const Poly& f) {
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] != 0) return static_cast<int>(i);
    }
    return -1;  // zero polynomial
}

bool poly_is_zero(const Poly& f) {
    return std::all_of(f.begin(), f.end(), [](coeff_t c) { return c == 0; });
}

// Remainder of a modulo monic b of degree db, over F_p.
Poly poly_mod_monic(Poly a, const Poly& b, unsigned db, std::uint64_t p) {
    for (std::size_t i = a.size(); i-- > db;) {
        std::uint64_t c = a[i];
        if (c == 0) continue;
        a[i] = 0;
        for (unsigned j = 0; j < db; ++j) {
            a[i - db + j] =
                static_cast<coeff_t>((a[i - db + j] + (p - b[j]) % p * c) % p);
        }
    }
    a.resize(db);
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<coeff_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return r;
}

// Remainder of a modulo arbitrary nonzero b over F_p.
Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
    int db = poly_deg(b);
    std::uint64_t lead_inv = mod_pow(b[db], p - 2, p);
    for (int i = poly_deg(a); i >= db; i = poly_deg(a)) {
        std::uint64_t c = a[i] * lead_inv % p;
        for (int j = 0; j <= db; ++j) {
            a[i - db + j] = static_cast<coeff_t>(
                (a[i - db + j] + (p - b[j]) % p * c) % p);
        }
    }
    return a;
}

// Irreducibility by trial division against every monic polynomial of
// degree 1..deg(f)/2.
bool poly_irreducible(const Poly& f, unsigned deg, std::uint64_t p) {
    if (deg == 0) return false;
    for (unsigned d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            std::uint64_t t = idx;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = static_cast<coeff_t>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (poly_is_zero(poly_mod_monic(f, g, d, p))) return false;
        }
    }
    return true;
}

}  // namespace

FieldSpec::FieldSpec(std::uint64_t p, unsigned m) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::invalid_argument("FieldSpec: p must be prime");
    if (m < 1 || m > 16) throw std::invalid_argument("FieldSpec: degree must be in [1,16]");
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (count > (std::uint64_t(1) << 40))
            throw std::overflow_error("FieldSpec: modulus search space too large");
        count *= p;
    }
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly f(m + 1, 0);
        std::uint64_t t = idx;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = static_cast<coeff_t>(t % p);
            t /= p;
        }
        f[m] = 1;
        if (poly_irreducible(f, m, p)) {
            modulus_ = f;
            return;
        }
    }
    throw std::logic_error("FieldSpec: no irreducible found");  // unreachable
}

std::uint64_t FieldSpec::order() const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < m_; ++i) {
        if (r > (std::uint64_t(1) << 62) / p_) throw std::overflow_error("FieldSpec::order overflow");
        r *= p_;
    }
    return r;
}

FieldElement FieldSpec::zero() const { return FieldElement{std::vector<coeff_t>(m_, 0)}; }

FieldElement FieldSpec::one() const { return from_int(1); }

FieldElement FieldSpec::from_int(std::uint64_t c) const {
    FieldElement x = zero();
    x.coeffs[0] = static_cast<coeff_t>(c % p_);
    return x;
}

FieldElement FieldSpec::from_index(std::uint64_t idx) const {
    FieldElement x = zero();
    for (unsigned i = 0; i < m_; ++i) {
        x.coeffs[i] = static_cast<coeff_t>(idx % p_);
        idx /= p_;
    }
    return x;
}

std::uint64_t FieldSpec::to_index(const FieldElement& x) const {
    std::uint64_t idx = 0;
    for (unsigned i = m_; i-- > 0;) idx = idx * p_ + x.coeffs[i];
    return idx;
}

bool FieldSpec::is_zero(const FieldElement& x) const {
    return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](coeff_t c) { return c == 0; });
}

void FieldSpec::check_element(const FieldElement& x) const {
    if (x.coeffs.size() != m_) throw std::invalid_argument("FieldElement: wrong length");
    for (coeff_t c : x.coeffs) {
        if (c >= p_) throw std::invalid_argument("FieldElement: coefficient out of range");
    }
}

FieldElement FieldSpec::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i)
        r.coeffs[i] = static_cast<coeff_t>((a.coeffs[i] + std::uint64_t(b.coeffs[i])) % p_);
    return r;
}

FieldElement FieldSpec::sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i)
        r.coeffs[i] = static_cast<coeff_t>((a.coeffs[i] + p_ - std::uint64_t(b.coeffs[i])) % p_);
    return r;
}

FieldElement FieldSpec::neg(const FieldElement& a) const { return sub(zero(), a); }

FieldElement FieldSpec::mul(const FieldElement& a, const FieldElement& b) const {
    Poly prod = poly_mul(a.coeffs, b.coeffs, p_);
    Poly red = poly_mod_monic(std::move(prod), modulus_, m_, p_);
    red.resize(m_, 0);
    return FieldElement{std::move(red)};
}

FieldElement FieldSpec::scalar_mul(std::uint64_t c, const FieldElement& a) const {
    c %= p_;
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i) r.coeffs[i] = static_cast<coeff_t>(a.coeffs[i] * c % p_);
    return r;
}

FieldElement FieldSpec::pow(const FieldElement& a, std::uint64_t e) const {
    FieldElement acc = one();
    FieldElement base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FieldElement FieldSpec::inv(const FieldElement& a) const {
    if (is_zero(a)) throw std::invalid_argument("FieldSpec::inv of zero");
    // Extended Euclid in F_p[x]: maintain s with s*a = r mod modulus.
    Poly r0 = modulus_, r1 = a.coeffs;
    Poly s0(m_ + 1, 0), s1(m_ + 1, 0);
    s1[0] = 1;
    while (true) {
        int d1 = poly_deg(r1);
        if (d1 <= 0) break;
        Poly r2 = poly_rem(r0, r1, p_);
        // reconstruct the quotient action on s: s2 = s0 - q*s1 with
        // q = (r0 - r2) / r1; cheaper to redo the division tracking s.
        Poly q(r0.size(), 0);
        {
            Poly a2 = r0;
            std::uint64_t lead_inv = mod_pow(r1[d1], p_ - 2, p_);
            for (int i = poly_deg(a2); i >= d1; i = poly_deg(a2)) {
                std::uint64_t c = a2[i] * lead_inv % p_;
                q[i - d1] = static_cast<coeff_t>(c);
                for (int j = 0; j <= d1; ++j) {
                    a2[i - d1 + j] = static_cast<coeff_t>(
                        (a2[i - d1 + j] + (p_ - r1[j]) % p_ * c) % p_);
                }
            }
        }
        Poly qs = poly_mul(q, s1, p_);
        Poly s2(std::max(s0.size(), qs.size()), 0);
        for (std::size_t i = 0; i < s2.size(); ++i) {
            std::uint64_t v = (i < s0.size() ? s0[i] : 0) + p_ - (i < qs.size() ? qs[i] % p_ : 0);
            s2[i] = static_cast<coeff_t>(v % p_);
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant c; inverse is s1 / c reduced mod modulus.
    if (poly_deg(r1) != 0) throw std::logic_error("FieldSpec::inv: gcd not constant");
    std::uint64_t cinv = mod_pow(r1[0], p_ - 2, p_);
    Poly red = poly_mod_monic(std::move(s1), modulus_, m_, p_);
    red.resize(m_, 0);
    FieldElement out{std::move(red)};
    return scalar_mul(cinv, out);
}

FieldElement FieldSpec::frobenius_power(const FieldElement& x, unsigned k) const {
    if (m_ == 1) return x;  // Frobenius fixes the prime field
    FieldElement r = x;
    for (unsigned i = 0; i < k % m_; ++i) r = pow(r, p_);
    return r;
}

FieldElement FieldSpec::relative_trace(const FieldElement& x, unsigned fprime, unsigned f) const {
    if (fprime == 0 || f == 0 || fprime * f != m_)
        throw std::invalid_argument("relative_trace: need fprime * f = m");
    FieldElement acc = zero();
    FieldElement t = x;
    for (unsigned i = 0; i < f; ++i) {
        acc = add(acc, t);
        t = frobenius_power(t, fprime);
    }
    return acc;
}

FieldTable::FieldTable(FieldSpec spec) : spec_(std::move(spec)) {
    std::uint64_t n = spec_.order();
    if (n > max_order) throw resource_error("FieldTable: field order exceeds table cap (2048)");
    n_ = static_cast<std::uint32_t>(n);
    elems_.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) elems_.push_back(spec_.from_index(i));
    add_.resize(std::size_t(n_) * n_);
    mul_.resize(std::size_t(n_) * n_);
    neg_.resize(n_);
    inv_.resize(n_, 0);
    frob_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        neg_[i] = static_cast<std::uint16_t>(spec_.to_index(spec_.neg(elems_[i])));
        frob_[i] = static_cast<std::uint16_t>(spec_.to_index(spec_.pow(elems_[i], spec_.p())));
        for (std::uint32_t j = 0; j <= i; ++j) {
            auto s = static_cast<std::uint16_t>(spec_.to_index(spec_.add(elems_[i], elems_[j])));
            auto m = static_cast<std::uint16_t>(spec_.to_index(spec_.mul(elems_[i], elems_[j])));
            add_[std::size_t(i) * n_ + j] = add_[std::size_t(j) * n_ + i] = s;
            mul_[std::size_t(i) * n_ + j] = mul_[std::size_t(j) * n_ + i] = m;
        }
    }
    for (std::uint32_t i = 1; i < n_; ++i) {
        if (inv_[i] != 0) continue;
        for (std::uint32_t j = 1; j < n_; ++j) {
            if (mul(i, j) == 1) {
                inv_[i] = static_cast<std::uint16_t>(j);
                inv_[j] = static_cast<std::uint16_t>(i);
                break;
            }
        }
    }
}

std::uint32_t FieldTable::inv(std::uint32_t a) const {
    if (a == 0) throw std::invalid_argument("FieldTable::inv of zero");
    return inv_[a];
}

std::uint32_t FieldTable::frob_q(std::uint32_t a, unsigned fprime, unsigned k) const {
    std::uint32_t r = a;
    for (unsigned i = 0; i < fprime * k; ++i) r = frob_[r];
    return r;
}

std::uint32_t FieldTable::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t acc = 1, base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

}  // namespace wildcount
