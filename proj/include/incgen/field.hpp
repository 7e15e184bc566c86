#pragma once

#include "incgen/error.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace incgen {

namespace detail {

inline bool is_prime_u64(std::uint64_t p) {
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

} // namespace detail

/// GF(p^e) with a deterministic monic irreducible modulus: the candidate whose
/// non-leading coefficient vector, read as a base-p integer with the constant
/// term least significant, is smallest. Elements are encoded as integers in
/// [0, p^e): the value sum c_i p^i stands for the residue polynomial with
/// coefficients (c_0, ..., c_{e-1}).
///
/// Desk-scale bounds: p <= 97 prime, 1 <= e <= 4; both checked exhaustively.
class FieldSpec {
public:
    static FieldSpec make(std::uint32_t p, std::uint32_t e = 1) {
        return FieldSpec(std::make_shared<const Impl>(p, e));
    }

    /// Factors q as p^e and builds GF(q). Rejects non prime powers.
    static FieldSpec from_order(std::uint64_t q) {
        if (q < 2)
            throw Error("InvalidFieldOrder", "field order must be at least 2, got " + std::to_string(q));
        std::uint64_t p = 2;
        while (q % p != 0)
            ++p;
        std::uint32_t e = 0;
        std::uint64_t rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest != 1)
            throw Error("InvalidFieldOrder", std::to_string(q) + " is not a prime power");
        return make(static_cast<std::uint32_t>(p), e);
    }

    std::uint32_t characteristic() const { return impl_->p; }
    std::uint32_t degree() const { return impl_->e; }
    std::uint64_t order() const { return impl_->q; }

    /// Modulus coefficients, low degree first, length e+1, monic. For e = 1
    /// this is (0, 1), i.e. the polynomial x.
    const std::vector<std::uint32_t>& modulus() const { return impl_->mod; }

    std::uint64_t zero() const { return 0; }
    std::uint64_t one() const { return 1; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (impl_->e == 1)
            return (a + b) % impl_->p;
        std::uint64_t r = 0, shift = 1;
        for (std::uint32_t i = 0; i < impl_->e; ++i) {
            r += ((a % impl_->p + b % impl_->p) % impl_->p) * shift;
            a /= impl_->p;
            b /= impl_->p;
            shift *= impl_->p;
        }
        return r;
    }

    std::uint64_t neg(std::uint64_t a) const {
        if (impl_->e == 1)
            return (impl_->p - a % impl_->p) % impl_->p;
        std::uint64_t r = 0, shift = 1;
        for (std::uint32_t i = 0; i < impl_->e; ++i) {
            r += ((impl_->p - a % impl_->p) % impl_->p) * shift;
            a /= impl_->p;
            shift *= impl_->p;
        }
        return r;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        const std::uint32_t p = impl_->p, e = impl_->e;
        if (e == 1)
            return (a * b) % p;
        if (a == 0 || b == 0)
            return 0;
        std::uint32_t da[4], db[4];
        std::uint64_t prod[7] = {0, 0, 0, 0, 0, 0, 0};
        for (std::uint32_t i = 0; i < e; ++i) {
            da[i] = static_cast<std::uint32_t>(a % p);
            db[i] = static_cast<std::uint32_t>(b % p);
            a /= p;
            b /= p;
        }
        for (std::uint32_t i = 0; i < e; ++i)
            for (std::uint32_t j = 0; j < e; ++j)
                prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
        // fold x^{e+t} down using the precomputed reductions of the modulus
        for (std::uint32_t t = 2 * e - 2; t >= e; --t) {
            std::uint64_t coef = prod[t] % p;
            prod[t] = 0;
            if (coef != 0) {
                const std::uint32_t* red = impl_->xpow.data() + static_cast<std::size_t>(t - e) * e;
                for (std::uint32_t i = 0; i < e; ++i)
                    prod[i] += coef * red[i];
            }
            if (t == e)
                break;
        }
        std::uint64_t r = 0, shift = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            r += (prod[i] % p) * shift;
            shift *= p;
        }
        return r;
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t n) const {
        std::uint64_t r = 1;
        while (n != 0) {
            if (n & 1)
                r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0)
            throw Error("DivisionByZero", "inverse of zero in GF(" + std::to_string(impl_->q) + ")");
        return pow(a, impl_->q - 2);
    }

    /// Encodes a coefficient list (low degree first, at most e entries);
    /// coefficients are reduced mod p, so any integers are accepted.
    std::uint64_t from_coeffs(const std::vector<long long>& coeffs) const {
        if (coeffs.size() > impl_->e)
            throw Error("InvalidElement", "coefficient list longer than field degree " +
                                              std::to_string(impl_->e));
        std::uint64_t r = 0, shift = 1;
        for (std::uint32_t i = 0; i < impl_->e; ++i) {
            long long c = i < coeffs.size() ? coeffs[i] : 0;
            long long m = c % static_cast<long long>(impl_->p);
            if (m < 0)
                m += impl_->p;
            r += static_cast<std::uint64_t>(m) * shift;
            shift *= impl_->p;
        }
        return r;
    }

    std::vector<std::uint32_t> to_coeffs(std::uint64_t a) const {
        std::vector<std::uint32_t> c(impl_->e);
        for (std::uint32_t i = 0; i < impl_->e; ++i) {
            c[i] = static_cast<std::uint32_t>(a % impl_->p);
            a /= impl_->p;
        }
        return c;
    }

    bool operator==(const FieldSpec& o) const {
        return impl_ == o.impl_ || (impl_->p == o.impl_->p && impl_->e == o.impl_->e);
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

private:
    struct Impl {
        std::uint32_t p, e;
        std::uint64_t q;
        std::vector<std::uint32_t> mod;  // e+1 coefficients, low first, monic
        std::vector<std::uint32_t> xpow; // x^{e+t} mod modulus for t = 0..e-2, e digits each

        Impl(std::uint32_t p_, std::uint32_t e_) : p(p_), e(e_) {
            if (!detail::is_prime_u64(p))
                throw Error("NotPrime", "NotPrime(" + std::to_string(p) + ")");
            if (p > 97)
                throw Error("UnsupportedFieldSize", "characteristic " + std::to_string(p) + " exceeds 97");
            if (e < 1 || e > 4)
                throw Error("UnsupportedFieldSize", "extension degree " + std::to_string(e) + " outside 1..4");
            q = 1;
            for (std::uint32_t i = 0; i < e; ++i)
                q *= p;
            if (e == 1) {
                mod = {0, 1};
                return;
            }
            mod = find_modulus(p, e);
            // reductions of x^{e+t}: start with x^e = -(low part of modulus)
            std::vector<std::uint32_t> cur(e);
            for (std::uint32_t i = 0; i < e; ++i)
                cur[i] = (p - mod[i]) % p;
            xpow.assign(static_cast<std::size_t>(e - 1) * e, 0);
            for (std::uint32_t t = 0; t + 1 < e; ++t) {
                for (std::uint32_t i = 0; i < e; ++i)
                    xpow[static_cast<std::size_t>(t) * e + i] = cur[i];
                // multiply cur by x and reduce once more
                std::uint32_t top = cur[e - 1];
                for (std::uint32_t i = e - 1; i >= 1; --i)
                    cur[i] = cur[i - 1];
                cur[0] = 0;
                if (top != 0)
                    for (std::uint32_t i = 0; i < e; ++i)
                        cur[i] = (cur[i] + top * ((p - mod[i]) % p)) % p;
            }
        }

        // Smallest monic irreducible of degree e, ordered by the non-leading
        // coefficients read as a base-p number (constant term = lowest digit).
        static std::vector<std::uint32_t> find_modulus(std::uint32_t p, std::uint32_t e) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < e; ++i)
                count *= p;
            for (std::uint64_t n = 0; n < count; ++n) {
                std::vector<std::uint32_t> poly(e + 1, 0);
                std::uint64_t v = n;
                for (std::uint32_t i = 0; i < e; ++i) {
                    poly[i] = static_cast<std::uint32_t>(v % p);
                    v /= p;
                }
                poly[e] = 1;
                if (is_irreducible(poly, p))
                    return poly;
            }
            throw Error("InternalError", "no irreducible modulus found"); // unreachable
        }

        static bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
            const std::uint32_t e = static_cast<std::uint32_t>(poly.size()) - 1;
            // linear factors: root search (settles e = 2, 3 entirely)
            for (std::uint32_t r = 0; r < p; ++r) {
                std::uint64_t val = 0;
                for (std::uint32_t i = e + 1; i-- > 0;)
                    val = (val * r + poly[i]) % p;
                if (val == 0)
                    return false;
            }
            if (e <= 3)
                return true;
            // e = 4: trial division by every monic quadratic
            for (std::uint32_t c1 = 0; c1 < p; ++c1)
                for (std::uint32_t c0 = 0; c0 < p; ++c0)
                    if (divides_quadratic(poly, p, c1, c0))
                        return false;
            return true;
        }

        // remainder of poly (degree 4) modulo x^2 + c1 x + c0 is zero?
        static bool divides_quadratic(const std::vector<std::uint32_t>& poly, std::uint32_t p,
                                      std::uint32_t c1, std::uint32_t c0) {
            std::vector<std::uint64_t> r(poly.begin(), poly.end());
            for (std::uint32_t d = static_cast<std::uint32_t>(r.size()) - 1; d >= 2; --d) {
                std::uint64_t lead = r[d] % p;
                if (lead != 0) {
                    r[d] = 0;
                    r[d - 1] = (r[d - 1] + lead * (p - c1)) % p;
                    r[d - 2] = (r[d - 2] + lead * (p - c0)) % p;
                }
            }
            return r[0] % p == 0 && r[1] % p == 0;
        }
    };

    explicit FieldSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const Impl> impl_;
};

/// k x k matrices over a field as row-major vectors of encoded scalars.
using FqMat = std::vector<std::uint64_t>;

inline FqMat fq_mat_zero(std::uint32_t k) { return FqMat(static_cast<std::size_t>(k) * k, 0); }

inline FqMat fq_mat_identity(const FieldSpec& f, std::uint32_t k) {
    FqMat m = fq_mat_zero(k);
    for (std::uint32_t i = 0; i < k; ++i)
        m[static_cast<std::size_t>(i) * k + i] = f.one();
    return m;
}

/// Matrix unit E_{rc} (1-based indices) scaled by an optional field value.
inline FqMat fq_mat_unit(const FieldSpec& f, std::uint32_t k, std::uint32_t r, std::uint32_t c,
                         std::uint64_t value = 1) {
    FqMat m = fq_mat_zero(k);
    (void)f;
    m[static_cast<std::size_t>(r - 1) * k + (c - 1)] = value;
    return m;
}

inline FqMat fq_mat_add(const FieldSpec& f, const FqMat& a, const FqMat& b) {
    FqMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = f.add(a[i], b[i]);
    return r;
}

inline FqMat fq_mat_sub(const FieldSpec& f, const FqMat& a, const FqMat& b) {
    FqMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = f.sub(a[i], b[i]);
    return r;
}

inline FqMat fq_mat_scale(const FieldSpec& f, std::uint64_t lambda, const FqMat& a) {
    FqMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = f.mul(lambda, a[i]);
    return r;
}

inline void fq_mat_mul_span(const FieldSpec& f, std::uint32_t k, const std::uint64_t* a,
                            const std::uint64_t* b, std::uint64_t* out) {
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) {
            std::uint64_t s = 0;
            for (std::uint32_t t = 0; t < k; ++t)
                s = f.add(s, f.mul(a[i * k + t], b[t * k + j]));
            out[i * k + j] = s;
        }
}

inline FqMat fq_mat_mul(const FieldSpec& f, std::uint32_t k, const FqMat& a, const FqMat& b) {
    FqMat r(static_cast<std::size_t>(k) * k);
    fq_mat_mul_span(f, k, a.data(), b.data(), r.data());
    return r;
}

} // namespace incgen
