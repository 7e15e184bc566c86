#pragma once

#include "incgen/error.hpp"
#include "incgen/field.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace incgen {

/// A linear map on M_k(GF(q)) stored as its k^2 x k^2 matrix in the
/// matrix-unit basis. Units are flattened row-major, so the basis index of
/// E_{ab} (1-based a, b) is (a-1)k + (b-1); column j holds the coordinates of
/// the image of the j-th unit. The same flattening makes a k x k matrix and
/// its coordinate vector interchangeable.
struct LinMap {
    std::uint32_t k;
    FieldSpec field;
    std::vector<std::uint64_t> a; // k^2 x k^2, row-major

    static LinMap zero(const FieldSpec& f, std::uint32_t k) {
        return LinMap{k, f, std::vector<std::uint64_t>(static_cast<std::size_t>(k) * k * k * k, 0)};
    }

    static LinMap identity(const FieldSpec& f, std::uint32_t k) {
        LinMap m = zero(f, k);
        const std::size_t dim = static_cast<std::size_t>(k) * k;
        for (std::size_t i = 0; i < dim; ++i)
            m.a[i * dim + i] = f.one();
        return m;
    }

    std::size_t dim() const { return static_cast<std::size_t>(k) * k; }

    std::uint64_t& at(std::size_t row, std::size_t col) { return a[row * dim() + col]; }
    std::uint64_t at(std::size_t row, std::size_t col) const { return a[row * dim() + col]; }

    FqMat apply(const FqMat& x) const {
        const std::size_t d = dim();
        if (x.size() != d)
            throw Error("ShapeMismatch", "operand has wrong shape for this operator");
        FqMat y(d, 0);
        for (std::size_t r = 0; r < d; ++r) {
            std::uint64_t s = 0;
            for (std::size_t c = 0; c < d; ++c)
                s = field.add(s, field.mul(a[r * d + c], x[c]));
            y[r] = s;
        }
        return y;
    }
};

/// Writes a linear map as a sum of two-sided multiplications
/// X -> sum_i P_i X Q_i. One pair per nonzero coordinate of the map in the
/// epsilon basis: the coordinate c at (output unit E_{gd}, input unit E_{ab})
/// contributes (c E_{ga}, E_{bd}), since E_{ga} X E_{bd} picks the (a,b)
/// entry of X into position (g,d).
inline std::vector<std::pair<FqMat, FqMat>> sandwich_decompose(const LinMap& phi) {
    const std::uint32_t k = phi.k;
    const FieldSpec& f = phi.field;
    std::vector<std::pair<FqMat, FqMat>> pairs;
    for (std::uint32_t g = 1; g <= k; ++g)
        for (std::uint32_t d = 1; d <= k; ++d)
            for (std::uint32_t a = 1; a <= k; ++a)
                for (std::uint32_t b = 1; b <= k; ++b) {
                    std::uint64_t c = phi.at((g - 1) * static_cast<std::size_t>(k) + (d - 1),
                                             (a - 1) * static_cast<std::size_t>(k) + (b - 1));
                    if (c == 0)
                        continue;
                    pairs.emplace_back(fq_mat_unit(f, k, g, a, c), fq_mat_unit(f, k, b, d));
                }
    return pairs;
}

inline FqMat apply_sandwich(const FieldSpec& f, std::uint32_t k,
                            const std::vector<std::pair<FqMat, FqMat>>& pairs, const FqMat& x) {
    FqMat acc = fq_mat_zero(k);
    for (const auto& [p, q] : pairs)
        acc = fq_mat_add(f, acc, fq_mat_mul(f, k, fq_mat_mul(f, k, p, x), q));
    return acc;
}

/// Operators phi_1..phi_m with sum phi_i(v_i) = 0 and sum phi_i(w_i) != 0,
/// when no single scalar lambda gives w_i = lambda v_i for every i (this
/// includes v = 0 with w != 0). Empty optional otherwise.
///
/// Construction: a functional f on the m-fold direct sum with f(v) = 0 and
/// f(w) = 1 exists exactly when w lies outside the span of v; then
/// phi_i(x) = f_i(x) * w_t for a coordinate t where w is nonzero.
inline std::optional<std::vector<LinMap>> separating_operators(const FieldSpec& f, std::uint32_t k,
                                                               const std::vector<FqMat>& v,
                                                               const std::vector<FqMat>& w) {
    if (v.empty() || v.size() != w.size())
        throw Error("ShapeMismatch", "need equally many v and w operands, at least one each");
    const std::size_t m = v.size();
    const std::size_t d = static_cast<std::size_t>(k) * k;
    std::vector<std::uint64_t> vf(m * d), wf(m * d);
    for (std::size_t i = 0; i < m; ++i) {
        if (v[i].size() != d || w[i].size() != d)
            throw Error("ShapeMismatch", "operand has wrong shape");
        std::copy(v[i].begin(), v[i].end(), vf.begin() + static_cast<std::ptrdiff_t>(i * d));
        std::copy(w[i].begin(), w[i].end(), wf.begin() + static_cast<std::ptrdiff_t>(i * d));
    }

    std::size_t vlead = m * d;
    for (std::size_t j = 0; j < m * d; ++j)
        if (vf[j] != 0) {
            vlead = j;
            break;
        }

    std::vector<std::uint64_t> func(m * d, 0);
    if (vlead == m * d) {
        // v = 0: proportional iff w = 0
        std::size_t wlead = m * d;
        for (std::size_t j = 0; j < m * d; ++j)
            if (wf[j] != 0) {
                wlead = j;
                break;
            }
        if (wlead == m * d)
            return std::nullopt;
        func[wlead] = f.inv(wf[wlead]);
    } else {
        std::uint64_t lambda = f.mul(wf[vlead], f.inv(vf[vlead]));
        std::size_t witness = m * d;
        for (std::size_t j = 0; j < m * d; ++j)
            if (wf[j] != f.mul(lambda, vf[j])) {
                witness = j;
                break;
            }
        if (witness == m * d)
            return std::nullopt; // w = lambda v
        // 2x2 minor at columns (vlead, witness) is invertible
        std::uint64_t det = f.sub(f.mul(vf[vlead], wf[witness]), f.mul(vf[witness], wf[vlead]));
        std::uint64_t dinv = f.inv(det);
        func[vlead] = f.mul(f.neg(vf[witness]), dinv);
        func[witness] = f.mul(vf[vlead], dinv);
    }

    // block of the direct sum where w is nonzero; w != 0 here since w = 0 is
    // proportional to anything
    std::size_t t = 0;
    while (t < m * d && wf[t] == 0)
        ++t;
    const std::size_t tblock = t / d;

    // phi_i(x) = f_i(x) * w_{tblock}, the rank-one map composed with the
    // block projection
    std::vector<LinMap> ops;
    ops.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        LinMap phi = LinMap::zero(f, k);
        for (std::size_t col = 0; col < d; ++col) {
            std::uint64_t fc = func[i * d + col];
            if (fc == 0)
                continue;
            for (std::size_t row = 0; row < d; ++row) {
                std::uint64_t wr = wf[tblock * d + row];
                if (wr != 0)
                    phi.at(row, col) = f.mul(fc, wr);
            }
        }
        ops.push_back(std::move(phi));
    }
    return ops;
}

} // namespace incgen
