#pragma once

#include "incgen/bigint.hpp"
#include "incgen/error.hpp"
#include "incgen/poset.hpp"
#include "incgen/ring.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace incgen {

/// Matrix of A_n(<=, R): one ring element per comparable pair (i,j); entries
/// with i and j incomparable are structurally zero. Storage follows
/// Poset::pairs() with BaseRing::words() scalars per entry.
class IncMatrix {
public:
    IncMatrix(Poset poset, BaseRing ring)
        : poset_(std::move(poset)), ring_(std::move(ring)),
          data_(static_cast<std::size_t>(poset_.rho()) * ring_.words(), 0) {}

    static IncMatrix scalar(const Poset& poset, const RingElem& r) {
        IncMatrix m(poset, r.ring());
        for (int i = 1; i <= poset.size(); ++i)
            m.set(i, i, r);
        return m;
    }

    static IncMatrix identity(const Poset& poset, const BaseRing& ring) {
        return scalar(poset, ring.one());
    }

    /// E_ij (throws when i and j are incomparable).
    static IncMatrix unit(const Poset& poset, const BaseRing& ring, int i, int j) {
        IncMatrix m(poset, ring);
        m.set(i, j, ring.one());
        return m;
    }

    static IncMatrix unit(const Poset& poset, int i, int j, const RingElem& v) {
        IncMatrix m(poset, v.ring());
        m.set(i, j, v);
        return m;
    }

    const Poset& poset() const { return poset_; }
    const BaseRing& ring() const { return ring_; }

    RingElem get(int i, int j) const {
        int s = poset_.pair_index(i, j);
        if (s < 0)
            return ring_.zero();
        const std::size_t w = ring_.words();
        return RingElem(ring_, std::vector<std::uint64_t>(data_.begin() + static_cast<std::ptrdiff_t>(s * w),
                                                          data_.begin() + static_cast<std::ptrdiff_t>((s + 1) * w)));
    }

    IncMatrix& set(int i, int j, const RingElem& v) {
        if (v.ring() != ring_)
            throw Error("RingMismatch", "entry belongs to a different ring");
        int s = poset_.pair_index(i, j);
        if (s < 0) {
            if (!v.is_zero())
                throw Error("OffPatternEntry", "OffPatternEntry(" + std::to_string(i) + "," +
                                                   std::to_string(j) + "): pair is incomparable");
            return *this;
        }
        const std::size_t w = ring_.words();
        std::copy(v.data().begin(), v.data().end(), data_.begin() + static_cast<std::ptrdiff_t>(s * w));
        return *this;
    }

    bool is_zero() const {
        for (auto x : data_)
            if (x != 0)
                return false;
        return true;
    }

    const std::vector<std::uint64_t>& raw() const { return data_; }
    std::vector<std::uint64_t>& raw() { return data_; }

    bool operator==(const IncMatrix& o) const {
        return poset_ == o.poset_ && ring_ == o.ring_ && data_ == o.data_;
    }
    bool operator!=(const IncMatrix& o) const { return !(*this == o); }

    IncMatrix operator+(const IncMatrix& o) const {
        require_compatible(o);
        IncMatrix r(poset_, ring_);
        const std::size_t w = ring_.words();
        for (int s = 0; s < poset_.rho(); ++s)
            ring_.add_raw(data_.data() + s * w, o.data_.data() + s * w, r.data_.data() + s * w);
        return r;
    }

    IncMatrix operator-(const IncMatrix& o) const {
        require_compatible(o);
        IncMatrix r(poset_, ring_);
        const std::size_t w = ring_.words();
        for (int s = 0; s < poset_.rho(); ++s)
            ring_.sub_raw(data_.data() + s * w, o.data_.data() + s * w, r.data_.data() + s * w);
        return r;
    }

    IncMatrix operator-() const {
        IncMatrix r(poset_, ring_);
        const std::size_t w = ring_.words();
        for (int s = 0; s < poset_.rho(); ++s)
            ring_.neg_raw(data_.data() + s * w, r.data_.data() + s * w);
        return r;
    }

    /// Matrix product. Transitivity keeps the support inside the order: the
    /// (i,j) entry sums over the interval i <= k <= j, which is empty for
    /// incomparable (i,j).
    IncMatrix operator*(const IncMatrix& o) const {
        require_compatible(o);
        IncMatrix r(poset_, ring_);
        const std::size_t w = ring_.words();
        std::vector<std::uint64_t> term(w);
        const int n = poset_.size();
        for (int s = 0; s < poset_.rho(); ++s) {
            auto [i, j] = poset_.pairs()[static_cast<std::size_t>(s)];
            std::uint64_t* out = r.data_.data() + s * w;
            for (int k = 1; k <= n; ++k) {
                int a = poset_.pair_index(i, k);
                int b = poset_.pair_index(k, j);
                if (a < 0 || b < 0)
                    continue;
                ring_.mul_raw(data_.data() + static_cast<std::size_t>(a) * w,
                              o.data_.data() + static_cast<std::size_t>(b) * w, term.data());
                ring_.add_raw(out, term.data(), out);
            }
        }
        return r;
    }

private:
    void require_compatible(const IncMatrix& o) const {
        if (poset_ != o.poset_)
            throw Error("ShapeMismatch", "operands live over different posets");
        if (ring_ != o.ring_)
            throw Error("RingMismatch", "operands live over different rings");
    }

    Poset poset_;
    BaseRing ring_;
    std::vector<std::uint64_t> data_;
};

/// Additive generating set of the scalar matrices R.I_n: one matrix r.I_n per
/// additive generator r of the base ring.
inline std::vector<IncMatrix> scalar_matrices(const BaseRing& ring, const Poset& poset) {
    std::vector<IncMatrix> out;
    for (const auto& g : ring.additive_generators())
        out.push_back(IncMatrix::scalar(poset, g));
    return out;
}

/// Total number of incidence matrices |A| = |R|^rho.
inline Int incidence_matrix_count(const Poset& poset, const BaseRing& ring) {
    return int_pow(ring.cardinality(), static_cast<std::uint64_t>(poset.rho()));
}

/// Mixed-radix bijection [0, |R|^rho) -> A; support slot 0 is the least
/// significant digit. The caller guarantees the count fits the index type.
inline IncMatrix matrix_from_index(const Poset& poset, const BaseRing& ring, std::uint64_t idx) {
    IncMatrix m(poset, ring);
    const std::uint64_t card = ring.cardinality_u64();
    const std::size_t w = ring.words();
    for (int s = 0; s < poset.rho(); ++s) {
        RingElem e = ring.element_from_index(idx % card);
        std::copy(e.data().begin(), e.data().end(), m.raw().begin() + static_cast<std::ptrdiff_t>(s * w));
        idx /= card;
    }
    return m;
}

namespace detail {

// Row span over Z/p^e maintained in echelon form with pivot columns strictly
// increasing and pivots normalized to powers of p. When a pivot p^t with
// t > 0 appears, p^(e-t) times that row is fed back in, so reduction is a
// complete membership test and the span size is the product of the pivot
// orders p^(e-t). For e = 1 this degenerates to plain Gaussian elimination
// over GF(p).
struct ModSpan {
    std::uint32_t p = 2;
    std::uint32_t e = 1;
    std::uint64_t mod = 2;
    std::size_t len = 0;
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<std::size_t> pivot_col;
    std::vector<std::uint32_t> pivot_val; // p^t

    ModSpan() = default;
    ModSpan(std::uint32_t p_, std::uint32_t e_, std::uint64_t mod_, std::size_t len_)
        : p(p_), e(e_), mod(mod_), len(len_) {}

    std::uint32_t valuation(std::uint64_t x) const {
        std::uint32_t t = 0;
        while (x % p == 0) {
            x /= p;
            ++t;
        }
        return t;
    }

    std::uint64_t unit_inv(std::uint64_t u) const {
        // extended Euclid mod `mod`; u is a unit here
        std::int64_t a = static_cast<std::int64_t>(u), m = static_cast<std::int64_t>(mod);
        std::int64_t x0 = 1, x1 = 0, m0 = m;
        while (m != 0) {
            std::int64_t q = a / m;
            std::int64_t t = a - q * m;
            a = m;
            m = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        std::int64_t r = x0 % m0;
        if (r < 0)
            r += m0;
        return static_cast<std::uint64_t>(r);
    }

    // v -= coef * row  (mod)
    static void submul(std::vector<std::uint32_t>& v, std::uint64_t coef,
                       const std::vector<std::uint32_t>& row, std::uint64_t mod) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::uint64_t s = (coef * row[i]) % mod;
            v[i] = static_cast<std::uint32_t>((v[i] + mod - s) % mod);
        }
    }

    void scale(std::vector<std::uint32_t>& v, std::uint64_t coef) const {
        for (auto& x : v)
            x = static_cast<std::uint32_t>((coef * x) % mod);
    }

    /// Adjoins a vector. Returns true when the span grew; every physically
    /// added basis row is also copied into `added` when non-null.
    bool insert(std::vector<std::uint32_t> v, std::vector<std::vector<std::uint32_t>>* added = nullptr) {
        bool grew = false;
        std::vector<std::vector<std::uint32_t>> work;
        work.push_back(std::move(v));
        while (!work.empty()) {
            std::vector<std::uint32_t> cur = std::move(work.back());
            work.pop_back();
            std::size_t lead = 0;
            while (lead < len && cur[lead] == 0)
                ++lead;
            std::size_t r = 0;
            while (lead < len) {
                while (r < rows.size() && pivot_col[r] < lead)
                    ++r;
                if (r == rows.size() || pivot_col[r] > lead) {
                    // fresh pivot column: normalize the lead to p^s and place
                    std::uint32_t s = valuation(cur[lead]);
                    std::uint64_t ps = 1;
                    for (std::uint32_t i = 0; i < s; ++i)
                        ps *= p;
                    scale(cur, unit_inv(cur[lead] / ps));
                    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(r), cur);
                    pivot_col.insert(pivot_col.begin() + static_cast<std::ptrdiff_t>(r), lead);
                    pivot_val.insert(pivot_val.begin() + static_cast<std::ptrdiff_t>(r),
                                     static_cast<std::uint32_t>(ps));
                    grew = true;
                    if (added)
                        added->push_back(rows[r]);
                    if (s > 0) {
                        std::vector<std::uint32_t> sat = rows[r];
                        std::uint64_t mult = mod / ps; // p^(e-s)
                        scale(sat, mult);
                        work.push_back(std::move(sat));
                    }
                    break;
                }
                // r is the row owning this pivot column
                std::uint32_t t = valuation(pivot_val[r]);
                std::uint32_t s = valuation(cur[lead]);
                if (s >= t) {
                    std::uint64_t pt = pivot_val[r];
                    submul(cur, cur[lead] / pt, rows[r], mod);
                    while (lead < len && cur[lead] == 0)
                        ++lead;
                    continue;
                }
                // cur becomes the new, finer pivot row; the displaced row is
                // reprocessed
                std::uint64_t ps = 1;
                for (std::uint32_t i = 0; i < s; ++i)
                    ps *= p;
                scale(cur, unit_inv(cur[lead] / ps));
                std::swap(rows[r], cur);
                pivot_val[r] = static_cast<std::uint32_t>(ps);
                grew = true;
                if (added)
                    added->push_back(rows[r]);
                if (s > 0) {
                    std::vector<std::uint32_t> sat = rows[r];
                    scale(sat, mod / ps);
                    work.push_back(std::move(sat));
                }
                work.push_back(std::move(cur));
                break;
            }
        }
        return grew;
    }

    /// Reduces entries above every pivot; canonicalizes the basis without
    /// changing the span.
    void normalize() {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t above = 0; above < r; ++above) {
                std::uint64_t w = rows[above][pivot_col[r]];
                std::uint64_t coef = w / pivot_val[r];
                if (coef != 0)
                    submul(rows[above], coef, rows[r], mod);
            }
    }

    Int size() const {
        Int s = 1;
        for (auto pv : pivot_val)
            s *= Int(mod / pv); // p^(e-t)
        return s;
    }
};

} // namespace detail

/// Result of a subring closure: an echelonized additive generating set (each
/// row owns a distinct pivot coordinate, so representations over the pivot
/// orders are unique) together with the exact cardinality.
struct SubringSpan {
    std::vector<IncMatrix> basis;
    Int size = 1;
};

struct ClosureOptions {
    Int ambient_guard = Int(1) << 20; // refuse when |A| exceeds this
};

/// Closure oracle for one (poset, ring) pair. Precomputes the support product
/// table and the span of the scalar matrices, then answers closure queries
/// for many generating sets cheaply. Deliberately naive otherwise: it knows
/// nothing about the generation criteria it is used to validate.
///
/// The additive group of A splits over the primes dividing |R|, and the
/// subring generated by any set splits along the same blocks (the blocks
/// annihilate each other multiplicatively), so one echelon span per prime
/// block is maintained and the total size is the product over blocks.
class ClosureEngine {
public:
    ClosureEngine(Poset poset, BaseRing ring, ClosureOptions opts = {})
        : poset_(std::move(poset)), ring_(std::move(ring)), opts_(opts),
          ambient_(incidence_matrix_count(poset_, ring_)) {
        const int n = poset_.size();
        prod_terms_.resize(static_cast<std::size_t>(poset_.rho()));
        for (int s = 0; s < poset_.rho(); ++s) {
            auto [i, j] = poset_.pairs()[static_cast<std::size_t>(s)];
            for (int k = 1; k <= n; ++k) {
                int a = poset_.pair_index(i, k);
                int b = poset_.pair_index(k, j);
                if (a >= 0 && b >= 0)
                    prod_terms_[static_cast<std::size_t>(s)].emplace_back(a, b);
            }
        }
        const auto& blocks = ring_.add_blocks();
        for (std::size_t b = 0; b < blocks.size(); ++b)
            scalar_spans_.emplace_back(blocks[b].p, blocks[b].e, blocks[b].mod,
                                       static_cast<std::size_t>(poset_.rho()) * blocks[b].digits);
        for (const auto& g : scalar_matrices(ring_, poset_))
            for (std::size_t b = 0; b < blocks.size(); ++b)
                scalar_spans_[b].insert(mat_to_digits(static_cast<int>(b), g.raw()));
        // R.I_n is multiplicatively closed, so no product saturation is
        // needed for the seed spans.
        for (auto& sp : scalar_spans_)
            sp.normalize();
    }

    const Poset& poset() const { return poset_; }
    const BaseRing& ring() const { return ring_; }
    const Int& ambient_size() const { return ambient_; }

    bool generates(std::span<const IncMatrix> gens) const {
        auto spans = run(gens);
        return span_size(spans) == ambient_;
    }

    SubringSpan closure(std::span<const IncMatrix> gens) const {
        auto spans = run(gens);
        SubringSpan out;
        out.size = span_size(spans);
        for (std::size_t b = 0; b < spans.size(); ++b) {
            spans[b].normalize();
            for (const auto& row : spans[b].rows) {
                IncMatrix m(poset_, ring_);
                mat_from_digits(static_cast<int>(b), row, m.raw());
                out.basis.push_back(std::move(m));
            }
        }
        return out;
    }

private:
    std::vector<std::uint32_t> mat_to_digits(int block, const std::vector<std::uint64_t>& mat) const {
        const auto& blk = ring_.add_blocks()[static_cast<std::size_t>(block)];
        const std::size_t w = ring_.words();
        std::vector<std::uint32_t> out(static_cast<std::size_t>(poset_.rho()) * blk.digits);
        for (int s = 0; s < poset_.rho(); ++s)
            ring_.elem_to_block_digits(block, mat.data() + static_cast<std::size_t>(s) * w,
                                       out.data() + static_cast<std::size_t>(s) * blk.digits);
        return out;
    }

    void mat_from_digits(int block, const std::vector<std::uint32_t>& digits,
                         std::vector<std::uint64_t>& mat) const {
        const auto& blk = ring_.add_blocks()[static_cast<std::size_t>(block)];
        const std::size_t w = ring_.words();
        for (int s = 0; s < poset_.rho(); ++s)
            ring_.elem_from_block_digits(block, digits.data() + static_cast<std::size_t>(s) * blk.digits,
                                         mat.data() + static_cast<std::size_t>(s) * w);
    }

    void mat_mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                 std::vector<std::uint64_t>& out, std::vector<std::uint64_t>& term) const {
        const std::size_t w = ring_.words();
        std::fill(out.begin(), out.end(), 0);
        for (std::size_t s = 0; s < prod_terms_.size(); ++s) {
            std::uint64_t* o = out.data() + s * w;
            for (auto [u, v] : prod_terms_[s]) {
                ring_.mul_raw(a.data() + static_cast<std::size_t>(u) * w,
                              b.data() + static_cast<std::size_t>(v) * w, term.data());
                ring_.add_raw(o, term.data(), o);
            }
        }
    }

    static Int span_size(const std::vector<detail::ModSpan>& spans) {
        Int s = 1;
        for (const auto& sp : spans)
            s *= sp.size();
        return s;
    }

    std::vector<detail::ModSpan> run(std::span<const IncMatrix> gens) const {
        if (ambient_ > opts_.ambient_guard)
            throw Error("TooLarge", "|A| = " + ambient_.str() + " exceeds the closure guard " +
                                        opts_.ambient_guard.str());
        for (const auto& g : gens) {
            if (g.poset() != poset_)
                throw Error("ShapeMismatch", "generator lives over a different poset");
            if (g.ring() != ring_)
                throw Error("RingMismatch", "generator lives over a different ring");
        }
        std::vector<detail::ModSpan> spans = scalar_spans_;
        const std::size_t nblocks = spans.size();
        const std::size_t matwords = static_cast<std::size_t>(poset_.rho()) * ring_.words();

        // worklist of (block, digit row) whose products are still unprocessed
        std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> todo;
        std::vector<std::vector<std::uint32_t>> added;
        for (const auto& g : gens)
            for (std::size_t b = 0; b < nblocks; ++b) {
                added.clear();
                spans[b].insert(mat_to_digits(static_cast<int>(b), g.raw()), &added);
                for (auto& row : added)
                    todo.emplace_back(b, std::move(row));
            }

        std::vector<std::uint64_t> left(matwords), right(matwords), prod(matwords),
            term(ring_.words());
        while (!todo.empty()) {
            if (span_size(spans) == ambient_)
                break; // already everything
            auto [b, row] = std::move(todo.back());
            todo.pop_back();
            std::fill(left.begin(), left.end(), 0);
            mat_from_digits(static_cast<int>(b), row, left);
            // snapshot: rows added during processing enter the worklist themselves
            std::vector<std::vector<std::uint32_t>> snapshot = spans[b].rows;
            for (const auto& other : snapshot) {
                std::fill(right.begin(), right.end(), 0);
                mat_from_digits(static_cast<int>(b), other, right);
                for (int dir = 0; dir < 2; ++dir) {
                    if (dir == 0)
                        mat_mul(left, right, prod, term);
                    else
                        mat_mul(right, left, prod, term);
                    added.clear();
                    spans[b].insert(mat_to_digits(static_cast<int>(b), prod), &added);
                    for (auto& r2 : added)
                        todo.emplace_back(b, std::move(r2));
                }
            }
        }
        return spans;
    }

    Poset poset_;
    BaseRing ring_;
    ClosureOptions opts_;
    Int ambient_;
    std::vector<std::vector<std::pair<int, int>>> prod_terms_;
    std::vector<detail::ModSpan> scalar_spans_;
};

/// Closure of S together with the scalar matrices and the identity, as the
/// additive span basis plus the exact subring cardinality.
inline SubringSpan subring_closure(const Poset& poset, const BaseRing& ring,
                                   std::span<const IncMatrix> S, ClosureOptions opts = {}) {
    return ClosureEngine(poset, ring, opts).closure(S);
}

inline SubringSpan subring_closure(std::span<const IncMatrix> S, ClosureOptions opts = {}) {
    if (S.empty())
        throw Error("ShapeMismatch", "empty generating set needs an explicit poset and ring");
    return subring_closure(S[0].poset(), S[0].ring(), S, opts);
}

/// True when S with all scalar matrices generates the full incidence ring,
/// decided by the naive closure.
inline bool generates_bruteforce(const Poset& poset, const BaseRing& ring,
                                 std::span<const IncMatrix> S, ClosureOptions opts = {}) {
    return ClosureEngine(poset, ring, opts).generates(S);
}

inline bool generates_bruteforce(std::span<const IncMatrix> S, ClosureOptions opts = {}) {
    if (S.empty())
        throw Error("ShapeMismatch", "empty generating set needs an explicit poset and ring");
    return generates_bruteforce(S[0].poset(), S[0].ring(), S, opts);
}

} // namespace incgen
