#pragma once

#include "incgen/bigint.hpp"
#include "incgen/error.hpp"
#include "incgen/field.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace incgen {

class BaseRing;
class RingElem;

enum class RingKind { simple, product, local_z };

/// Descriptor of a ring from the supported catalog:
///
///   simple    M_k(GF(q))            (k = 1 gives the field itself)
///   product   M_{k_1}(GF(q_1)) x ... x M_{k_d}(GF(q_d))
///   local_z   Z/p^e
///
/// The semisimple quotient data (n_i, q_i) and |J(R)| are explicit for every
/// catalog member. Immutable and cheap to copy; elements are flat arrays of
/// encoded scalars whose layout the descriptor defines.
class BaseRing {
public:
    struct Component {
        std::uint32_t k; // matrix size n_i
        FieldSpec field; // GF(q_i)
    };

    struct AddBlock {
        std::uint32_t p;      // prime of this primary component
        std::uint32_t e;      // digits live in Z/p^e (1 for field coordinates)
        std::uint64_t mod;    // p^e
        std::uint32_t digits; // digits per ring element
    };

    static BaseRing simple(std::uint32_t k, FieldSpec field) {
        if (k < 1 || k > 3)
            throw Error("UnsupportedRing", "matrix size " + std::to_string(k) + " outside 1..3");
        auto impl = std::make_shared<Impl>();
        impl->kind = RingKind::simple;
        impl->comps.push_back(Component{k, field});
        impl->finish();
        return BaseRing(std::move(impl));
    }

    static BaseRing product(const std::vector<BaseRing>& factors) {
        if (factors.size() < 2)
            throw Error("UnsupportedRing", "product ring needs at least 2 factors");
        auto impl = std::make_shared<Impl>();
        impl->kind = RingKind::product;
        for (const auto& f : factors) {
            if (f.kind() != RingKind::simple)
                throw Error("UnsupportedRing", "product factors must be matrix rings over fields");
            impl->comps.push_back(f.impl_->comps[0]);
        }
        impl->finish();
        return BaseRing(std::move(impl));
    }

    static BaseRing local_z(std::uint32_t p, std::uint32_t e) {
        if (!detail::is_prime_u64(p))
            throw Error("NotPrime", "NotPrime(" + std::to_string(p) + ")");
        if (p > 97)
            throw Error("UnsupportedRing", "characteristic " + std::to_string(p) + " exceeds 97");
        if (e < 1)
            throw Error("UnsupportedRing", "Z/p^e needs e >= 1");
        std::uint64_t mod = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            mod *= p;
            if (mod > (1ull << 31))
                throw Error("UnsupportedRing", "Z/p^e modulus exceeds 2^31");
        }
        auto impl = std::make_shared<Impl>();
        impl->kind = RingKind::local_z;
        impl->zp = p;
        impl->ze = e;
        impl->zmod = mod;
        impl->comps.push_back(Component{1, FieldSpec::make(p)});
        impl->finish();
        return BaseRing(std::move(impl));
    }

    /// Parses the ring spec grammar:
    ///   ring   := simple | simple ("x" simple)+ | "Z/" int
    ///   simple := "GF(" int ")" | "M(" int "," "GF(" int ")" ")"
    static BaseRing parse(std::string_view text);

    /// Canonical spec string, reparseable by parse().
    std::string to_string() const {
        if (kind() == RingKind::local_z)
            return "Z/" + std::to_string(impl_->zmod);
        std::string s;
        for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
            if (c)
                s += "x";
            const auto& comp = impl_->comps[c];
            if (comp.k == 1)
                s += "GF(" + std::to_string(comp.field.order()) + ")";
            else
                s += "M(" + std::to_string(comp.k) + ",GF(" + std::to_string(comp.field.order()) + "))";
        }
        return s;
    }

    RingKind kind() const { return impl_->kind; }

    /// Number d of simple components of R/J(R).
    int component_count() const { return static_cast<int>(impl_->comps.size()); }

    /// Wedderburn data (n_i, q_i) of the semisimple quotient. For Z/p^e this
    /// is the single component (1, p).
    const std::vector<Component>& components() const { return impl_->comps; }

    const Int& jacobson_size() const { return impl_->jsize; }
    const Int& cardinality() const { return impl_->size; }

    std::uint32_t local_p() const { return require_local().zp; }
    std::uint32_t local_e() const { return require_local().ze; }
    std::uint64_t local_modulus() const { return require_local().zmod; }

    std::size_t words() const { return impl_->words; }

    RingElem zero() const;
    RingElem one() const;
    /// The image of an ordinary integer, i.e. v times the identity.
    RingElem integer_elem(long long v) const;
    /// Wraps a raw scalar array after validating every slot against the layout.
    RingElem elem_from_raw(std::vector<std::uint64_t> data) const;
    /// Element of a simple ring from a k x k field matrix.
    RingElem from_matrix(const FqMat& m) const;
    /// Element of a product ring from component elements.
    RingElem from_components(const std::vector<RingElem>& parts) const;

    RingElem add(const RingElem& a, const RingElem& b) const;
    RingElem sub(const RingElem& a, const RingElem& b) const;
    RingElem mul(const RingElem& a, const RingElem& b) const;
    RingElem neg(const RingElem& a) const;

    /// Cardinality as a machine integer; TooLarge beyond 2^62.
    std::uint64_t cardinality_u64() const {
        if (impl_->size > Int(std::uint64_t(1) << 62))
            throw Error("TooLarge", "ring cardinality exceeds 2^62");
        return impl_->size.convert_to<std::uint64_t>();
    }

    /// Bijection [0, |R|) -> R; slot 0 is the least significant digit.
    RingElem element_from_index(std::uint64_t idx) const;
    std::uint64_t index_of(const RingElem& a) const;

    /// Additive generating set of (R, +): matrix units times field basis
    /// powers for the matrix components, the residue 1 for Z/p^e.
    std::vector<RingElem> additive_generators() const;
    /// Additive generating set of J(R): {p} for Z/p^e with e >= 2, else empty.
    std::vector<RingElem> radical_generators() const;

    BaseRing component_ring(int i) const {
        if (kind() != RingKind::product)
            throw Error("NotAProduct", "component ring of a non-product ring");
        if (i < 1 || i > component_count())
            throw Error("IndexOutOfRange", "IndexOutOfRange(" + std::to_string(i) + ")");
        return simple(impl_->comps[i - 1].k, impl_->comps[i - 1].field);
    }

    /// R/J(R) as a catalog ring: GF(p) for Z/p^e, the ring itself otherwise.
    BaseRing residue_ring() const {
        if (kind() == RingKind::local_z)
            return simple(1, FieldSpec::make(impl_->zp));
        return *this;
    }

    // --- additive digit schema (primary decomposition of (R,+)) ---

    const std::vector<AddBlock>& add_blocks() const { return impl_->blocks; }

    void elem_to_block_digits(int block, const std::uint64_t* elem, std::uint32_t* out) const {
        impl_->to_digits(block, elem, out);
    }
    /// Writes the block's content into the element array; slots owned by
    /// other blocks are left untouched (callers zero-initialize).
    void elem_from_block_digits(int block, const std::uint32_t* digits, std::uint64_t* elem) const {
        impl_->from_digits(block, digits, elem);
    }

    // --- raw span arithmetic used by the incidence layer ---

    void add_raw(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;
    void sub_raw(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;
    void neg_raw(const std::uint64_t* a, std::uint64_t* out) const;
    void mul_raw(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;

    bool operator==(const BaseRing& o) const {
        if (impl_ == o.impl_)
            return true;
        if (impl_->kind != o.impl_->kind || impl_->comps.size() != o.impl_->comps.size())
            return false;
        if (impl_->kind == RingKind::local_z)
            return impl_->zp == o.impl_->zp && impl_->ze == o.impl_->ze;
        for (std::size_t i = 0; i < impl_->comps.size(); ++i)
            if (impl_->comps[i].k != o.impl_->comps[i].k || impl_->comps[i].field != o.impl_->comps[i].field)
                return false;
        return true;
    }
    bool operator!=(const BaseRing& o) const { return !(*this == o); }

private:
    struct Impl {
        RingKind kind = RingKind::simple;
        std::vector<Component> comps;
        std::vector<std::size_t> comp_offset; // word offset of each component
        std::uint32_t zp = 0, ze = 0;
        std::uint64_t zmod = 0;
        Int jsize = 1;
        Int size = 1;
        std::size_t words = 0;
        std::vector<AddBlock> blocks;
        std::vector<int> comp_block; // block index of each component

        void finish() {
            if (kind == RingKind::local_z) {
                words = 1;
                jsize = int_pow(Int(zp), ze - 1);
                size = Int(zmod);
                blocks.push_back(AddBlock{zp, ze, zmod, 1});
                comp_block.push_back(0);
                return;
            }
            jsize = 1;
            size = 1;
            for (const auto& c : comps) {
                comp_offset.push_back(words);
                words += static_cast<std::size_t>(c.k) * c.k;
                size *= int_pow(Int(c.field.order()), static_cast<std::uint64_t>(c.k) * c.k);
            }
            comp_block.assign(comps.size(), -1);
            for (std::size_t c = 0; c < comps.size(); ++c) {
                std::uint32_t p = comps[c].field.characteristic();
                int b = -1;
                for (std::size_t j = 0; j < blocks.size(); ++j)
                    if (blocks[j].p == p)
                        b = static_cast<int>(j);
                if (b < 0) {
                    blocks.push_back(AddBlock{p, 1, p, 0});
                    b = static_cast<int>(blocks.size()) - 1;
                }
                comp_block[c] = b;
                blocks[static_cast<std::size_t>(b)].digits +=
                    static_cast<std::uint32_t>(comps[c].k) * comps[c].k * comps[c].field.degree();
            }
        }

        void to_digits(int block, const std::uint64_t* elem, std::uint32_t* out) const {
            if (kind == RingKind::local_z) {
                out[0] = static_cast<std::uint32_t>(elem[0]);
                return;
            }
            std::size_t pos = 0;
            for (std::size_t c = 0; c < comps.size(); ++c) {
                if (comp_block[c] != block)
                    continue;
                const auto& comp = comps[c];
                const std::uint32_t p = comp.field.characteristic();
                const std::uint32_t e = comp.field.degree();
                const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
                for (std::size_t s = 0; s < kk; ++s) {
                    std::uint64_t v = elem[comp_offset[c] + s];
                    for (std::uint32_t t = 0; t < e; ++t) {
                        out[pos++] = static_cast<std::uint32_t>(v % p);
                        v /= p;
                    }
                }
            }
        }

        void from_digits(int block, const std::uint32_t* digits, std::uint64_t* elem) const {
            if (kind == RingKind::local_z) {
                elem[0] = digits[0];
                return;
            }
            std::size_t pos = 0;
            for (std::size_t c = 0; c < comps.size(); ++c) {
                if (comp_block[c] != block)
                    continue;
                const auto& comp = comps[c];
                const std::uint32_t p = comp.field.characteristic();
                const std::uint32_t e = comp.field.degree();
                const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
                for (std::size_t s = 0; s < kk; ++s) {
                    std::uint64_t v = 0, shift = 1;
                    for (std::uint32_t t = 0; t < e; ++t) {
                        v += digits[pos++] * shift;
                        shift *= p;
                    }
                    elem[comp_offset[c] + s] = v;
                }
            }
        }
    };

    explicit BaseRing(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    const Impl& require_local() const {
        if (impl_->kind != RingKind::local_z)
            throw Error("WrongRingKind", "operation requires a Z/p^e ring");
        return *impl_;
    }

    std::shared_ptr<const Impl> impl_;

    friend class RingElem;
    friend RingElem project_component(const RingElem&, int);
    friend RingElem reduce_mod_radical(const RingElem&);
};

/// A value of a catalog ring: the owning descriptor plus the flat scalar
/// array. Encodings are canonical, so equality is plain data comparison.
class RingElem {
public:
    RingElem(BaseRing ring, std::vector<std::uint64_t> data)
        : ring_(std::move(ring)), data_(std::move(data)) {}

    const BaseRing& ring() const { return ring_; }
    const std::vector<std::uint64_t>& data() const { return data_; }

    bool is_zero() const {
        for (auto v : data_)
            if (v != 0)
                return false;
        return true;
    }

    bool operator==(const RingElem& o) const { return ring_ == o.ring_ && data_ == o.data_; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

private:
    BaseRing ring_;
    std::vector<std::uint64_t> data_;
};

inline RingElem BaseRing::zero() const { return RingElem(*this, std::vector<std::uint64_t>(words(), 0)); }

inline RingElem BaseRing::one() const {
    std::vector<std::uint64_t> d(words(), 0);
    if (kind() == RingKind::local_z) {
        d[0] = impl_->zmod == 1 ? 0 : 1;
    } else {
        for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
            const auto& comp = impl_->comps[c];
            for (std::uint32_t i = 0; i < comp.k; ++i)
                d[impl_->comp_offset[c] + static_cast<std::size_t>(i) * comp.k + i] = comp.field.one();
        }
    }
    return RingElem(*this, std::move(d));
}

inline RingElem BaseRing::integer_elem(long long v) const {
    std::vector<std::uint64_t> d(words(), 0);
    if (kind() == RingKind::local_z) {
        long long m = v % static_cast<long long>(impl_->zmod);
        if (m < 0)
            m += static_cast<long long>(impl_->zmod);
        d[0] = static_cast<std::uint64_t>(m);
    } else {
        for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
            const auto& comp = impl_->comps[c];
            std::uint64_t s = comp.field.from_coeffs({v});
            for (std::uint32_t i = 0; i < comp.k; ++i)
                d[impl_->comp_offset[c] + static_cast<std::size_t>(i) * comp.k + i] = s;
        }
    }
    return RingElem(*this, std::move(d));
}

inline RingElem BaseRing::elem_from_raw(std::vector<std::uint64_t> data) const {
    if (data.size() != words())
        throw Error("InvalidElement", "element data has wrong length");
    if (kind() == RingKind::local_z) {
        if (data[0] >= impl_->zmod)
            throw Error("InvalidElement", "residue out of range");
    } else {
        for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
            const auto& comp = impl_->comps[c];
            const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
            for (std::size_t s = 0; s < kk; ++s)
                if (data[impl_->comp_offset[c] + s] >= comp.field.order())
                    throw Error("InvalidElement", "field scalar out of range");
        }
    }
    return RingElem(*this, std::move(data));
}

inline RingElem BaseRing::from_matrix(const FqMat& m) const {
    if (kind() != RingKind::simple)
        throw Error("WrongRingKind", "from_matrix requires a simple matrix ring");
    return elem_from_raw(std::vector<std::uint64_t>(m.begin(), m.end()));
}

inline RingElem BaseRing::from_components(const std::vector<RingElem>& parts) const {
    if (kind() != RingKind::product)
        throw Error("NotAProduct", "from_components requires a product ring");
    if (parts.size() != impl_->comps.size())
        throw Error("InvalidElement", "component count mismatch");
    std::vector<std::uint64_t> d(words(), 0);
    for (std::size_t c = 0; c < parts.size(); ++c) {
        if (parts[c].ring() != component_ring(static_cast<int>(c) + 1))
            throw Error("RingMismatch", "component " + std::to_string(c + 1) + " has wrong ring");
        const auto& src = parts[c].data();
        std::copy(src.begin(), src.end(), d.begin() + static_cast<std::ptrdiff_t>(impl_->comp_offset[c]));
    }
    return RingElem(*this, std::move(d));
}

inline void BaseRing::add_raw(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
    if (kind() == RingKind::local_z) {
        out[0] = (a[0] + b[0]) % impl_->zmod;
        return;
    }
    for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
        const auto& comp = impl_->comps[c];
        const std::size_t off = impl_->comp_offset[c];
        const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
        for (std::size_t s = 0; s < kk; ++s)
            out[off + s] = comp.field.add(a[off + s], b[off + s]);
    }
}

inline void BaseRing::sub_raw(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
    if (kind() == RingKind::local_z) {
        out[0] = (a[0] + impl_->zmod - b[0]) % impl_->zmod;
        return;
    }
    for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
        const auto& comp = impl_->comps[c];
        const std::size_t off = impl_->comp_offset[c];
        const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
        for (std::size_t s = 0; s < kk; ++s)
            out[off + s] = comp.field.sub(a[off + s], b[off + s]);
    }
}

inline void BaseRing::neg_raw(const std::uint64_t* a, std::uint64_t* out) const {
    if (kind() == RingKind::local_z) {
        out[0] = (impl_->zmod - a[0]) % impl_->zmod;
        return;
    }
    for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
        const auto& comp = impl_->comps[c];
        const std::size_t off = impl_->comp_offset[c];
        const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
        for (std::size_t s = 0; s < kk; ++s)
            out[off + s] = comp.field.neg(a[off + s]);
    }
}

inline void BaseRing::mul_raw(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
    if (kind() == RingKind::local_z) {
        out[0] = (a[0] * b[0]) % impl_->zmod;
        return;
    }
    for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
        const auto& comp = impl_->comps[c];
        const std::size_t off = impl_->comp_offset[c];
        fq_mat_mul_span(comp.field, comp.k, a + off, b + off, out + off);
    }
}

namespace detail {
inline void require_same_ring(const RingElem& a, const RingElem& b) {
    if (a.ring() != b.ring())
        throw Error("RingMismatch", "operands belong to different rings");
}
} // namespace detail

inline RingElem BaseRing::add(const RingElem& a, const RingElem& b) const {
    detail::require_same_ring(a, b);
    std::vector<std::uint64_t> d(words());
    add_raw(a.data().data(), b.data().data(), d.data());
    return RingElem(*this, std::move(d));
}

inline RingElem BaseRing::sub(const RingElem& a, const RingElem& b) const {
    detail::require_same_ring(a, b);
    std::vector<std::uint64_t> d(words());
    sub_raw(a.data().data(), b.data().data(), d.data());
    return RingElem(*this, std::move(d));
}

inline RingElem BaseRing::mul(const RingElem& a, const RingElem& b) const {
    detail::require_same_ring(a, b);
    std::vector<std::uint64_t> d(words());
    mul_raw(a.data().data(), b.data().data(), d.data());
    return RingElem(*this, std::move(d));
}

inline RingElem BaseRing::neg(const RingElem& a) const {
    std::vector<std::uint64_t> d(words());
    neg_raw(a.data().data(), d.data());
    return RingElem(*this, std::move(d));
}

inline RingElem operator+(const RingElem& a, const RingElem& b) { return a.ring().add(a, b); }
inline RingElem operator-(const RingElem& a, const RingElem& b) { return a.ring().sub(a, b); }
inline RingElem operator*(const RingElem& a, const RingElem& b) { return a.ring().mul(a, b); }
inline RingElem operator-(const RingElem& a) { return a.ring().neg(a); }

inline RingElem BaseRing::element_from_index(std::uint64_t idx) const {
    std::vector<std::uint64_t> d(words(), 0);
    if (kind() == RingKind::local_z) {
        d[0] = idx % impl_->zmod;
    } else {
        for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
            const auto& comp = impl_->comps[c];
            const std::uint64_t q = comp.field.order();
            const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
            for (std::size_t s = 0; s < kk; ++s) {
                d[impl_->comp_offset[c] + s] = idx % q;
                idx /= q;
            }
        }
    }
    return RingElem(*this, std::move(d));
}

inline std::uint64_t BaseRing::index_of(const RingElem& a) const {
    if (a.ring() != *this)
        throw Error("RingMismatch", "element belongs to a different ring");
    if (kind() == RingKind::local_z)
        return a.data()[0];
    std::uint64_t idx = 0, shift = 1;
    for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
        const auto& comp = impl_->comps[c];
        const std::uint64_t q = comp.field.order();
        const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
        for (std::size_t s = 0; s < kk; ++s) {
            idx += a.data()[impl_->comp_offset[c] + s] * shift;
            shift *= q;
        }
    }
    return idx;
}

inline std::vector<RingElem> BaseRing::additive_generators() const {
    std::vector<RingElem> gens;
    if (kind() == RingKind::local_z) {
        gens.push_back(one());
        return gens;
    }
    for (std::size_t c = 0; c < impl_->comps.size(); ++c) {
        const auto& comp = impl_->comps[c];
        for (std::uint32_t a = 0; a < comp.k; ++a)
            for (std::uint32_t b = 0; b < comp.k; ++b)
                for (std::uint32_t t = 0; t < comp.field.degree(); ++t) {
                    std::vector<std::uint64_t> d(words(), 0);
                    std::uint64_t xt = 1;
                    for (std::uint32_t i = 0; i < t; ++i)
                        xt *= comp.field.characteristic(); // encoding of x^t
                    d[impl_->comp_offset[c] + static_cast<std::size_t>(a) * comp.k + b] = xt;
                    gens.emplace_back(*this, std::move(d));
                }
    }
    return gens;
}

inline std::vector<RingElem> BaseRing::radical_generators() const {
    std::vector<RingElem> gens;
    if (kind() == RingKind::local_z && impl_->ze >= 2) {
        std::vector<std::uint64_t> d(words(), 0);
        d[0] = impl_->zp;
        gens.emplace_back(*this, std::move(d));
    }
    return gens;
}

/// Projection onto the i-th factor of a product ring (multiplication by the
/// i-th central idempotent), 1-based.
inline RingElem project_component(const RingElem& a, int i) {
    const BaseRing& r = a.ring();
    if (r.kind() != RingKind::product)
        throw Error("NotAProduct", "project_component requires a product ring");
    if (i < 1 || i > r.component_count())
        throw Error("IndexOutOfRange", "IndexOutOfRange(" + std::to_string(i) + ")");
    BaseRing target = r.component_ring(i);
    const std::size_t off = r.impl_->comp_offset[static_cast<std::size_t>(i - 1)];
    const std::size_t kk = target.words();
    std::vector<std::uint64_t> d(a.data().begin() + static_cast<std::ptrdiff_t>(off),
                                 a.data().begin() + static_cast<std::ptrdiff_t>(off + kk));
    return RingElem(std::move(target), std::move(d));
}

/// Entrywise reduction modulo the Jacobson radical: Z/p^e -> GF(p). Identity
/// on the semisimple catalog members, where J(R) = 0 already.
inline RingElem reduce_mod_radical(const RingElem& a) {
    const BaseRing& r = a.ring();
    if (r.kind() != RingKind::local_z)
        return a;
    if (a.data().size() != 1 || a.data()[0] >= r.local_modulus())
        throw Error("NoRadicalReduction", "malformed Z/p^e element");
    BaseRing target = r.residue_ring();
    return RingElem(std::move(target), {a.data()[0] % r.local_p()});
}

inline BaseRing BaseRing::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t')
            s += ch;
    auto fail = [&](const std::string& why) { return Error("InvalidRingSpec", why + " in ring spec \"" + s + "\""); };
    std::size_t pos = 0;
    auto parse_uint = [&]() -> std::uint64_t {
        if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
            throw fail("expected integer");
        std::uint64_t v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (v > (1ull << 40))
                throw fail("integer too large");
            ++pos;
        }
        return v;
    };
    auto expect = [&](const char* lit) {
        std::size_t len = std::char_traits<char>::length(lit);
        if (s.compare(pos, len, lit) != 0)
            throw fail(std::string("expected \"") + lit + "\"");
        pos += len;
    };

    if (s.rfind("Z/", 0) == 0) {
        pos = 2;
        std::uint64_t nval = parse_uint();
        if (pos != s.size())
            throw fail("trailing characters");
        if (nval < 2)
            throw fail("Z/n requires n >= 2");
        std::uint64_t p = 2;
        while (nval % p != 0)
            ++p;
        std::uint32_t e = 0;
        std::uint64_t rest = nval;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest != 1)
            throw fail("Z/n requires n to be a prime power");
        return local_z(static_cast<std::uint32_t>(p), e);
    }

    auto parse_simple = [&]() -> BaseRing {
        if (s.compare(pos, 3, "GF(") == 0) {
            pos += 3;
            std::uint64_t q = parse_uint();
            expect(")");
            return simple(1, FieldSpec::from_order(q));
        }
        if (s.compare(pos, 2, "M(") == 0) {
            pos += 2;
            std::uint64_t k = parse_uint();
            expect(",");
            expect("GF(");
            std::uint64_t q = parse_uint();
            expect(")");
            expect(")");
            if (k < 1 || k > 3)
                throw fail("matrix size outside 1..3");
            return simple(static_cast<std::uint32_t>(k), FieldSpec::from_order(q));
        }
        throw fail("expected \"GF(\" or \"M(\"");
    };

    std::vector<BaseRing> factors;
    factors.push_back(parse_simple());
    while (pos < s.size() && s[pos] == 'x') {
        ++pos;
        factors.push_back(parse_simple());
    }
    if (pos != s.size())
        throw fail("trailing characters");
    if (factors.size() == 1)
        return factors[0];
    return product(factors);
}

} // namespace incgen
