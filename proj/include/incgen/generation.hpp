#pragma once

#include "incgen/error.hpp"
#include "incgen/inc_matrix.hpp"
#include "incgen/poset.hpp"
#include "incgen/ring.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace incgen {

/// Verdict of a generation test with the witness data: the diagonal matrix
/// Delta (delta[t][alpha] = (A_alpha)_tt over the ring the test ran in), the
/// first pair of identical Delta rows, and the first covering pair whose
/// (v, w) vectors failed to be independent. Product rings carry one
/// sub-report per component; the top-level witnesses mirror the first failing
/// component.
struct GenReport {
    bool verdict = false;
    std::vector<std::vector<RingElem>> delta;
    std::optional<std::pair<int, int>> failed_row_pair;
    std::optional<std::pair<int, int>> failed_cover;
    std::vector<GenReport> per_component;
};

/// Entrywise projection of an incidence matrix onto the i-th factor of a
/// product base ring (realizes multiplication by the central idempotent e_i).
inline IncMatrix project_component(const IncMatrix& a, int i) {
    BaseRing target = a.ring().component_ring(i);
    IncMatrix out(a.poset(), target);
    for (int s = 0; s < a.poset().rho(); ++s) {
        auto [r, c] = a.poset().pairs()[static_cast<std::size_t>(s)];
        out.set(r, c, project_component(a.get(r, c), i));
    }
    return out;
}

/// Entrywise reduction modulo the radical of the base ring; identity on
/// semisimple catalog rings.
inline IncMatrix reduce_mod_radical(const IncMatrix& a) {
    BaseRing target = a.ring().residue_ring();
    IncMatrix out(a.poset(), target);
    for (int s = 0; s < a.poset().rho(); ++s) {
        auto [r, c] = a.poset().pairs()[static_cast<std::size_t>(s)];
        out.set(r, c, reduce_mod_radical(a.get(r, c)));
    }
    return out;
}

/// Generation criterion over a simple base ring M_k(GF(q)): the Delta matrix
/// must have pairwise distinct rows, and for every covering pair i < j the
/// vectors v = ((A_a)_ii - (A_a)_jj)_a and w = ((A_a)_ij)_a, flattened to
/// GF(q)^(k^2 m), must span a rank-2 space.
inline GenReport check_criterion_simple(std::span<const IncMatrix> S) {
    if (S.empty())
        throw Error("EmptyTuple", "generation test needs at least one matrix");
    const Poset& poset = S[0].poset();
    const BaseRing& ring = S[0].ring();
    if (ring.kind() != RingKind::simple)
        throw Error("WrongRingKind", "criterion requires a simple matrix base ring");
    for (const auto& a : S) {
        if (a.poset() != poset)
            throw Error("ShapeMismatch", "tuple entries live over different posets");
        if (a.ring() != ring)
            throw Error("RingMismatch", "tuple entries live over different rings");
    }
    const int n = poset.size();
    const std::size_t m = S.size();
    const FieldSpec field = ring.components()[0].field;
    const std::uint32_t k = ring.components()[0].k;
    const std::size_t kk = static_cast<std::size_t>(k) * k;

    GenReport rep;
    rep.delta.reserve(static_cast<std::size_t>(n));
    for (int t = 1; t <= n; ++t) {
        std::vector<RingElem> row;
        row.reserve(m);
        for (const auto& a : S)
            row.push_back(a.get(t, t));
        rep.delta.push_back(std::move(row));
    }

    for (int i = 0; i < n && !rep.failed_row_pair; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rep.delta[static_cast<std::size_t>(i)] == rep.delta[static_cast<std::size_t>(j)]) {
                rep.failed_row_pair = {i + 1, j + 1};
                break;
            }

    for (auto [i, j] : poset.cover_data().covers) {
        std::vector<std::uint64_t> v(kk * m), w(kk * m);
        for (std::size_t alpha = 0; alpha < m; ++alpha) {
            const auto& dii = rep.delta[static_cast<std::size_t>(i - 1)][alpha].data();
            const auto& djj = rep.delta[static_cast<std::size_t>(j - 1)][alpha].data();
            RingElem wij = S[alpha].get(i, j);
            for (std::size_t s = 0; s < kk; ++s) {
                v[alpha * kk + s] = field.sub(dii[s], djj[s]);
                w[alpha * kk + s] = wij.data()[s];
            }
        }
        // rank of the 2 x (k^2 m) stack [v; w]
        std::size_t vlead = v.size();
        for (std::size_t s = 0; s < v.size(); ++s)
            if (v[s] != 0) {
                vlead = s;
                break;
            }
        bool rank2;
        if (vlead == v.size()) {
            rank2 = false; // v = 0
        } else {
            std::uint64_t lambda = field.mul(w[vlead], field.inv(v[vlead]));
            rank2 = false;
            for (std::size_t s = 0; s < v.size(); ++s)
                if (w[s] != field.mul(lambda, v[s])) {
                    rank2 = true;
                    break;
                }
        }
        if (!rank2) {
            rep.failed_cover = {i, j};
            break;
        }
    }

    rep.verdict = !rep.failed_row_pair && !rep.failed_cover;
    return rep;
}

/// Generation test for every catalog base ring: simple rings use the
/// criterion directly, products require it componentwise after projecting,
/// and Z/p^e reduces modulo the radical to GF(p) first.
inline GenReport check_generates(std::span<const IncMatrix> S) {
    if (S.empty())
        throw Error("EmptyTuple", "generation test needs at least one matrix");
    const BaseRing& ring = S[0].ring();
    switch (ring.kind()) {
    case RingKind::simple:
        return check_criterion_simple(S);
    case RingKind::local_z: {
        std::vector<IncMatrix> reduced;
        reduced.reserve(S.size());
        for (const auto& a : S)
            reduced.push_back(reduce_mod_radical(a));
        return check_criterion_simple(reduced);
    }
    case RingKind::product: {
        const Poset& poset = S[0].poset();
        for (const auto& a : S) {
            if (a.poset() != poset)
                throw Error("ShapeMismatch", "tuple entries live over different posets");
            if (a.ring() != ring)
                throw Error("RingMismatch", "tuple entries live over different rings");
        }
        GenReport rep;
        rep.verdict = true;
        for (int t = 1; t <= poset.size(); ++t) {
            std::vector<RingElem> row;
            for (const auto& a : S)
                row.push_back(a.get(t, t));
            rep.delta.push_back(std::move(row));
        }
        for (int c = 1; c <= ring.component_count(); ++c) {
            std::vector<IncMatrix> part;
            part.reserve(S.size());
            for (const auto& a : S)
                part.push_back(project_component(a, c));
            GenReport sub = check_criterion_simple(part);
            if (!sub.verdict && rep.verdict) {
                rep.verdict = false;
                rep.failed_row_pair = sub.failed_row_pair;
                rep.failed_cover = sub.failed_cover;
            }
            rep.per_component.push_back(std::move(sub));
        }
        return rep;
    }
    }
    throw Error("WrongRingKind", "unknown ring kind");
}

} // namespace incgen
