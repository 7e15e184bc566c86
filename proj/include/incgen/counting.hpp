#pragma once

#include "incgen/bigint.hpp"
#include "incgen/error.hpp"
#include "incgen/inc_matrix.hpp"
#include "incgen/poset.hpp"
#include "incgen/ring.hpp"

#include <cstdint>
#include <thread>
#include <vector>

namespace incgen {

/// Number of generating m-tuples over one simple component M_k(GF(q)) of the
/// base ring, for a poset with pair count rho and cover count c:
///
///     Q^(n)  *  (Q - q)^c  *  Q^(rho - n - c)      with Q = q^(k^2 m)
///
/// where Q^(n) is the falling factorial (the injective choices of Delta).
/// The falling factorial vanishes when Q < n, and (Q - q)^0 = 1 even when
/// Q = q, which extends the formula to every m >= 1.
inline Int count_gen_simple(int n, int rho, int c, std::uint32_t k, std::uint64_t q, int m) {
    if (n < 1 || m < 1 || k < 1 || q < 2 || c < 0)
        throw Error("InvalidShape", "count_gen_simple needs n, m, k >= 1, q >= 2, c >= 0");
    if (rho < n + c)
        throw Error("InvalidShape", "InvalidShape(rho < n + c)");
    const std::uint64_t exp = static_cast<std::uint64_t>(k) * k * static_cast<std::uint64_t>(m);
    const Int Q = int_pow(Int(q), exp);
    Int result = falling_factorial(Q, static_cast<std::uint64_t>(n));
    if (result == 0)
        return 0;
    if (c > 0)
        result *= int_pow(Q - q, static_cast<std::uint64_t>(c));
    result *= int_pow(Q, static_cast<std::uint64_t>(rho - n - c));
    return result;
}

/// |Gen_m| for any catalog base ring: the radical contributes a factor
/// |J(R)|^(m rho) and each semisimple component its simple-ring count.
inline Int count_gen_formula(const Poset& poset, const BaseRing& ring, int m) {
    if (m < 1)
        throw Error("InvalidShape", "tuple length m must be >= 1");
    const int n = poset.size();
    const int rho = poset.rho();
    const int c = poset.cover_count();
    Int result = int_pow(ring.jacobson_size(), static_cast<std::uint64_t>(m) * rho);
    for (const auto& comp : ring.components())
        result *= count_gen_simple(n, rho, c, comp.k, comp.field.order(), m);
    return result;
}

/// Least m with a nonempty Gen_m, found by scanning the counting formula
/// upward from the lower bound ceil(log_|R| n).
inline int mgen(const Poset& poset, const BaseRing& ring) {
    int m = 1;
    Int pw = ring.cardinality();
    while (pw < poset.size()) {
        pw *= ring.cardinality();
        ++m;
    }
    for (; m <= 4096; ++m)
        if (count_gen_formula(poset, ring, m) > 0)
            return m;
    throw Error("InternalError", "mgen search did not terminate"); // unreachable for catalog rings
}

/// Exact count, total, probability and mgen for one configuration.
struct CountReport {
    int m = 1;
    int rho = 0;
    int c = 0;
    Int count = 0;
    Int total = 1;
    Rational probability = 0;
    int mgen = 1;
};

inline CountReport count_gen(const Poset& poset, const BaseRing& ring, int m) {
    CountReport rep;
    rep.m = m;
    rep.rho = poset.rho();
    rep.c = poset.cover_count();
    rep.count = count_gen_formula(poset, ring, m);
    rep.total = int_pow(ring.cardinality(), static_cast<std::uint64_t>(m) * poset.rho());
    rep.probability = Rational(rep.count, rep.total);
    rep.mgen = incgen::mgen(poset, ring);
    return rep;
}

/// The probability |Gen_m| / |A^m| in product form, evaluated in exact
/// rational arithmetic:
///
///     prod_i (1 - 1/q_i^(n_i^2 m - 1))^c  *  prod_{l=1}^{n-1} (1 - l/q_i^(n_i^2 m))
///
/// Empty products are 1; a vanishing factor short-circuits to 0.
inline Rational probability_closed_form(const Poset& poset, const BaseRing& ring, int m) {
    if (m < 1)
        throw Error("InvalidShape", "tuple length m must be >= 1");
    const int n = poset.size();
    const int c = poset.cover_count();
    Rational prob = 1;
    for (const auto& comp : ring.components()) {
        const std::uint64_t exp = static_cast<std::uint64_t>(comp.k) * comp.k * static_cast<std::uint64_t>(m);
        const Int Q = int_pow(Int(comp.field.order()), exp);
        if (c > 0) {
            const Int denom = Q / comp.field.order(); // q^(n_i^2 m - 1)
            if (denom == 1)
                return 0;
            Rational term(denom - 1, denom);
            for (int i = 0; i < c; ++i)
                prob *= term;
        }
        for (int l = 1; l <= n - 1; ++l) {
            if (Int(l) >= Q)
                return 0;
            prob *= Rational(Q - l, Q);
        }
    }
    return prob;
}

struct EnumOptions {
    Int guard = Int(1) << 18; // refuse when |A|^m exceeds this
    unsigned threads = 1;
};

/// Independent oracle for the counting formula: iterates every m-tuple of
/// incidence matrices and counts the ones whose subring closure reaches the
/// whole ring. The tuple space may be partitioned across threads; the result
/// does not depend on the partition.
inline Int count_by_enumeration(const Poset& poset, const BaseRing& ring, int m,
                                const EnumOptions& opts = {}) {
    if (m < 1)
        throw Error("InvalidShape", "tuple length m must be >= 1");
    const Int ambient = incidence_matrix_count(poset, ring);
    const Int tuple_count = int_pow(ambient, static_cast<std::uint64_t>(m));
    if (tuple_count > opts.guard)
        throw Error("TooLarge", "|A|^m = " + tuple_count.str() + " exceeds the enumeration guard " +
                                    opts.guard.str());
    const std::uint64_t total = tuple_count.convert_to<std::uint64_t>();
    const std::uint64_t per_matrix = ambient.convert_to<std::uint64_t>();

    ClosureOptions copts;
    if (ambient > copts.ambient_guard)
        copts.ambient_guard = ambient;
    const ClosureEngine engine(poset, ring, copts);

    auto worker = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
        std::uint64_t hits = 0;
        std::vector<IncMatrix> tuple;
        tuple.reserve(static_cast<std::size_t>(m));
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            tuple.clear();
            std::uint64_t rest = idx;
            for (int alpha = 0; alpha < m; ++alpha) {
                tuple.push_back(matrix_from_index(poset, ring, rest % per_matrix));
                rest /= per_matrix;
            }
            if (engine.generates(tuple))
                ++hits;
        }
        return hits;
    };

    const unsigned nthreads = opts.threads == 0 ? 1 : opts.threads;
    if (nthreads == 1 || total < 2 * nthreads)
        return Int(worker(0, total));

    std::vector<std::uint64_t> partial(nthreads, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t]() {
            const std::uint64_t lo = t * chunk;
            const std::uint64_t hi = lo + chunk < total ? lo + chunk : total;
            if (lo < hi)
                partial[t] = worker(lo, hi);
        });
    for (auto& th : pool)
        th.join();
    Int sum = 0;
    for (auto h : partial)
        sum += h;
    return sum;
}

/// The radical of the incidence ring: size |J(R)|^n * |R|^(rho - n) and an
/// additive generating set, E_ii j for radical generators j of R plus E_ij r
/// for every strictly comparable pair (i, j) and additive generator r of R.
struct RadicalData {
    Int size = 1;
    std::vector<IncMatrix> basis;
};

inline RadicalData radical_data(const Poset& poset, const BaseRing& ring) {
    RadicalData out;
    const int n = poset.size();
    out.size = int_pow(ring.jacobson_size(), static_cast<std::uint64_t>(n)) *
               int_pow(ring.cardinality(), static_cast<std::uint64_t>(poset.rho() - n));
    for (int i = 1; i <= n; ++i)
        for (const auto& g : ring.radical_generators())
            out.basis.push_back(IncMatrix::unit(poset, i, i, g));
    for (auto [i, j] : poset.pairs()) {
        if (i == j)
            continue;
        for (const auto& r : ring.additive_generators())
            out.basis.push_back(IncMatrix::unit(poset, i, j, r));
    }
    return out;
}

} // namespace incgen
