#pragma once

#include "incgen/bigint.hpp"
#include "incgen/error.hpp"
#include "incgen/poset.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace incgen {

enum class ScalarField { real, complex };

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Per-trial seed derivation; trial partitioning across workers cannot change
/// the stream any trial sees.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

/// Deterministic standard Gaussians: explicit Box-Muller over the (bit-exact)
/// mt19937_64 stream, identified as generator "bm-mt19937_64-v1".
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = unit01();
        while (u1 <= 0.0)
            u1 = unit01();
        const double u2 = unit01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

    static constexpr const char* name() { return "bm-mt19937_64-v1"; }

private:
    double unit01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 eng_;
    bool have_ = false;
    double spare_ = 0.0;
};

/// A unit-norm tuple of m incidence matrices over the reals or complexes.
/// coords holds one number per (matrix, support pair) in the order
/// alpha * rho + pair_index; the complex case interleaves re/im, doubling the
/// length. Off-pattern entries do not exist in the layout.
struct RealTuple {
    Poset poset;
    ScalarField field = ScalarField::real;
    int m = 1;
    std::vector<double> coords;

    static std::size_t expected_len(const Poset& p, ScalarField f, int m) {
        return static_cast<std::size_t>(p.rho()) * static_cast<std::size_t>(m) *
               (f == ScalarField::complex ? 2 : 1);
    }

    /// Wraps coordinates that are already unit norm (within 1e-12).
    static RealTuple from_coords(Poset p, ScalarField f, int m, std::vector<double> coords) {
        if (m < 1)
            throw Error("InvalidShape", "tuple length m must be >= 1");
        if (coords.size() != expected_len(p, f, m))
            throw Error("InvalidShape", "coordinate array has wrong length");
        double norm2 = 0;
        for (double x : coords)
            norm2 += x * x;
        if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
            throw Error("NotNormalized", "coordinates are not unit norm");
        return RealTuple{std::move(p), f, m, std::move(coords)};
    }

    /// Scales arbitrary nonzero coordinates onto the unit sphere.
    static RealTuple normalized(Poset p, ScalarField f, int m, std::vector<double> coords) {
        if (m < 1)
            throw Error("InvalidShape", "tuple length m must be >= 1");
        if (coords.size() != expected_len(p, f, m))
            throw Error("InvalidShape", "coordinate array has wrong length");
        double norm2 = 0;
        for (double x : coords)
            norm2 += x * x;
        if (norm2 == 0)
            throw Error("InvalidShape", "cannot normalize the zero tuple");
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : coords)
            x *= inv;
        return RealTuple{std::move(p), f, m, std::move(coords)};
    }

    /// Entry (i,j) of matrix alpha (1-based all around); zero when (i,j) is
    /// off-pattern, imaginary part zero in the real case.
    std::complex<double> entry(int alpha, int i, int j) const {
        int s = poset.pair_index(i, j);
        if (s < 0)
            return {0.0, 0.0};
        std::size_t base = static_cast<std::size_t>(alpha - 1) * poset.rho() + static_cast<std::size_t>(s);
        if (field == ScalarField::complex)
            return {coords[2 * base], coords[2 * base + 1]};
        return {coords[base], 0.0};
    }
};

/// Uniform sample of the unit sphere of tuple space: independent standard
/// Gaussians, normalized (rotation invariance makes the direction uniform).
inline RealTuple sample_sphere(const Poset& poset, ScalarField field, int m, std::uint64_t seed) {
    if (m < 1)
        throw Error("InvalidShape", "tuple length m must be >= 1");
    const std::size_t len = RealTuple::expected_len(poset, field, m);
    GaussianStream g(seed);
    std::vector<double> coords(len);
    double norm2 = 0;
    do {
        norm2 = 0;
        for (auto& x : coords) {
            x = g.next();
            norm2 += x * x;
        }
    } while (norm2 < 1e-280); // a zero draw is theoretically possible only
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : coords)
        x *= inv;
    return RealTuple{poset, field, m, std::move(coords)};
}

namespace detail {

/// Smallest singular value of the 2 x m matrix with rows v, w. The rows are
/// orthogonalized (larger row first, one reorthogonalization pass) into a
/// 2 x 2 triangular factor [[a, b], [0, c]], whose sigma_min = a c / sigma_max
/// is free of the cancellation that the Gram eigenvalue route suffers near
/// rank 1. A 2 x 1 matrix has rank at most 1, so sigma_min is structurally 0.
inline double sigma_min_2rows(std::vector<std::complex<double>> v,
                              std::vector<std::complex<double>> w) {
    const std::size_t m = v.size();
    if (m < 2)
        return 0.0;
    auto norm = [](const std::vector<std::complex<double>>& x) {
        double s = 0;
        for (const auto& z : x)
            s += std::norm(z);
        return std::sqrt(s);
    };
    double nv = norm(v), nw = norm(w);
    if (nv < nw) {
        std::swap(v, w);
        std::swap(nv, nw);
    }
    if (nw == 0.0 || nv == 0.0)
        return 0.0;
    const double a = nv;
    std::vector<std::complex<double>> q = v;
    for (auto& z : q)
        z /= nv;
    std::complex<double> r12{0, 0};
    for (std::size_t i = 0; i < m; ++i)
        r12 += std::conj(q[i]) * w[i];
    for (std::size_t i = 0; i < m; ++i)
        w[i] -= q[i] * r12;
    std::complex<double> r12b{0, 0};
    for (std::size_t i = 0; i < m; ++i)
        r12b += std::conj(q[i]) * w[i];
    for (std::size_t i = 0; i < m; ++i)
        w[i] -= q[i] * r12b;
    const double c = norm(w);
    const double b2 = std::norm(r12 + r12b);
    const double s1 = (a - c) * (a - c) + b2;
    const double s2 = (a + c) * (a + c) + b2;
    const double smax = std::sqrt(0.5 * (a * a + b2 + c * c + std::sqrt(s1 * s2)));
    return smax == 0.0 ? 0.0 : (a * c) / smax;
}

} // namespace detail

struct FieldWitness {
    enum class Family { phi, psi };
    Family family = Family::phi;
    int i = 0, j = 0;
};

struct FieldCheckResult {
    bool ok = false;
    /// Smallest degeneracy margin over all tests: for each index pair the
    /// largest diagonal difference, for each covering pair the smallest
    /// singular value of the stacked (v; w) matrix. Infinite when n = 1
    /// leaves nothing to test.
    double margin = std::numeric_limits<double>::infinity();
    std::vector<FieldWitness> failures;
};

/// k = 1 generation criterion as a numerical predicate: every index pair must
/// see a diagonal difference above tol in some matrix, and for every covering
/// pair the 2 x m matrix with rows v, w must keep both singular values above
/// tol. Failures name the vanished polynomial family: phi (equal diagonals)
/// or psi (rank <= 1 minors).
inline FieldCheckResult check_criterion_field(const RealTuple& t, double tol) {
    if (tol <= 0)
        throw Error("InvalidShape", "tolerance must be positive");
    const Poset& poset = t.poset;
    const int n = poset.size();
    FieldCheckResult res;
    res.ok = true;

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            double best = 0;
            for (int alpha = 1; alpha <= t.m; ++alpha) {
                double d = std::abs(t.entry(alpha, i, i) - t.entry(alpha, j, j));
                if (d > best)
                    best = d;
            }
            if (best < res.margin)
                res.margin = best;
            if (best <= tol) {
                res.ok = false;
                res.failures.push_back({FieldWitness::Family::phi, i, j});
            }
        }

    for (auto [i, j] : poset.cover_data().covers) {
        std::vector<std::complex<double>> v, w;
        v.reserve(static_cast<std::size_t>(t.m));
        w.reserve(static_cast<std::size_t>(t.m));
        for (int alpha = 1; alpha <= t.m; ++alpha) {
            v.push_back(t.entry(alpha, i, i) - t.entry(alpha, j, j));
            w.push_back(t.entry(alpha, i, j));
        }
        const double smin = detail::sigma_min_2rows(std::move(v), std::move(w));
        if (smin < res.margin)
            res.margin = smin;
        if (smin <= tol) {
            res.ok = false;
            res.failures.push_back({FieldWitness::Family::psi, i, j});
        }
    }
    return res;
}

struct McOptions {
    double tol = 1e-9;
    unsigned threads = 1;
    bool collect_margins = false;
};

struct McReport {
    std::uint64_t trials = 0;
    std::uint64_t passes = 0;
    Rational fraction = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    std::vector<double> margins; // per trial, only when collected
};

/// Samples `trials` uniform sphere tuples and evaluates the field criterion
/// on each. Trials use seeds derived from (seed, trial index), so the report
/// is independent of the thread partition.
inline McReport monte_carlo(const Poset& poset, ScalarField field, int m, std::uint64_t trials,
                            std::uint64_t seed, const McOptions& opts = {}) {
    if (trials < 1)
        throw Error("InvalidShape", "need at least one trial");
    McReport rep;
    rep.trials = trials;
    rep.seed = seed;
    if (opts.collect_margins)
        rep.margins.assign(trials, 0.0);

    const unsigned nthreads = opts.threads == 0 ? 1 : opts.threads;
    std::vector<std::uint64_t> passes(nthreads, 0);
    std::vector<double> minmarg(nthreads, std::numeric_limits<double>::infinity());

    auto worker = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            RealTuple t = sample_sphere(poset, field, m, derive_seed(seed, trial));
            FieldCheckResult r = check_criterion_field(t, opts.tol);
            if (r.ok)
                ++passes[w];
            if (r.margin < minmarg[w])
                minmarg[w] = r.margin;
            if (opts.collect_margins)
                rep.margins[trial] = r.margin;
        }
    };

    if (nthreads == 1 || trials < 2 * nthreads) {
        worker(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + nthreads - 1) / nthreads;
        for (unsigned w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w]() {
                const std::uint64_t lo = w * chunk;
                const std::uint64_t hi = lo + chunk < trials ? lo + chunk : trials;
                if (lo < hi)
                    worker(w, lo, hi);
            });
        for (auto& th : pool)
            th.join();
    }

    for (unsigned w = 0; w < nthreads; ++w) {
        rep.passes += passes[w];
        if (minmarg[w] < rep.min_margin)
            rep.min_margin = minmarg[w];
    }
    rep.fraction = Rational(rep.passes, rep.trials);
    return rep;
}

} // namespace incgen
