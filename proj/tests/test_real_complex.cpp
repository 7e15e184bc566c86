#include "incgen/real_complex.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

using namespace incgen;

namespace {

// Exact-rational oracle: the unital subalgebra spanned by {I, A_1, ..., A_m}
// closed under products has dimension rho iff the tuple generates. Matrices
// are stored as length-rho rational vectors over the support.
using RatMat = std::vector<Rational>;

RatMat rat_identity(const Poset& p) {
    RatMat m(static_cast<std::size_t>(p.rho()), Rational(0));
    for (int i = 1; i <= p.size(); ++i)
        m[static_cast<std::size_t>(p.pair_index(i, i))] = 1;
    return m;
}

RatMat rat_mul(const Poset& p, const RatMat& a, const RatMat& b) {
    RatMat out(static_cast<std::size_t>(p.rho()), Rational(0));
    for (int s = 0; s < p.rho(); ++s) {
        auto [i, j] = p.pairs()[static_cast<std::size_t>(s)];
        Rational acc = 0;
        for (int k = 1; k <= p.size(); ++k) {
            int u = p.pair_index(i, k), v = p.pair_index(k, j);
            if (u >= 0 && v >= 0)
                acc += a[static_cast<std::size_t>(u)] * b[static_cast<std::size_t>(v)];
        }
        out[static_cast<std::size_t>(s)] = acc;
    }
    return out;
}

struct RatSpan {
    std::size_t len;
    std::vector<RatMat> rows;
    std::vector<std::size_t> lead;

    explicit RatSpan(std::size_t len_) : len(len_) {}

    bool insert(RatMat v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (v[lead[r]] != 0) {
                Rational coef = v[lead[r]];
                for (std::size_t s = 0; s < len; ++s)
                    v[s] -= coef * rows[r][s];
            }
        }
        std::size_t l = 0;
        while (l < len && v[l] == 0)
            ++l;
        if (l == len)
            return false;
        Rational inv = v[l];
        for (auto& x : v)
            x /= inv;
        rows.push_back(std::move(v));
        lead.push_back(l);
        return true;
    }
};

bool generates_over_Q(const Poset& p, const std::vector<RatMat>& tuple) {
    RatSpan span(static_cast<std::size_t>(p.rho()));
    std::vector<RatMat> basis;
    auto add = [&](const RatMat& m) {
        if (span.insert(m)) {
            basis.push_back(m);
            return true;
        }
        return false;
    };
    add(rat_identity(p));
    for (const auto& a : tuple)
        add(a);
    bool grew = true;
    while (grew && span.rows.size() < static_cast<std::size_t>(p.rho())) {
        grew = false;
        std::vector<RatMat> snapshot = basis;
        for (const auto& x : snapshot)
            for (const auto& y : snapshot)
                if (add(rat_mul(p, x, y)))
                    grew = true;
    }
    return span.rows.size() == static_cast<std::size_t>(p.rho());
}

RealTuple tuple_from_entries(const Poset& p, int m, const std::vector<std::vector<double>>& flat) {
    std::vector<double> coords;
    for (const auto& mat : flat)
        coords.insert(coords.end(), mat.begin(), mat.end());
    return RealTuple::normalized(p, ScalarField::real, m, std::move(coords));
}

} // namespace

TEST_CASE("two triangular matrices generate T_2 over the reals") {
    Poset c2 = Poset::chain(2);
    // support order over chain(2): (1,1), (1,2), (2,2)
    RealTuple t = tuple_from_entries(c2, 2, {{1, 1, 0}, {0, 1, 0}});
    FieldCheckResult res = check_criterion_field(t, 1e-9);
    CHECK(res.ok);
    CHECK(res.margin > 0.1);

    // the exact-rational closure agrees
    CHECK(generates_over_Q(c2, {{1, 1, 0}, {0, 1, 0}}));
}

TEST_CASE("all-scalar tuples never generate") {
    Poset c2 = Poset::chain(2);
    RealTuple t = tuple_from_entries(c2, 2, {{1, 0, 1}, {2, 0, 2}});
    FieldCheckResult res = check_criterion_field(t, 1e-9);
    CHECK_FALSE(res.ok);
    REQUIRE_FALSE(res.failures.empty());
    CHECK(res.failures[0].family == FieldWitness::Family::phi);
    CHECK(generates_over_Q(c2, {{1, 0, 1}, {2, 0, 2}}) == false);
}

TEST_CASE("a single matrix never generates a chain: rank cannot reach 2") {
    Poset c2 = Poset::chain(2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        RealTuple t = sample_sphere(c2, ScalarField::real, 1, rng());
        FieldCheckResult res = check_criterion_field(t, 1e-9);
        CHECK_FALSE(res.ok);
        bool has_psi = false;
        for (const auto& f : res.failures)
            has_psi |= f.family == FieldWitness::Family::psi;
        CHECK(has_psi);
    }
}

TEST_CASE("constructed members of the psi family and their perturbations") {
    Poset c2 = Poset::chain(2);
    // w = 2v on the only cover: v = (1, 2), w = (2, 4)
    RealTuple degenerate = tuple_from_entries(c2, 2, {{1, 2, 0}, {2, 4, 0}});
    FieldCheckResult res = check_criterion_field(degenerate, 1e-9);
    CHECK_FALSE(res.ok);
    REQUIRE(res.failures.size() == 1);
    CHECK(res.failures[0].family == FieldWitness::Family::psi);
    CHECK(res.failures[0].i == 1);
    CHECK(res.failures[0].j == 2);
    CHECK(res.margin <= 1e-12);
    CHECK(generates_over_Q(c2, {{1, 2, 0}, {2, 4, 0}}) == false);

    // a visible perturbation restores independence
    RealTuple fixed = tuple_from_entries(c2, 2, {{1, 2, 0}, {2, 4.5, 0}});
    CHECK(check_criterion_field(fixed, 1e-9).ok);
    CHECK(generates_over_Q(c2, {{1, 2, 0}, {2, Rational(9, 2), 0}}));

    // a perturbation below tol keeps the verdict false
    RealTuple tiny = tuple_from_entries(c2, 2, {{1, 2, 0}, {2, 4 + 1e-13, 0}});
    CHECK_FALSE(check_criterion_field(tiny, 1e-9).ok);
}

TEST_CASE("sphere sampling is deterministic, unit norm, and centered") {
    Poset c3 = Poset::chain(3);
    RealTuple a = sample_sphere(c3, ScalarField::real, 2, 12345);
    RealTuple b = sample_sphere(c3, ScalarField::real, 2, 12345);
    CHECK(a.coords == b.coords);
    CHECK(a.coords.size() == 12);

    double norm2 = 0;
    for (double x : a.coords)
        norm2 += x * x;
    CHECK(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12);

    RealTuple c = sample_sphere(c3, ScalarField::complex, 2, 12345);
    CHECK(c.coords.size() == 24);

    // empirical first and second moments over many samples
    const int samples = 100000;
    const std::size_t dim = 12;
    std::vector<double> mean(dim, 0.0), second(dim, 0.0);
    for (int s = 0; s < samples; ++s) {
        RealTuple t = sample_sphere(c3, ScalarField::real, 2, derive_seed(777, s));
        for (std::size_t i = 0; i < dim; ++i) {
            mean[i] += t.coords[i];
            second[i] += t.coords[i] * t.coords[i];
        }
    }
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(std::abs(mean[i] / samples) < 0.02);
    for (std::size_t i = 0; i < dim; ++i) {
        double m2 = second[i] / samples;
        CHECK(m2 > (1.0 / dim) * 0.8);
        CHECK(m2 < (1.0 / dim) * 1.2);
    }
}

TEST_CASE("verdict is invariant under exact rescaling") {
    Poset c3 = Poset::chain(3);
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        RealTuple t = sample_sphere(c3, ScalarField::real, 2, rng());
        FieldCheckResult base = check_criterion_field(t, 1e-9);
        for (double lambda : {2.0, 0.5, 8.0}) {
            RealTuple scaled = t;
            for (auto& x : scaled.coords)
                x *= lambda; // no longer unit norm; the criterion does not care
            FieldCheckResult s = check_criterion_field(scaled, 1e-9 * lambda);
            CHECK(s.ok == base.ok);
            CHECK(s.margin == base.margin * lambda);
        }
    }
}

TEST_CASE("criterion agrees with the rational closure on random integer tuples") {
    std::mt19937_64 rng(91);
    Poset v = parse_poset("n 3\nrel 1 3\nrel 2 3\n");
    Poset c3 = Poset::chain(3);
    for (const Poset& p : {v, c3}) {
        for (int trial = 0; trial < 60; ++trial) {
            int m = 2;
            std::vector<RatMat> rat(m, RatMat(static_cast<std::size_t>(p.rho())));
            std::vector<std::vector<double>> dbl(m, std::vector<double>(static_cast<std::size_t>(p.rho())));
            for (int alpha = 0; alpha < m; ++alpha)
                for (int s = 0; s < p.rho(); ++s) {
                    int val = static_cast<int>(rng() % 5) - 2;
                    rat[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(s)] = val;
                    dbl[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(s)] = val;
                }
            bool all_zero = true;
            for (const auto& matvals : dbl)
                for (double x : matvals)
                    all_zero &= x == 0.0;
            if (all_zero)
                continue;
            RealTuple t = tuple_from_entries(p, m, dbl);
            CHECK(check_criterion_field(t, 1e-9).ok == generates_over_Q(p, rat));
        }
    }
}

TEST_CASE("monte carlo over chain(3): fraction 1 at m = 2, fraction 0 at m = 1") {
    Poset c3 = Poset::chain(3);
    McReport two = monte_carlo(c3, ScalarField::real, 2, 500, 2024);
    CHECK(two.passes == 500);
    CHECK(two.fraction == 1);
    CHECK(two.min_margin > 1e-6);

    McReport cplx = monte_carlo(c3, ScalarField::complex, 2, 500, 2024);
    CHECK(cplx.fraction == 1);

    McReport one = monte_carlo(Poset::chain(2), ScalarField::real, 1, 100, 7);
    CHECK(one.passes == 0);
    CHECK(one.fraction == 0);
    CHECK(one.min_margin == 0.0);
}

TEST_CASE("monte carlo is independent of the thread partition") {
    Poset c3 = Poset::chain(3);
    McOptions serial;
    McOptions quad;
    quad.threads = 4;
    McReport a = monte_carlo(c3, ScalarField::real, 2, 400, 99, serial);
    McReport b = monte_carlo(c3, ScalarField::real, 2, 400, 99, quad);
    CHECK(a.passes == b.passes);
    CHECK(a.min_margin == b.min_margin);
    CHECK(a.fraction == b.fraction);

    McOptions collect;
    collect.collect_margins = true;
    McOptions collect4 = collect;
    collect4.threads = 4;
    McReport c = monte_carlo(c3, ScalarField::real, 2, 200, 5, collect);
    McReport d = monte_carlo(c3, ScalarField::real, 2, 200, 5, collect4);
    CHECK(c.margins == d.margins);
}

TEST_CASE("one point posets have nothing to test") {
    McReport rep = monte_carlo(Poset::chain(1), ScalarField::real, 2, 10, 1);
    CHECK(rep.fraction == 1);
    CHECK(std::isinf(rep.min_margin));
}
