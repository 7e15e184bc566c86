#include "incgen/generation.hpp"

#include "incgen/counting.hpp"
#include "support/test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>

using namespace incgen;

namespace {

IncMatrix diag(const Poset& p, const BaseRing& r, std::vector<long long> values) {
    IncMatrix m(p, r);
    for (int i = 1; i <= p.size(); ++i)
        m.set(i, i, r.integer_elem(values[static_cast<std::size_t>(i - 1)]));
    return m;
}

std::vector<IncMatrix> tuple_from_index(const Poset& p, const BaseRing& r, int m, std::uint64_t idx) {
    std::vector<IncMatrix> tuple;
    const std::uint64_t card = incidence_matrix_count(p, r).convert_to<std::uint64_t>();
    for (int alpha = 0; alpha < m; ++alpha) {
        tuple.push_back(matrix_from_index(p, r, idx % card));
        idx /= card;
    }
    return tuple;
}

} // namespace

TEST_CASE("criterion on the chain over GF(2)") {
    Poset c2 = Poset::chain(2);
    BaseRing gf2 = BaseRing::parse("GF(2)");
    IncMatrix a1 = IncMatrix::unit(c2, gf2, 1, 1) + IncMatrix::unit(c2, gf2, 1, 2);
    IncMatrix a2 = IncMatrix::unit(c2, gf2, 1, 2);

    std::vector<IncMatrix> good = {a1, a2};
    GenReport rep = check_criterion_simple(good);
    CHECK(rep.verdict);
    CHECK_FALSE(rep.failed_row_pair.has_value());
    CHECK_FALSE(rep.failed_cover.has_value());
    CHECK(rep.delta[0][0] == gf2.one());
    CHECK(rep.delta[1][0] == gf2.zero());
    CHECK(generates_bruteforce(good));

    std::vector<IncMatrix> bad = {a2};
    GenReport rep2 = check_criterion_simple(bad);
    CHECK_FALSE(rep2.verdict);
    CHECK(rep2.failed_row_pair == std::make_pair(1, 2));
    CHECK_FALSE(generates_bruteforce(bad));
}

TEST_CASE("no single matrix generates a chain over a field") {
    // a 2 x (k^2) stack cannot reach rank 2 at m = 1, k = 1
    for (const char* spec : {"GF(2)", "GF(3)", "GF(4)"}) {
        Poset c2 = Poset::chain(2);
        BaseRing r = BaseRing::parse(spec);
        std::uint64_t total = incidence_matrix_count(c2, r).convert_to<std::uint64_t>();
        for (std::uint64_t i = 0; i < total; ++i) {
            std::vector<IncMatrix> t = {matrix_from_index(c2, r, i)};
            CHECK_FALSE(check_criterion_simple(t).verdict);
        }
    }
}

TEST_CASE("check_generates over Z/4 reduces mod the radical") {
    Poset a2 = Poset::antichain(2);
    BaseRing z4 = BaseRing::parse("Z/4");

    std::vector<IncMatrix> good = {diag(a2, z4, {1, 0})};
    GenReport rep = check_generates(good);
    CHECK(rep.verdict);
    // delta lives over the residue field GF(2)
    CHECK(rep.delta[0][0].ring() == BaseRing::parse("GF(2)"));
    CHECK(generates_bruteforce(good));

    std::vector<IncMatrix> bad = {diag(a2, z4, {2, 0})};
    GenReport rep2 = check_generates(bad);
    CHECK_FALSE(rep2.verdict);
    CHECK(rep2.failed_row_pair == std::make_pair(1, 2));
    CHECK_FALSE(generates_bruteforce(bad));
}

TEST_CASE("check_generates over a product ring tests every component") {
    Poset a2 = Poset::antichain(2);
    BaseRing prod = BaseRing::parse("GF(2)xGF(3)");
    BaseRing c1 = prod.component_ring(1), c2 = prod.component_ring(2);

    IncMatrix m(a2, prod);
    m.set(1, 1, prod.from_components({c1.integer_elem(1), c2.integer_elem(0)}));
    m.set(2, 2, prod.from_components({c1.integer_elem(0), c2.integer_elem(1)}));
    std::vector<IncMatrix> t = {m};
    GenReport rep = check_generates(t);
    CHECK(rep.verdict);
    REQUIRE(rep.per_component.size() == 2);
    CHECK(rep.per_component[0].verdict);
    CHECK(rep.per_component[1].verdict);
    CHECK(generates_bruteforce(t));

    // drop the separation in the second component only
    IncMatrix m2(a2, prod);
    m2.set(1, 1, prod.from_components({c1.integer_elem(1), c2.integer_elem(1)}));
    m2.set(2, 2, prod.from_components({c1.integer_elem(0), c2.integer_elem(1)}));
    std::vector<IncMatrix> t2 = {m2};
    GenReport rep2 = check_generates(t2);
    CHECK_FALSE(rep2.verdict);
    CHECK(rep2.per_component[0].verdict);
    CHECK_FALSE(rep2.per_component[1].verdict);
    CHECK(rep2.failed_row_pair == std::make_pair(1, 2));
    CHECK_FALSE(generates_bruteforce(t2));
}

TEST_CASE("one point posets are generated by the scalars alone") {
    Poset c1 = Poset::chain(1);
    for (const char* spec : {"GF(2)", "M(2,GF(2))", "GF(2)xGF(3)", "Z/8"}) {
        BaseRing r = BaseRing::parse(spec);
        std::uint64_t card = r.cardinality_u64();
        std::mt19937_64 rng(1);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<IncMatrix> t = {
                IncMatrix::scalar(c1, r.element_from_index(rng() % card))};
            CHECK(check_generates(t).verdict);
        }
    }
}

TEST_CASE("criterion equals oracle on a reduced grid") {
    // the full grid runs in the acceptance suite; a representative slice here
    std::vector<Poset> posets = {Poset::chain(2), Poset::antichain(2),
                                 parse_poset("n 3\nrel 1 3\nrel 2 3\n")};
    for (const char* spec : {"GF(2)", "GF(3)", "Z/4", "GF(2)xGF(3)"}) {
        BaseRing ring = BaseRing::parse(spec);
        for (const Poset& poset : posets) {
            Int ambient = incidence_matrix_count(poset, ring);
            for (int m = 1; m <= 2; ++m) {
                if (int_pow(ambient, static_cast<std::uint64_t>(m)) > (Int(1) << 12))
                    continue;
                std::uint64_t total = int_pow(ambient, static_cast<std::uint64_t>(m))
                                          .convert_to<std::uint64_t>();
                ClosureEngine engine(poset, ring);
                for (std::uint64_t idx = 0; idx < total; ++idx) {
                    auto tuple = tuple_from_index(poset, ring, m, idx);
                    CHECK(check_generates(tuple).verdict == engine.generates(tuple));
                }
            }
        }
    }
}

TEST_CASE("scalar translation invariance") {
    std::mt19937_64 rng(41);
    Poset v = parse_poset("n 3\nrel 1 3\nrel 2 3\n");
    for (const char* spec : {"GF(2)", "GF(3)", "Z/4", "GF(2)xGF(3)"}) {
        BaseRing r = BaseRing::parse(spec);
        std::uint64_t ringsize = r.cardinality_u64();
        std::uint64_t card = incidence_matrix_count(v, r).convert_to<std::uint64_t>();
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<IncMatrix> tuple = {matrix_from_index(v, r, rng() % card),
                                            matrix_from_index(v, r, rng() % card)};
            bool before = check_generates(tuple).verdict;
            std::vector<IncMatrix> shifted;
            for (const auto& a : tuple)
                shifted.push_back(a + IncMatrix::scalar(v, r.element_from_index(rng() % ringsize)));
            CHECK(check_generates(shifted).verdict == before);
        }
    }
}

TEST_CASE("permutation equivariance") {
    std::mt19937_64 rng(43);
    Poset c3 = Poset::chain(3);
    BaseRing gf2 = BaseRing::parse("GF(2)");
    std::uint64_t card = incidence_matrix_count(c3, gf2).convert_to<std::uint64_t>();
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<IncMatrix> tuple = {matrix_from_index(c3, gf2, rng() % card),
                                        matrix_from_index(c3, gf2, rng() % card),
                                        matrix_from_index(c3, gf2, rng() % card)};
        bool base = check_generates(tuple).verdict;
        std::vector<IncMatrix> perm = tuple;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(check_generates(perm).verdict == base);
    }
}

TEST_CASE("wrong ring kinds are refused by the simple criterion") {
    Poset c2 = Poset::chain(2);
    std::vector<IncMatrix> t = {IncMatrix(c2, BaseRing::parse("Z/4"))};
    CHECK_THROWS_MATCHES(check_criterion_simple(t), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "WrongRingKind"; }));
    CHECK_THROWS_AS(check_generates({}), Error);
}
