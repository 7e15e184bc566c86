#include "incgen/poset.hpp"

#include "support/test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace incgen;

TEST_CASE("identity relation gives the antichain") {
    std::vector<std::uint8_t> rel = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    Poset p = validate_relation(3, rel);
    CHECK(p == Poset::antichain(3));
    CHECK(p.rho() == 3);
    CHECK(p.cover_count() == 0);
    CHECK(p.cover_data().covers.empty());
}

TEST_CASE("full upper triangular relation gives the chain") {
    std::vector<std::uint8_t> rel = {1, 1, 1, 0, 1, 1, 0, 0, 1};
    Poset p = validate_relation(3, rel);
    CHECK(p == Poset::chain(3));
    CHECK(p.rho() == 6);
    CHECK(p.cover_count() == 2);
    CHECK(p.cover_data().covers == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
}

TEST_CASE("axiom violations name a witness") {
    std::vector<std::uint8_t> sym = {1, 1, 1, 1};
    try {
        validate_relation(2, sym);
        FAIL("expected NotAntisymmetric");
    } catch (const Error& e) {
        CHECK(e.code() == "NotAntisymmetric");
        CHECK(std::string(e.what()) == "NotAntisymmetric(1,2)");
    }

    std::vector<std::uint8_t> irrefl = {0, 0, 0, 1};
    try {
        validate_relation(2, irrefl);
        FAIL("expected NotReflexive");
    } catch (const Error& e) {
        CHECK(e.code() == "NotReflexive");
        CHECK(std::string(e.what()) == "NotReflexive(1)");
    }

    std::vector<std::uint8_t> intrans = {1, 1, 0, 0, 1, 1, 0, 0, 1};
    try {
        validate_relation(3, intrans);
        FAIL("expected NotTransitive");
    } catch (const Error& e) {
        CHECK(e.code() == "NotTransitive");
        CHECK(std::string(e.what()) == "NotTransitive(1,2,3)");
    }
}

TEST_CASE("parse_poset closes declared pairs") {
    Poset chain2 = parse_poset("n 2\nrel 1 2\n");
    CHECK(chain2 == Poset::chain(2));
    CHECK(chain2.rho() == 3);

    Poset v = parse_poset("# a comment\nn 3\nrel 1 3\nrel 2 3\n");
    CHECK(v.rho() == 5);
    CHECK(v.cover_data().covers == std::vector<std::pair<int, int>>{{1, 3}, {2, 3}});

    // transitivity is filled in
    Poset c3 = parse_poset("n 3\nrel 1 2\nrel 2 3\n");
    CHECK(c3 == Poset::chain(3));
}

TEST_CASE("parse_poset error paths") {
    CHECK_THROWS_MATCHES(parse_poset("n 2\nrel 1 2\nrel 2 1\n"), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "NotAntisymmetric"; }));
    CHECK_THROWS_MATCHES(parse_poset("n 2\nrel 1 3\n"), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "IndexOutOfRange"; }));
    CHECK_THROWS_MATCHES(parse_poset("m 2\n"), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "SyntaxError"; }));
    CHECK_THROWS_MATCHES(parse_poset("n 2\nrelate 1 2\n"), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "SyntaxError"; }));
    CHECK_THROWS_MATCHES(parse_poset(""), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "SyntaxError"; }));
}

TEST_CASE("standard posets") {
    CHECK(standard_poset(PosetKind::chain, 2).rho() == 3);
    CHECK(standard_poset(PosetKind::chain, 2).cover_count() == 1);
    CHECK(standard_poset(PosetKind::antichain, 5).rho() == 5);
    CHECK(standard_poset(PosetKind::antichain, 5).cover_count() == 0);
    Poset one = standard_poset(PosetKind::chain, 1);
    CHECK(one.rho() == 1);
    CHECK(one.cover_count() == 0);
}

TEST_CASE("writer round trip is bit exact") {
    for (const Poset& p : test_util::all_posets(3)) {
        std::string text = write_poset(p);
        CHECK(parse_poset(text) == p);
        CHECK(write_poset(parse_poset(text)) == text);
    }
    CHECK(write_poset(Poset::chain(2)) == "n 2\nrel 1 2\n");
}

TEST_CASE("covers regenerate the order and rho counts strict pairs") {
    for (int n = 1; n <= 3; ++n) {
        for (const Poset& p : test_util::all_posets(n)) {
            // closure of covers + identity equals leq
            std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) * n, 0);
            for (int i = 1; i <= n; ++i)
                rel[static_cast<std::size_t>(i - 1) * n + (i - 1)] = 1;
            for (auto [i, j] : p.cover_data().covers)
                rel[static_cast<std::size_t>(i - 1) * n + (j - 1)] = 1;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    if (rel[static_cast<std::size_t>(i) * n + k])
                        for (int j = 0; j < n; ++j)
                            if (rel[static_cast<std::size_t>(k) * n + j])
                                rel[static_cast<std::size_t>(i) * n + j] = 1;
            CHECK(validate_relation(n, rel) == p);

            int strict = 0;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (i != j && p.leq(i, j))
                        ++strict;
            CHECK(p.rho() == n + strict);
            if (strict == 0)
                CHECK(p.cover_count() == 0);
        }
        CHECK(Poset::chain(n).cover_count() == n - 1);
    }
}

TEST_CASE("exhaustive n <= 3: validation agrees with a direct axiom scan") {
    for (int n = 1; n <= 3; ++n) {
        std::size_t cells = static_cast<std::size_t>(n) * n;
        for (std::uint64_t mask = 0; mask < (1ull << cells); ++mask) {
            std::vector<std::uint8_t> rel(cells, 0);
            for (std::size_t b = 0; b < cells; ++b)
                rel[b] = (mask >> b) & 1;
            bool valid = test_util::is_partial_order(n, rel);
            if (valid) {
                Poset p = validate_relation(n, rel);
                auto direct = test_util::cover_scan(n, rel);
                CHECK(p.cover_data().covers == direct.covers);
                CHECK(p.rho() == direct.rho);
                CHECK(p.cover_count() == direct.c);
            } else {
                CHECK_THROWS_AS(validate_relation(n, rel), Error);
            }
        }
    }
}
