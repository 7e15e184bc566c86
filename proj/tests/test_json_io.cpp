#include "incgen/json_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>

using namespace incgen;

TEST_CASE("element serialization forms") {
    BaseRing z8 = BaseRing::parse("Z/8");
    CHECK(elem_to_json(z8.integer_elem(5)) == Json(5));
    CHECK(elem_from_json(z8, Json(5)) == z8.integer_elem(5));
    CHECK(elem_from_json(z8, Json(-3)) == z8.integer_elem(5));

    BaseRing gf4 = BaseRing::parse("GF(4)");
    FieldSpec f = gf4.components()[0].field;
    RingElem x = gf4.from_matrix({f.from_coeffs({0, 1})});
    Json jx = elem_to_json(x);
    CHECK(jx == Json::parse("[[0,1]]"));
    CHECK(elem_from_json(gf4, jx) == x);
    CHECK(elem_from_json(gf4, Json::parse("[1]")) == gf4.one()); // bare scalar accepted

    BaseRing m2 = BaseRing::parse("M(2,GF(2))");
    RingElem e12 = m2.from_matrix(fq_mat_unit(f, 2, 1, 2));
    CHECK(elem_to_json(e12) == Json::parse("[[0],[1],[0],[0]]"));

    BaseRing prod = BaseRing::parse("GF(2)xGF(3)");
    RingElem pe = prod.from_components(
        {prod.component_ring(1).integer_elem(1), prod.component_ring(2).integer_elem(2)});
    Json jp = elem_to_json(pe);
    CHECK(jp == Json::parse("[[[1]],[[2]]]"));
    CHECK(elem_from_json(prod, jp) == pe);
}

TEST_CASE("element round trip across the catalog") {
    std::mt19937_64 rng(13);
    for (const char* spec : {"GF(2)", "GF(9)", "M(2,GF(4))", "GF(2)xM(2,GF(3))", "Z/27"}) {
        BaseRing r = BaseRing::parse(spec);
        std::uint64_t card = r.cardinality_u64();
        for (int t = 0; t < 50; ++t) {
            RingElem a = r.element_from_index(rng() % card);
            CHECK(elem_from_json(r, elem_to_json(a)) == a);
        }
    }
}

TEST_CASE("malformed elements are rejected") {
    BaseRing gf4 = BaseRing::parse("GF(4)");
    CHECK_THROWS_AS(elem_from_json(gf4, Json::parse("[[0,1,1]]")), Error); // too many coefficients
    CHECK_THROWS_AS(elem_from_json(gf4, Json::parse("[[0],[1]]")), Error); // wrong arity
    CHECK_THROWS_AS(elem_from_json(gf4, Json::parse("\"x\"")), Error);
    BaseRing z4 = BaseRing::parse("Z/4");
    CHECK_THROWS_AS(elem_from_json(z4, Json::parse("[1]")), Error);
}

TEST_CASE("matrix serialization round trip and off-pattern policy") {
    Poset c2 = Poset::chain(2);
    BaseRing gf2 = BaseRing::parse("GF(2)");
    IncMatrix m = IncMatrix::unit(c2, gf2, 1, 2) + IncMatrix::identity(c2, gf2);
    Json j = matrix_to_json(m);
    CHECK(matrix_from_json(c2, gf2, j) == m);

    // off-pattern zero is fine, nonzero is an error
    Json ok = Json::parse("[[[1],[0]],[[0],[1]]]");
    CHECK(matrix_from_json(Poset::antichain(2), gf2, ok) ==
          IncMatrix::identity(Poset::antichain(2), gf2));
    Json bad = Json::parse("[[[1],[1]],[[0],[1]]]");
    CHECK_THROWS_MATCHES(matrix_from_json(Poset::antichain(2), gf2, bad), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == "OffPatternEntry";
                         }));
}

TEST_CASE("tuple files load from poset text or inline pairs") {
    Json j = Json::parse(R"json({
        "poset": "n 2\nrel 1 2\n",
        "ring": "GF(2)",
        "matrices": [
            [[[1],[1]],[[0],[0]]],
            [[[0],[1]],[[0],[0]]]
        ]
    })json");
    TupleFile t = tuple_file_from_json(j);
    CHECK(t.poset == Poset::chain(2));
    CHECK(t.ring == BaseRing::parse("GF(2)"));
    REQUIRE(t.matrices.size() == 2);
    CHECK(check_generates(t.matrices).verdict);

    Json inline_poset = Json::parse(R"json({
        "poset": {"n": 2, "rel": [[1, 2]]},
        "ring": "GF(2)",
        "matrices": []
    })json");
    CHECK(tuple_file_from_json(inline_poset).poset == Poset::chain(2));

    Json round = tuple_file_to_json(t);
    TupleFile t2 = tuple_file_from_json(round);
    CHECK(t2.poset == t.poset);
    CHECK(t2.ring == t.ring);
    CHECK(t2.matrices == t.matrices);

    CHECK_THROWS_AS(tuple_file_from_json(Json::parse(R"json({"ring":"GF(2)"})json")), Error);
}

TEST_CASE("reports serialize with witnesses and exact numbers") {
    Poset c2 = Poset::chain(2);
    BaseRing gf2 = BaseRing::parse("GF(2)");
    std::vector<IncMatrix> bad = {IncMatrix::unit(c2, gf2, 1, 2)};
    Json j = gen_report_to_json(check_generates(bad));
    CHECK(j["verdict"] == false);
    CHECK(j["failed_row_pair"] == Json::array({1, 2}));
    CHECK(j["ring"] == "GF(2)");
    CHECK(j["per_component"].is_null());

    Json cj = count_report_to_json(count_gen(c2, gf2, 2));
    CHECK(cj["count"] == "24");
    CHECK(cj["total"] == "64");
    CHECK(cj["probability"]["num"] == "3");
    CHECK(cj["probability"]["den"] == "8");
    CHECK(cj["mgen"] == 2);

    Json pj = cover_data_to_json(parse_poset("n 3\nrel 1 3\nrel 2 3\n"));
    CHECK(pj["rho"] == 5);
    CHECK(pj["covers"] == Json::parse("[[1,3],[2,3]]"));

    McReport mc = monte_carlo(Poset::chain(2), ScalarField::real, 1, 10, 3);
    Json mj = mc_report_to_json(mc);
    CHECK(mj["passes"] == 0);
    CHECK(mj["fraction"]["num"] == "0");
    CHECK(mj["seed"] == 3);
    CHECK(mj["generator"] == "bm-mt19937_64-v1");

    Json rj = radical_to_json(radical_data(c2, gf2));
    CHECK(rj["size"] == "2");
    CHECK(rj["basis"].size() == 1);
}

TEST_CASE("serialization is byte stable") {
    Poset c2 = Poset::chain(2);
    BaseRing z4 = BaseRing::parse("Z/4");
    std::string a = count_report_to_json(count_gen(c2, z4, 2)).dump(2);
    std::string b = count_report_to_json(count_gen(c2, z4, 2)).dump(2);
    CHECK(a == b);

    McOptions opts;
    std::string m1 = mc_report_to_json(monte_carlo(c2, ScalarField::real, 2, 50, 11, opts)).dump(2);
    opts.threads = 3;
    std::string m2 = mc_report_to_json(monte_carlo(c2, ScalarField::real, 2, 50, 11, opts)).dump(2);
    CHECK(m1 == m2);
}
