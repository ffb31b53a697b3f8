#include <doctest.h>

#include "ktile/io.hpp"

using namespace ktile;

TEST_CASE("polytope JSON round trip") {
    for (const char* name : {"square", "oct7", "cube", "cell24"}) {
        Polytope P = fixture_polytope(name);
        json j = polytope_to_json(P);
        Polytope Q = polytope_from_json(j);
        CHECK(Q.dim() == P.dim());
        CHECK(Q.vertices() == P.vertices());
        CHECK(Q.volume() == P.volume());
    }
}

TEST_CASE("fractions must be strings") {
    json j;
    j["dim"] = 2;
    j["vertices"] = json::parse(R"([["0","0"],["1","0"],["0","1"],[1,1]])");
    CHECK_THROWS_AS(polytope_from_json(j), ParseError);

    json f = 0.5;
    CHECK_THROWS_AS(fraction_from_json(f, "x"), ParseError);
    CHECK(fraction_from_json(json("-3/2"), "x") == Rat(-3, 2));
}

TEST_CASE("malformed polytope documents") {
    CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"vertices":[]})")), ParseError);
    CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"dim":2})")), ParseError);
    CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"dim":"2","vertices":[]})")),
                    ParseError);
    // wrong arity
    CHECK_THROWS_AS(
        polytope_from_json(json::parse(R"({"dim":2,"vertices":[["0","0","0"]]})")),
        ParseError);
    // bad fraction strings
    CHECK_THROWS_AS(
        polytope_from_json(json::parse(R"({"dim":1,"vertices":[["0.5"]]})")), ParseError);
    CHECK_THROWS_AS(
        polytope_from_json(json::parse(R"({"dim":1,"vertices":[["1/0"]]})")), ParseError);
}

TEST_CASE("multiset JSON round trip and validation") {
    TranslationMultiset m = TranslationMultiset::integerLattice(2);
    LatticeComponent c = m.components[0];
    c.offset = {Rat(1, 2), Rat(1, 2)};
    c.multiplicity = 2;
    m.components.push_back(c);
    json j = multiset_to_json(m);
    TranslationMultiset back = multiset_from_json(j);
    REQUIRE(back.components.size() == 2);
    CHECK(back.components[1].offset == c.offset);
    CHECK(back.components[1].multiplicity == 2);
    CHECK(back.commonPeriod() == m.commonPeriod());

    // missing offset defaults to the origin
    json plain = json::parse(R"({"components":[{"basis":[["1","0"],["0","1"]]}]})");
    TranslationMultiset p = multiset_from_json(plain);
    CHECK(is_zero(p.components[0].offset));
    CHECK(p.components[0].multiplicity == 1);

    // singular basis rejected
    json singular =
        json::parse(R"({"components":[{"basis":[["1","0"],["2","0"]],"offset":["0","0"]}]})");
    CHECK_THROWS_AS(multiset_from_json(singular), DegenerateInput);
}

TEST_CASE("fixture corpus is complete and self-consistent") {
    const auto& all = builtin_fixtures();
    CHECK(all.size() == 10);
    for (const auto& f : all) {
        Polytope P = Polytope::build(f.vertices);
        CHECK(minkowski_verdict(P).overall == f.expectedSymmetry);
        if (f.expectedN) {
            auto r = compute_k_rational(P);
            CHECK(r.N == *f.expectedN);
            CHECK(r.k == *f.expectedK);
        }
        json j = fixture_to_json(f);
        CHECK(j["name"] == f.name);
        CHECK(polytope_from_json(j["polytope"]).vertices() == P.vertices());
    }
    CHECK_THROWS_AS(fixture("nonesuch"), ParseError);
}

TEST_CASE("fixture tiling expectations hold under sampled verification") {
    for (const auto& f : builtin_fixtures()) {
        if (!f.tilesZdWithK) continue;
        Polytope P = Polytope::build(f.vertices);
        if (P.dim() > 3) continue;  // cell24 is covered by the acceptance suite
        auto m = TranslationMultiset::integerLattice(P.dim());
        auto r = verify_k_tiling_sampled(P, m, 40, 6);
        CHECK(r.kind == KTilingReport::Kind::Verified);
        CHECK(r.k == *f.tilesZdWithK);
    }
}

TEST_CASE("verdict and report serialization") {
    json sym = symmetry_verdict_to_json(minkowski_verdict(fixture_polytope("octahedron")));
    CHECK(sym["overall"] == "FailFacet");
    CHECK(sym["bodySymmetric"] == true);
    CHECK(sym["failingFacets"].size() == 8);

    auto m = TranslationMultiset::integerLattice(2);
    json rep = tiling_report_to_json(verify_k_tiling_sampled(fixture_polytope("oct7"), m, 30, 9));
    CHECK(rep["verdict"] == "Verified");
    CHECK(rep["k"] == 7);
    CHECK(rep["seed"] == 9);

    json ref = tiling_report_to_json(verify_k_tiling_sampled(fixture_polytope("triangle"), m, 30, 9));
    CHECK(ref["verdict"] == "Refuted");
    CHECK(ref["count1"] != ref["count2"]);
}
