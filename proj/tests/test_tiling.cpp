#include <doctest.h>

#include <random>

#include "ktile/io.hpp"
#include "ktile/tiling.hpp"

using namespace ktile;

TEST_CASE("count_points on the unit square") {
    Polytope sq = fixture_polytope("square");
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    auto c = count_points(z2, sq, {Rat(1, 3), Rat(1, 3)});
    CHECK(c.interior == 1);  // only (1,1)
    CHECK(c.boundary == 0);
}

TEST_CASE("count_points on the octagon fixture") {
    Polytope oct = fixture_polytope("oct7");
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    auto at0 = count_points(z2, oct, {Rat(0), Rat(0)});
    CHECK(at0.interior == 5);  // (0,0), (+-1,0), (0,+-1)
    CHECK(at0.boundary == 4);  // (+-1,+-1)
    auto shifted = count_points(z2, oct, {Rat(1, 10), Rat(1, 50)});
    CHECK(shifted.interior == 7);
    CHECK(shifted.boundary == 0);
}

TEST_CASE("count_points honors multiplicities and offsets") {
    Polytope sq = fixture_polytope("square");
    TranslationMultiset m;
    LatticeComponent c;
    c.basis = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    c.offset = {Rat(1, 2), Rat(1, 2)};
    c.multiplicity = 3;
    m.components.push_back(c);
    auto counts = count_points(m, sq, {Rat(0), Rat(0)});
    CHECK(counts.interior == 3);  // (1/2,1/2) with multiplicity 3
    CHECK(counts.boundary == 0);
}

TEST_CASE("sampled general position translates have empty boundary") {
    Polytope sq = fixture_polytope("square");
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    Vec v = sample_general_position(sq, z2, std::uint64_t(1));
    CHECK(count_points(z2, sq, v).boundary == 0);

    Polytope oct = fixture_polytope("oct7");
    Vec w = sample_general_position(oct, z2, std::uint64_t(5));
    CHECK(count_points(z2, oct, w).interior == 7);

    // v = 0 itself would be rejected: vertices of oct7+0 carry lattice points
    CHECK(count_points(z2, oct, Vec(2, 0)).boundary != 0);
}

TEST_CASE("interior count is periodic under the common sublattice") {
    Polytope oct = fixture_polytope("oct7");
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    std::mt19937_64 rng(99);
    for (int t = 0; t < 10; ++t) {
        Vec v = sample_general_position(oct, z2, rng);
        long long base = count_points(z2, oct, v).interior;
        for (const Vec& shift : {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(-1)}, Vec{Rat(2), Rat(3)}})
            CHECK(count_points(z2, oct, add(v, shift)).interior == base);
    }
}

TEST_CASE("compute_k_rational on the fixture corpus") {
    auto sq = compute_k_rational(fixture_polytope("square"));
    CHECK(sq.N == 1);
    CHECK(sq.k == 1);

    auto oct7 = compute_k_rational(fixture_polytope("oct7"));
    CHECK(oct7.N == 2);
    CHECK(oct7.k == 28);

    auto oct14 = compute_k_rational(fixture_polytope("oct14"));
    CHECK(oct14.N == 1);
    CHECK(oct14.k == 14);

    auto hex = compute_k_rational(fixture_polytope("hexprism"));
    CHECK(hex.N == 1);
    CHECK(hex.k == 3);

    CHECK_THROWS_AS(compute_k_rational(fixture_polytope("triangle")),
                    SymmetryPreconditionFailed);
    CHECK_THROWS_AS(compute_k_rational(fixture_polytope("octahedron")),
                    SymmetryPreconditionFailed);
}

TEST_CASE("compute_k_rational matches N^d * volume exactly") {
    for (const char* name : {"square", "box2", "cube", "hexprism", "oct7", "oct14"}) {
        Polytope P = fixture_polytope(name);
        auto r = compute_k_rational(P);
        Rat expected = P.volume();
        for (size_t i = 0; i < P.dim(); ++i) expected *= Rat(r.N);
        CHECK(Rat(r.k) == expected);
    }
}

TEST_CASE("sampled verification verdicts") {
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    TranslationMultiset z3 = TranslationMultiset::integerLattice(3);

    auto oct = verify_k_tiling_sampled(fixture_polytope("oct7"), z2, 200, 42);
    CHECK(oct.kind == KTilingReport::Kind::Verified);
    CHECK(oct.k == 7);

    auto box = verify_k_tiling_sampled(Polytope::build(detail_fixture::box(3, 2)), z3, 200, 42);
    CHECK(box.kind == KTilingReport::Kind::Verified);
    CHECK(box.k == 8);

    auto tri = verify_k_tiling_sampled(fixture_polytope("triangle"), z2, 50, 42);
    CHECK(tri.kind == KTilingReport::Kind::Refuted);
    CHECK(tri.count1 != tri.count2);
    // the witness pair is exact and reproducible
    CHECK(count_points(z2, fixture_polytope("triangle"), tri.v1).interior == tri.count1);
    CHECK(count_points(z2, fixture_polytope("triangle"), tri.v2).interior == tri.count2);
}

TEST_CASE("exact 2d verification") {
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);

    auto sq = verify_k_tiling_exact_2d(fixture_polytope("square"), z2);
    CHECK(sq.kind == KTilingReport::Kind::ExactVerified);
    CHECK(sq.k == 1);
    CHECK(sq.cellsChecked >= 1);

    auto oct = verify_k_tiling_exact_2d(fixture_polytope("oct7"), z2);
    CHECK(oct.kind == KTilingReport::Kind::ExactVerified);
    CHECK(oct.k == 7);

    auto tri = verify_k_tiling_exact_2d(fixture_polytope("triangle"), z2);
    CHECK(tri.kind == KTilingReport::Kind::Refuted);
    std::set<long long> counts = {tri.count1, tri.count2};
    CHECK(counts == std::set<long long>{0, 1});

    CHECK_THROWS_AS(verify_k_tiling_exact_2d(fixture_polytope("cube"), z2),
                    DimensionUnsupported);
}

TEST_CASE("exact and sampled verdicts agree on 2d fixtures") {
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    for (const char* name : {"square", "box2", "oct7", "oct14", "triangle"}) {
        Polytope P = fixture_polytope(name);
        auto exact = verify_k_tiling_exact_2d(P, z2);
        auto sampled = verify_k_tiling_sampled(P, z2, 100, 7);
        CHECK((exact.kind == KTilingReport::Kind::Refuted) ==
              (sampled.kind == KTilingReport::Kind::Refuted));
        if (exact.kind != KTilingReport::Kind::Refuted) CHECK(exact.k == sampled.k);
    }
}

TEST_CASE("verified fixtures pass the Minkowski conditions") {
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    for (const char* name : {"square", "box2", "oct7", "oct14"}) {
        Polytope P = fixture_polytope(name);
        auto report = verify_k_tiling_sampled(P, z2, 50, 3);
        REQUIRE(report.kind == KTilingReport::Kind::Verified);
        CHECK(minkowski_verdict(P).overall == SymmetryOutcome::Pass);
    }
}

TEST_CASE("P and -P verify identically") {
    TranslationMultiset z2 = TranslationMultiset::integerLattice(2);
    for (const char* name : {"oct7", "oct14", "triangle"}) {
        Polytope P = fixture_polytope(name);
        std::vector<Vec> reflected;
        for (const auto& v : P.vertices()) reflected.push_back(negate(v));
        Polytope Q = Polytope::build(reflected);
        auto rp = verify_k_tiling_sampled(P, z2, 100, 11);
        auto rq = verify_k_tiling_sampled(Q, z2, 100, 11);
        CHECK((rp.kind == KTilingReport::Kind::Refuted) ==
              (rq.kind == KTilingReport::Kind::Refuted));
        if (rp.kind == KTilingReport::Kind::Verified) CHECK(rp.k == rq.k);
    }
}

TEST_CASE("verification over a union of translated lattices") {
    // Z^2 union (Z^2 + (1/2,1/2)): the square 2-tiles.
    Polytope sq = fixture_polytope("square");
    TranslationMultiset m = TranslationMultiset::integerLattice(2);
    LatticeComponent shifted = m.components[0];
    shifted.offset = {Rat(1, 2), Rat(1, 2)};
    m.components.push_back(shifted);
    auto sampled = verify_k_tiling_sampled(sq, m, 100, 17);
    CHECK(sampled.kind == KTilingReport::Kind::Verified);
    CHECK(sampled.k == 2);
    auto exact = verify_k_tiling_exact_2d(sq, m);
    CHECK(exact.kind == KTilingReport::Kind::ExactVerified);
    CHECK(exact.k == 2);
}
