#ifndef KTILE_IO_HPP
#define KTILE_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ktile/multiset.hpp"
#include "ktile/polytope.hpp"
#include "ktile/symmetry.hpp"
#include "ktile/tiling.hpp"

namespace ktile {

using json = nlohmann::ordered_json;

inline Rat fraction_from_json(const json& j, const std::string& field) {
    if (!j.is_string())
        throw ParseError("field '" + field + "' must be a fraction string, not a number");
    return parse_fraction(j.get<std::string>());
}

inline Vec vector_from_json(const json& j, size_t dim, const std::string& field) {
    if (!j.is_array() || j.size() != dim)
        throw ParseError("field '" + field + "' must be an array of " + std::to_string(dim) +
                         " fraction strings");
    Vec v(dim);
    for (size_t i = 0; i < dim; ++i) v[i] = fraction_from_json(j[i], field);
    return v;
}

inline json vector_to_json(const Vec& v) {
    json j = json::array();
    for (const auto& x : v) j.push_back(fraction_string(x));
    return j;
}

inline json polytope_to_json(const Polytope& P) {
    json j;
    j["dim"] = P.dim();
    j["vertices"] = json::array();
    for (const auto& v : P.vertices()) j["vertices"].push_back(vector_to_json(v));
    return j;
}

inline Polytope polytope_from_json(const json& j) {
    if (!j.contains("dim")) throw ParseError("missing field 'dim'");
    if (!j.contains("vertices")) throw ParseError("missing field 'vertices'");
    if (!j["dim"].is_number_integer()) throw ParseError("field 'dim' must be an integer");
    size_t dim = j["dim"].get<size_t>();
    std::vector<Vec> verts;
    for (const auto& jv : j["vertices"]) verts.push_back(vector_from_json(jv, dim, "vertices"));
    return Polytope::build(verts);
}

inline json multiset_to_json(const TranslationMultiset& m) {
    json j;
    j["components"] = json::array();
    for (const auto& c : m.components) {
        json jc;
        jc["basis"] = json::array();
        for (const auto& row : c.basis) jc["basis"].push_back(vector_to_json(row));
        jc["offset"] = vector_to_json(c.offset);
        jc["multiplicity"] = c.multiplicity;
        j["components"].push_back(jc);
    }
    return j;
}

inline TranslationMultiset multiset_from_json(const json& j) {
    if (!j.contains("components")) throw ParseError("missing field 'components'");
    TranslationMultiset m;
    for (const auto& jc : j["components"]) {
        LatticeComponent c;
        if (!jc.contains("basis")) throw ParseError("missing field 'basis'");
        for (const auto& row : jc["basis"])
            c.basis.push_back(vector_from_json(row, row.size(), "basis"));
        size_t d = c.basis.size();
        for (const auto& row : c.basis)
            if (row.size() != d) throw ParseError("field 'basis' must be square");
        c.offset = jc.contains("offset") ? vector_from_json(jc["offset"], d, "offset")
                                         : Vec(d, 0);
        c.multiplicity = jc.value("multiplicity", 1u);
        m.components.push_back(std::move(c));
    }
    m.validate();
    return m;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline json symmetry_verdict_to_json(const SymmetryVerdict& v) {
    json j;
    j["bodySymmetric"] = v.bodySymmetric;
    if (v.bodyCenter) j["bodyCenter"] = vector_to_json(*v.bodyCenter);
    j["facets"] = json::array();
    for (const auto& fr : v.facetReports) {
        json jf;
        jf["facetIndex"] = fr.facetIndex;
        jf["symmetric"] = fr.symmetric;
        if (fr.center) jf["center"] = vector_to_json(*fr.center);
        j["facets"].push_back(jf);
    }
    switch (v.overall) {
        case SymmetryOutcome::Pass: j["overall"] = "Pass"; break;
        case SymmetryOutcome::FailBody: j["overall"] = "FailBody"; break;
        case SymmetryOutcome::FailFacet: j["overall"] = "FailFacet"; break;
    }
    if (!v.failingFacets.empty()) j["failingFacets"] = v.failingFacets;
    return j;
}

inline json tiling_report_to_json(const KTilingReport& r) {
    json j;
    switch (r.kind) {
        case KTilingReport::Kind::Verified:
            j["verdict"] = "Verified";
            j["k"] = r.k;
            break;
        case KTilingReport::Kind::ExactVerified:
            j["verdict"] = "ExactVerified";
            j["k"] = r.k;
            j["cellsChecked"] = r.cellsChecked;
            break;
        case KTilingReport::Kind::Refuted:
            j["verdict"] = "Refuted";
            j["v1"] = vector_to_json(r.v1);
            j["count1"] = r.count1;
            j["v2"] = vector_to_json(r.v2);
            j["count2"] = r.count2;
            break;
    }
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    return j;
}

// ---------------------------------------------------------------------------
// Fixture corpus
// ---------------------------------------------------------------------------

struct Fixture {
    std::string name;
    std::vector<Vec> vertices;
    SymmetryOutcome expectedSymmetry;
    std::optional<Int> expectedN;        // compute-k result, Pass fixtures only
    std::optional<long long> expectedK;  // k for the (1/N)Z^d lattice
    std::optional<long long> tilesZdWithK;  // k when verified against Z^d
};

namespace detail_fixture {

inline Vec v2(int a, int b) { return {Rat(a), Rat(b)}; }
inline Vec v3(int a, int b, int c) { return {Rat(a), Rat(b), Rat(c)}; }

inline std::vector<Vec> box(size_t d, const Rat& side) {
    std::vector<Vec> out;
    for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
        Vec v(d);
        for (size_t i = 0; i < d; ++i) v[i] = ((mask >> i) & 1) ? side : Rat(0);
        out.push_back(v);
    }
    return out;
}

inline std::vector<Vec> octagon(const Rat& a, const Rat& b) {
    // (+-a, +-b), (+-b, +-a)
    std::vector<Vec> out;
    for (int sa : {1, -1})
        for (int sb : {1, -1}) {
            out.push_back({sa * a, sb * b});
            out.push_back({sa * b, sb * a});
        }
    return out;
}

inline std::vector<Vec> cell24() {
    std::vector<Vec> out;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    Vec v(4, 0);
                    v[i] = si;
                    v[j] = sj;
                    out.push_back(v);
                }
    return out;
}

inline std::vector<Vec> hexPrism() {
    std::vector<Vec> hex = {v2(1, 0), v2(1, 1), v2(0, 1), v2(-1, 0), v2(-1, -1), v2(0, -1)};
    std::vector<Vec> out;
    for (const auto& h : hex)
        for (int z : {0, 1}) out.push_back({h[0], h[1], Rat(z)});
    return out;
}

}  // namespace detail_fixture

inline const std::vector<Fixture>& builtin_fixtures() {
    using namespace detail_fixture;
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> f;
        f.push_back({"square", box(2, 1), SymmetryOutcome::Pass, Int(1), 1, 1});
        f.push_back({"box2", box(2, 2), SymmetryOutcome::Pass, Int(1), 4, 4});
        f.push_back({"triangle", {v2(0, 0), v2(1, 0), v2(0, 1)}, SymmetryOutcome::FailBody,
                     std::nullopt, std::nullopt, std::nullopt});
        f.push_back({"simplex3", {v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)},
                     SymmetryOutcome::FailBody, std::nullopt, std::nullopt, std::nullopt});
        f.push_back({"cube", box(3, 1), SymmetryOutcome::Pass, Int(1), 1, 1});
        f.push_back({"octahedron",
                     {v3(1, 0, 0), v3(-1, 0, 0), v3(0, 1, 0), v3(0, -1, 0), v3(0, 0, 1),
                      v3(0, 0, -1)},
                     SymmetryOutcome::FailFacet, std::nullopt, std::nullopt, std::nullopt});
        f.push_back({"hexprism", hexPrism(), SymmetryOutcome::Pass, Int(1), 3, 3});
        f.push_back({"oct7", octagon(Rat(3, 2), Rat(1, 2)), SymmetryOutcome::Pass, Int(2), 28, 7});
        f.push_back({"oct14", octagon(Rat(2), Rat(1)), SymmetryOutcome::Pass, Int(1), 14, 14});
        f.push_back({"cell24", cell24(), SymmetryOutcome::Pass, Int(1), 8, 8});
        return f;
    }();
    return fixtures;
}

inline const Fixture& fixture(const std::string& name) {
    for (const auto& f : builtin_fixtures())
        if (f.name == name) return f;
    throw ParseError("unknown fixture: " + name);
}

inline Polytope fixture_polytope(const std::string& name) {
    return Polytope::build(fixture(name).vertices);
}

inline json fixture_to_json(const Fixture& f) {
    json j;
    j["name"] = f.name;
    json jp;
    jp["dim"] = f.vertices[0].size();
    jp["vertices"] = json::array();
    for (const auto& v : f.vertices) jp["vertices"].push_back(vector_to_json(v));
    j["polytope"] = jp;
    json exp;
    switch (f.expectedSymmetry) {
        case SymmetryOutcome::Pass: exp["symmetry"] = "Pass"; break;
        case SymmetryOutcome::FailBody: exp["symmetry"] = "FailBody"; break;
        case SymmetryOutcome::FailFacet: exp["symmetry"] = "FailFacet"; break;
    }
    if (f.expectedN) exp["N"] = f.expectedN->str();
    if (f.expectedK) exp["k"] = *f.expectedK;
    if (f.tilesZdWithK) exp["kWithIntegerLattice"] = *f.tilesZdWithK;
    j["expected"] = exp;
    return j;
}

}  // namespace ktile

#endif
