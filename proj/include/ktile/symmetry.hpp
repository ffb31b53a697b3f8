#ifndef KTILE_SYMMETRY_HPP
#define KTILE_SYMMETRY_HPP

#include <optional>
#include <vector>

#include "ktile/polytope.hpp"

namespace ktile {

struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FacetSymmetryReport {
    size_t facetIndex;
    bool symmetric;
    std::optional<Vec> center;
};

enum class SymmetryOutcome { Pass, FailBody, FailFacet };

struct SymmetryVerdict {
    std::optional<Vec> bodyCenter;
    bool bodySymmetric = false;
    std::vector<FacetSymmetryReport> facetReports;
    SymmetryOutcome overall = SymmetryOutcome::FailBody;
    std::vector<size_t> failingFacets;
};

/// Candidate center is the vertex mean; central symmetry forces it to be the
/// center because the reflection pairs vertices. Returns the center iff
/// x -> 2c - x permutes the vertex set exactly.
inline std::optional<Vec> symmetry_center(const std::vector<Vec>& vertexSet) {
    if (vertexSet.empty()) throw EmptyInput("empty vertex set");
    const size_t d = vertexSet[0].size();
    Vec c(d, 0);
    for (const auto& v : vertexSet) c = add(c, v);
    c = scale(Rat(1, Int(vertexSet.size())), c);
    for (const auto& v : vertexSet) {
        Vec reflected = sub(scale(2, c), v);
        bool found = false;
        for (const auto& w : vertexSet)
            if (w == reflected) { found = true; break; }
        if (!found) return std::nullopt;
    }
    return c;
}

/// Minkowski necessary conditions: the body and every facet must be
/// centrally symmetric. Facet symmetry is tested in ambient coordinates;
/// reflection through the facet's vertex mean is affine, so no basis change
/// is needed.
inline SymmetryVerdict minkowski_verdict(const Polytope& P) {
    SymmetryVerdict verdict;
    verdict.bodyCenter = symmetry_center(P.vertices());
    verdict.bodySymmetric = verdict.bodyCenter.has_value();
    for (size_t fi = 0; fi < P.facets().size(); ++fi) {
        std::vector<Vec> fverts;
        for (size_t vi : P.facets()[fi].vertexIndices) fverts.push_back(P.vertices()[vi]);
        auto c = symmetry_center(fverts);
        verdict.facetReports.push_back({fi, c.has_value(), c});
        if (!c) verdict.failingFacets.push_back(fi);
    }
    if (!verdict.bodySymmetric)
        verdict.overall = SymmetryOutcome::FailBody;
    else if (!verdict.failingFacets.empty())
        verdict.overall = SymmetryOutcome::FailFacet;
    else
        verdict.overall = SymmetryOutcome::Pass;
    return verdict;
}

}  // namespace ktile

#endif
