#ifndef KTILE_BOUNDARY_HPP
#define KTILE_BOUNDARY_HPP

#include <map>
#include <vector>

#include "ktile/multiset.hpp"
#include "ktile/polytope.hpp"

namespace ktile {

struct NonOrthogonalDirection : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotGeneralPosition : std::runtime_error {
    Vec witnessPoint;
    size_t faceIndex;
    NotGeneralPosition(std::string msg, Vec w, size_t f)
        : std::runtime_error(std::move(msg)), witnessPoint(std::move(w)), faceIndex(f) {}
};

/// Ordered pairwise-orthogonal directions driving iterated boundary operators.
struct Frame {
    Mat directions;

    explicit Frame(Mat dirs = {}) : directions(std::move(dirs)) {
        for (const auto& n : directions)
            if (is_zero(n)) throw ZeroDirection("frame direction must be nonzero");
        for (size_t i = 0; i < directions.size(); ++i)
            for (size_t j = i + 1; j < directions.size(); ++j)
                if (dot(directions[i], directions[j]) != 0)
                    throw NonOrthogonalDirection("frame directions must be pairwise orthogonal");
    }

    size_t size() const { return directions.size(); }
};

/// Formal integer combination of faces of one source polytope; the residue of
/// applying boundary operators to the indicator of P.
struct SignedFaceSum {
    const Polytope* source = nullptr;
    Mat framePrefix;
    std::vector<std::pair<size_t, long long>> terms;  // (face index, coefficient)
};

inline SignedFaceSum identity_sum(const Polytope& P) {
    SignedFaceSum s;
    s.source = &P;
    s.terms.push_back({P.topFace(), 1});
    return s;
}

/// Each term 1_F splits into 1_{F+} - 1_{F-}, the support faces of F in
/// directions +-n within aff(F). Terms where <n,.> is constant on F cancel.
inline SignedFaceSum apply_boundary(const SignedFaceSum& s, const Vec& n) {
    if (is_zero(n)) throw ZeroDirection("boundary direction must be nonzero");
    for (const auto& prev : s.framePrefix)
        if (dot(prev, n) != 0)
            throw NonOrthogonalDirection("direction not orthogonal to frame prefix");
    const Polytope& P = *s.source;
    std::map<size_t, long long> merged;
    for (const auto& [faceIndex, coeff] : s.terms) {
        const Face& f = P.faces()[faceIndex];
        Rat best = dot(n, P.vertices()[f.vertexIndices[0]]);
        Rat worst = best;
        for (size_t vi : f.vertexIndices) {
            Rat val = dot(n, P.vertices()[vi]);
            if (val > best) best = val;
            if (val < worst) worst = val;
        }
        if (best == worst) continue;  // 1_F - 1_F = 0
        std::vector<size_t> plus, minus;
        for (size_t vi : f.vertexIndices) {
            Rat val = dot(n, P.vertices()[vi]);
            if (val == best) plus.push_back(vi);
            if (val == worst) minus.push_back(vi);
        }
        size_t fp = P.findFace(plus);
        size_t fm = P.findFace(minus);
        if (fp == Polytope::npos || fm == Polytope::npos)
            throw std::logic_error("support set within a face is not a lattice face");
        merged[fp] += coeff;
        merged[fm] -= coeff;
    }
    SignedFaceSum out;
    out.source = s.source;
    out.framePrefix = s.framePrefix;
    out.framePrefix.push_back(n);
    for (const auto& [faceIndex, coeff] : merged)
        if (coeff != 0) out.terms.push_back({faceIndex, coeff});
    return out;
}

/// Composition read right to left; the empty frame is the identity operator.
inline SignedFaceSum apply_frame(const Polytope& P, const Frame& frame) {
    SignedFaceSum s = identity_sum(P);
    for (const auto& n : frame.directions) s = apply_boundary(s, n);
    return s;
}

/// Coordinate subset on which the projection restricted to the orthogonal
/// complement of the frame prefix is invertible.
inline std::vector<size_t> projection_coords(const Mat& framePrefix, size_t d) {
    Mat basis = orthogonal_complement(framePrefix, d);
    // Pivot columns of the complement basis.
    Mat m = basis;
    std::vector<size_t> pivots;
    size_t rnk = 0;
    for (size_t col = 0; col < d && rnk < m.size(); ++col) {
        size_t piv = rnk;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rnk]);
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == rnk || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[rnk][col];
            for (size_t c = 0; c < d; ++c) m[r][c] -= f * m[rnk][c];
        }
        pivots.push_back(col);
        ++rnk;
    }
    return pivots;
}

/// Signed (d-m)-volume proxy of the sum: faces below full rank contribute 0,
/// full-rank faces their exact projected volume. All full-rank faces are
/// parallel to the frame's orthogonal complement, so one shared coordinate
/// projection keeps the zero test exact.
inline Rat signed_volume(const SignedFaceSum& s) {
    const Polytope& P = *s.source;
    const size_t d = P.dim();
    const size_t m = s.framePrefix.size();
    const int targetDim = static_cast<int>(d - m);
    if (targetDim == 0) {
        Rat total = 0;
        for (const auto& [faceIndex, coeff] : s.terms) total += coeff;
        return total;
    }
    std::vector<size_t> coords = projection_coords(s.framePrefix, d);
    Rat total = 0;
    for (const auto& [faceIndex, coeff] : s.terms) {
        if (P.faces()[faceIndex].dim != targetDim) continue;
        total += Rat(coeff) * P.projectedVolume(faceIndex, coords);
    }
    return total;
}

/// x in the closed face F + v (equality on F's facets, feasibility elsewhere).
inline bool point_in_face(const Polytope& P, size_t faceIndex, const Vec& x, const Vec& v) {
    const Face& f = P.faces()[faceIndex];
    if (f.dim == static_cast<int>(P.dim())) {
        return P.classifyTranslated(x, v).location != PointLocation::Exterior;
    }
    std::vector<bool> mustBeTight(P.facets().size(), false);
    for (size_t fi : f.facetIndices) mustBeTight[fi] = true;
    for (size_t fi = 0; fi < P.facets().size(); ++fi) {
        Rat sval = 0;
        for (size_t c = 0; c < P.dim(); ++c)
            sval += Rat(P.facets()[fi].normal[c]) * (x[c] - v[c]);
        if (mustBeTight[fi] ? sval != P.facets()[fi].offset : sval > P.facets()[fi].offset)
            return false;
    }
    return true;
}

/// x in the relative boundary of F + v (some proper subface of F).
inline bool point_in_relative_boundary(const Polytope& P, size_t faceIndex, const Vec& x,
                                       const Vec& v) {
    if (P.faces()[faceIndex].dim == 0) return false;
    for (size_t child : P.children(faceIndex))
        if (point_in_face(P, child, x, v)) return true;
    return false;
}

/// The discrete identity sum over Lambda of d_frame 1_{P+v}(lambda): sums
/// coefficient-weighted Lambda-point counts on the closed frame faces.
/// Requires v in general position w.r.t. the frame; verified exactly.
inline long long discrete_lambda_sum(const Polytope& P, const Frame& frame, const Vec& v,
                                     const TranslationMultiset& lambda) {
    SignedFaceSum s = apply_frame(P, frame);
    long long total = 0;
    for (const auto& [faceIndex, coeff] : s.terms) {
        const Face& f = P.faces()[faceIndex];
        Vec lo(P.dim()), hi(P.dim());
        bool first = true;
        for (size_t vi : f.vertexIndices) {
            for (size_t c = 0; c < P.dim(); ++c) {
                Rat x = P.vertices()[vi][c] + v[c];
                if (first || x < lo[c]) lo[c] = x;
                if (first || x > hi[c]) hi[c] = x;
            }
            first = false;
        }
        long long count = 0;
        for (const auto& comp : lambda.components) {
            for_each_lattice_point_in_box(comp, lo, hi, [&](const Vec& p) {
                if (!point_in_face(P, faceIndex, p, v)) return;
                if (point_in_relative_boundary(P, faceIndex, p, v))
                    throw NotGeneralPosition("lambda point on a face relative boundary", p,
                                             faceIndex);
                count += comp.multiplicity;
            });
        }
        total += coeff * count;
    }
    return total;
}

}  // namespace ktile

#endif
