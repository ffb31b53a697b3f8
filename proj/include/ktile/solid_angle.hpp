#ifndef KTILE_SOLID_ANGLE_HPP
#define KTILE_SOLID_ANGLE_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ktile/multiset.hpp"
#include "ktile/polytope.hpp"
#include "ktile/tiling.hpp"

namespace ktile {

enum class SolidAngleMethod { Exact2D, Exact3D, MonteCarlo };

struct SolidAngleValue {
    double value = 0.0;
    double absoluteErrorBound = 0.0;
    SolidAngleMethod method = SolidAngleMethod::Exact2D;
    std::uint64_t samples = 0;  // Monte Carlo only
};

namespace detail_angle {

inline double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double ddot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Solid angle fraction of the simplicial cone spanned by a, b, c in R^3
// (Van Oosterom-Strackee).
inline double cone_fraction_3d(std::vector<double> a, std::vector<double> b,
                               std::vector<double> c) {
    double la = norm(a), lb = norm(b), lc = norm(c);
    double det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                 a[2] * (b[0] * c[1] - b[1] * c[0]);
    double den = la * lb * lc + ddot(a, b) * lc + ddot(a, c) * lb + ddot(b, c) * la;
    double E = 2.0 * std::atan2(std::fabs(det), den);
    if (E < 0) E += 4.0 * M_PI;
    return E / (4.0 * M_PI);
}

// Fraction of space inside a simplex-local tangent cone at x; exact rational
// classification picks the case, angles are evaluated in doubles.
inline double simplex_fraction(const Polytope& P, const std::vector<size_t>& simplex,
                               const Vec& x) {
    // Facet planes of the tetrahedron: plane through 3 vertices, oriented
    // against the remaining one.
    std::vector<size_t> tight;
    std::vector<Vec> outward;  // rational outward normals of tight planes
    for (size_t skip = 0; skip < 4; ++skip) {
        Mat span;
        std::vector<size_t> tri;
        for (size_t i = 0; i < 4; ++i)
            if (i != skip) tri.push_back(simplex[i]);
        span.push_back(sub(P.vertices()[tri[1]], P.vertices()[tri[0]]));
        span.push_back(sub(P.vertices()[tri[2]], P.vertices()[tri[0]]));
        Mat ns = orthogonal_complement(span, 3);
        if (ns.size() != 1) return 0.0;  // flat simplex, measure zero
        Vec n = ns[0];
        Rat b = dot(n, P.vertices()[tri[0]]);
        Rat inner = dot(n, P.vertices()[simplex[skip]]);
        if (inner > b) { n = negate(n); b = -b; }
        else if (inner == b) return 0.0;
        Rat val = dot(n, x);
        if (val > b) return 0.0;  // outside this tetrahedron
        if (val == b) {
            tight.push_back(skip);
            outward.push_back(n);
        }
    }
    if (tight.empty()) return 1.0;
    if (tight.size() == 1) return 0.5;
    if (tight.size() == 2) {
        // Wedge between two halfspaces: interior dihedral angle over 2*pi.
        auto n1 = to_double(outward[0]);
        auto n2 = to_double(outward[1]);
        double cosang = ddot(n1, n2) / (norm(n1) * norm(n2));
        cosang = std::min(1.0, std::max(-1.0, cosang));
        double theta = M_PI - std::acos(cosang);
        return theta / (2.0 * M_PI);
    }
    // x is a vertex of the tetrahedron; generators point to the others.
    std::vector<std::vector<double>> gen;
    for (size_t i = 0; i < 4; ++i) {
        Vec diff = sub(P.vertices()[simplex[i]], x);
        if (!is_zero(diff)) gen.push_back(to_double(diff));
    }
    if (gen.size() != 3) return 0.0;
    return cone_fraction_3d(gen[0], gen[1], gen[2]);
}

}  // namespace detail_angle

/// Solid angle of P at x: the limiting fraction of a small ball around x
/// lying inside P. Interior points give 1, exterior 0; boundary points use a
/// per-dimension evaluation scheme with a reported error bound.
inline SolidAngleValue solid_angle(const Polytope& P, const Vec& x,
                                   std::uint64_t mcSamples = 200000,
                                   std::uint64_t mcSeed = 777) {
    SolidAngleValue out;
    out.method = P.dim() == 2 ? SolidAngleMethod::Exact2D
               : P.dim() == 3 ? SolidAngleMethod::Exact3D
                              : SolidAngleMethod::MonteCarlo;
    Classification cls = P.classify(x);
    if (cls.location == PointLocation::Exterior) return out;
    if (cls.location == PointLocation::Interior) {
        out.value = 1.0;
        return out;
    }

    if (P.dim() == 2) {
        const Face& f = P.faces()[cls.faceIndex];
        if (f.dim == 1) {
            out.value = 0.5;
            return out;
        }
        // Vertex: interior angle between the two incident edges.
        size_t vi = f.vertexIndices[0];
        std::vector<Vec> neighbors;
        for (size_t i = 0; i < P.faces().size(); ++i) {
            if (P.faces()[i].dim != 1) continue;
            const auto& ev = P.faces()[i].vertexIndices;
            if (ev[0] == vi) neighbors.push_back(sub(P.vertices()[ev[1]], P.vertices()[vi]));
            else if (ev[1] == vi)
                neighbors.push_back(sub(P.vertices()[ev[0]], P.vertices()[vi]));
        }
        auto u = to_double(neighbors[0]);
        auto w = to_double(neighbors[1]);
        double cross = std::fabs(u[0] * w[1] - u[1] * w[0]);
        double angle = std::atan2(cross, detail_angle::ddot(u, w));
        out.value = angle / (2.0 * M_PI);
        out.absoluteErrorBound = 1e-12;
        return out;
    }

    if (P.dim() == 3) {
        // Solid angles are additive over a triangulation of P.
        double total = 0;
        size_t terms = 0;
        for (const auto& simplex : P.triangulation(P.topFace())) {
            total += detail_angle::simplex_fraction(P, simplex, x);
            ++terms;
        }
        out.value = total;
        out.absoluteErrorBound = 1e-12 * static_cast<double>(terms + 1);
        return out;
    }

    // d = 4: Monte Carlo over the tangent cone of the minimal face.
    const Face& f = P.faces()[cls.faceIndex];
    std::vector<std::vector<double>> normals;
    for (size_t fi : f.facetIndices)
        normals.push_back(to_double(to_rational(P.facets()[fi].normal)));
    std::mt19937_64 rng(mcSeed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < mcSamples; ++s) {
        std::vector<double> u(4);
        for (auto& c : u) c = gauss(rng);
        bool inside = true;
        for (const auto& n : normals)
            if (detail_angle::ddot(n, u) > 0) { inside = false; break; }
        if (inside) ++hits;
    }
    double p = static_cast<double>(hits) / static_cast<double>(mcSamples);
    out.value = p;
    out.samples = mcSamples;
    out.absoluteErrorBound =
        3.0 * std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(mcSamples));
    return out;
}

struct SolidAngleSum {
    double sum = 0.0;
    double errorBound = 0.0;
    long long contributors = 0;  // lattice points with positive angle, by multiplicity
};

/// Sum of solid angles of P+v over all Lambda-points; valid at any v,
/// including translates that put Lambda-points on vertices.
inline SolidAngleSum solid_angle_sum(const Polytope& P, const TranslationMultiset& lambda,
                                     const Vec& v, std::uint64_t mcSamples = 200000) {
    auto [lo, hi] = P.boundingBox(v);
    SolidAngleSum out;
    for (const auto& comp : lambda.components) {
        for_each_lattice_point_in_box(comp, lo, hi, [&](const Vec& p) {
            Vec local = sub(p, v);
            if (P.classify(local).location == PointLocation::Exterior) return;
            SolidAngleValue a = solid_angle(P, local, mcSamples);
            out.sum += comp.multiplicity * a.value;
            out.errorBound += comp.multiplicity * a.absoluteErrorBound;
            out.contributors += comp.multiplicity;
        });
    }
    return out;
}

}  // namespace ktile

#endif
