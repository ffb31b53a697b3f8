#ifndef KTILE_POLYTOPE_HPP
#define KTILE_POLYTOPE_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ktile/rational.hpp"

namespace ktile {

struct Facet {
    std::vector<Int> normal;  // primitive integer, outward
    Rat offset;               // <normal, x> <= offset on P, with equality on the facet
    std::vector<size_t> vertexIndices;
};

struct Face {
    int dim = 0;
    std::vector<size_t> vertexIndices;  // sorted
    Vec basePoint;
    Mat spanDirs;                       // linearly independent, count == dim
    std::vector<size_t> facetIndices;   // facets of the parent polytope containing this face
};

enum class PointLocation { Interior, Boundary, Exterior };

struct Classification {
    PointLocation location;
    size_t faceIndex = 0;  // minimal containing face, valid when Boundary
};

/// Full-dimensional convex polytope in R^d (2 <= d <= 4) with exact rational
/// vertices. Facets and the face lattice are derived on construction by
/// exhaustive hyperplane enumeration; all predicates are exact.
class Polytope {
public:
    static Polytope build(const std::vector<Vec>& points);

    size_t dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Vec>& discardedPoints() const { return discarded_; }

    /// Index into faces() of the full polytope (dim d).
    size_t topFace() const { return topFace_; }

    /// Faces of dimension face.dim - 1 contained in the given face.
    std::vector<size_t> children(size_t faceIndex) const;

    /// Face with exactly the given (sorted) vertex index set, or npos.
    size_t findFace(const std::vector<size_t>& sortedVertexIndices) const;

    Rat volume() const;
    Rat volumeFromApex(size_t apexVertex) const;

    /// Simplices (as vertex index tuples of size face.dim + 1) triangulating
    /// the face, fanned from its first vertex.
    const std::vector<std::vector<size_t>>& triangulation(size_t faceIndex) const;

    /// Exact (face.dim)-volume of the face's projection onto the given
    /// coordinate subset (size == face.dim).
    Rat projectedVolume(size_t faceIndex, const std::vector<size_t>& coords) const;

    Classification classify(const Vec& x) const;
    /// Classification of x against the translate P + v.
    Classification classifyTranslated(const Vec& x, const Vec& v) const;

    /// Face maximizing <n, .>; any dimension 0..d-1.
    size_t supportFace(const Vec& n) const;

    /// Projection proxies for the (d-1)-volumes of the support faces in
    /// directions +n and -n; equal iff the true volumes are equal.
    std::pair<Rat, Rat> facetPairVolumes(const Vec& n) const;

    Vec vertexCentroid() const;

    /// Coordinate-wise bounding box of P + v.
    std::pair<Vec, Vec> boundingBox(const Vec& v) const;

    static constexpr size_t npos = static_cast<size_t>(-1);

private:
    size_t dim_ = 0;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    std::vector<Face> faces_;  // sorted by (dim, vertexIndices); includes top face
    size_t topFace_ = 0;
    std::vector<Vec> discarded_;
    mutable std::map<size_t, std::vector<std::vector<size_t>>> triCache_;

    void buildFaceLattice();
    Face makeFace(const std::vector<size_t>& vset) const;
};

namespace detail {

// Enumerates index subsets of size k from {0..n-1}.
inline void for_each_subset(size_t n, size_t k,
                            const std::function<void(const std::vector<size_t>&)>& fn) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

inline Polytope Polytope::build(const std::vector<Vec>& inputPoints) {
    if (inputPoints.empty()) throw DegenerateInput("no input points");
    const size_t d = inputPoints[0].size();
    if (d < 2 || d > 4)
        throw DimensionUnsupported("dimension " + std::to_string(d) + " not in 2..4");

    std::vector<Vec> pts;
    std::vector<Vec> dropped;
    for (const auto& p : inputPoints) {
        if (p.size() != d) throw DegenerateInput("inconsistent point dimensions");
        bool dup = false;
        for (const auto& q : pts)
            if (p == q) { dup = true; break; }
        if (dup) dropped.push_back(p);
        else pts.push_back(p);
    }
    if (pts.size() < d + 1)
        throw DegenerateInput("need at least d+1 distinct points");

    {
        Mat diffs;
        for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
        if (rank(diffs) != d) throw DegenerateInput("points do not span R^d");
    }

    Vec centroid(d, 0);
    for (const auto& p : pts) centroid = add(centroid, p);
    centroid = scale(Rat(1, Int(pts.size())), centroid);

    // Candidate supporting hyperplanes through d-subsets of points.
    std::map<std::pair<std::vector<Int>, Rat>, std::set<size_t>> hyperplanes;
    detail::for_each_subset(pts.size(), d, [&](const std::vector<size_t>& idx) {
        Mat diffs;
        for (size_t i = 1; i < d; ++i) diffs.push_back(sub(pts[idx[i]], pts[idx[0]]));
        if (!diffs.empty() && rank(diffs) != d - 1) return;
        Mat ns = orthogonal_complement(diffs, d);
        if (ns.size() != 1) return;
        std::vector<Int> n;
        try {
            n = primitive_integer(ns[0]);
        } catch (const ZeroDirection&) {
            return;
        }
        Vec nr = to_rational(n);
        Rat b = dot(nr, pts[idx[0]]);
        bool below = true, above = true;
        for (const auto& p : pts) {
            Rat s = dot(nr, p);
            if (s > b) above = false;
            if (s < b) below = false;
            if (!above && !below) return;
        }
        if (!above) {  // flip so <n,x> <= b holds on P
            for (auto& x : n) x = -x;
            nr = negate(nr);
            b = -b;
        }
        auto& members = hyperplanes[{n, b}];
        for (const auto& p : pts)
            if (dot(nr, p) == b)
                members.insert(static_cast<size_t>(&p - pts.data()));
    });

    // A point is a hull vertex iff the facet normals through it span R^d.
    std::vector<std::vector<size_t>> onFacets(pts.size());
    {
        size_t fi = 0;
        for (const auto& [key, members] : hyperplanes) {
            for (size_t m : members) onFacets[m].push_back(fi);
            ++fi;
        }
    }
    std::vector<const std::pair<const std::pair<std::vector<Int>, Rat>, std::set<size_t>>*> hp;
    for (const auto& entry : hyperplanes) hp.push_back(&entry);

    std::vector<size_t> newIndex(pts.size(), npos);
    Polytope P;
    P.dim_ = d;
    for (size_t i = 0; i < pts.size(); ++i) {
        Mat normals;
        for (size_t fi : onFacets[i]) normals.push_back(to_rational(hp[fi]->first.first));
        if (normals.size() >= d && rank(normals) == d) {
            newIndex[i] = P.vertices_.size();
            P.vertices_.push_back(pts[i]);
        } else {
            P.discarded_.push_back(pts[i]);
        }
    }
    for (const auto& v : dropped) P.discarded_.push_back(v);

    for (const auto* entry : hp) {
        Facet f;
        f.normal = entry->first.first;
        f.offset = entry->first.second;
        for (size_t m : entry->second)
            if (newIndex[m] != npos) f.vertexIndices.push_back(newIndex[m]);
        std::sort(f.vertexIndices.begin(), f.vertexIndices.end());
        P.facets_.push_back(std::move(f));
    }

    P.buildFaceLattice();
    return P;
}

inline Face Polytope::makeFace(const std::vector<size_t>& vset) const {
    Face f;
    f.vertexIndices = vset;
    f.basePoint = vertices_[vset[0]];
    Mat diffs;
    for (size_t i = 1; i < vset.size(); ++i)
        diffs.push_back(sub(vertices_[vset[i]], f.basePoint));
    // Reduce to an independent spanning set.
    Mat m = diffs;
    const size_t cols = dim_;
    size_t rnk = 0;
    std::vector<size_t> keep;
    for (size_t r = 0; r < m.size(); ++r) {
        Mat test;
        for (size_t k : keep) test.push_back(diffs[k]);
        test.push_back(diffs[r]);
        if (rank(test) == keep.size() + 1) keep.push_back(r);
        if (keep.size() == cols) break;
    }
    (void)rnk;
    for (size_t k : keep) f.spanDirs.push_back(diffs[k]);
    f.dim = static_cast<int>(f.spanDirs.size());
    for (size_t fi = 0; fi < facets_.size(); ++fi) {
        const auto& fv = facets_[fi].vertexIndices;
        if (std::includes(fv.begin(), fv.end(), vset.begin(), vset.end()))
            f.facetIndices.push_back(fi);
    }
    return f;
}

inline void Polytope::buildFaceLattice() {
    // The proper faces are exactly the meet-closure of the facet vertex sets
    // under intersection.
    std::set<std::vector<size_t>> sets;
    for (const auto& f : facets_) sets.insert(f.vertexIndices);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<size_t>> current(sets.begin(), sets.end());
        for (size_t i = 0; i < current.size(); ++i) {
            for (size_t j = i + 1; j < current.size(); ++j) {
                std::vector<size_t> inter;
                std::set_intersection(current[i].begin(), current[i].end(),
                                      current[j].begin(), current[j].end(),
                                      std::back_inserter(inter));
                if (!inter.empty() && sets.insert(inter).second) grew = true;
            }
        }
    }
    std::vector<size_t> all(vertices_.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    sets.insert(all);

    for (const auto& vset : sets) faces_.push_back(makeFace(vset));
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertexIndices < b.vertexIndices;
    });
    topFace_ = faces_.size() - 1;
}

inline std::vector<size_t> Polytope::children(size_t faceIndex) const {
    const Face& f = faces_[faceIndex];
    std::vector<size_t> out;
    for (size_t i = 0; i < faces_.size(); ++i) {
        if (faces_[i].dim != f.dim - 1) continue;
        if (std::includes(f.vertexIndices.begin(), f.vertexIndices.end(),
                          faces_[i].vertexIndices.begin(), faces_[i].vertexIndices.end()))
            out.push_back(i);
    }
    return out;
}

inline size_t Polytope::findFace(const std::vector<size_t>& sortedVertexIndices) const {
    for (size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].vertexIndices == sortedVertexIndices) return i;
    return npos;
}

inline const std::vector<std::vector<size_t>>& Polytope::triangulation(size_t faceIndex) const {
    auto it = triCache_.find(faceIndex);
    if (it != triCache_.end()) return it->second;
    const Face& f = faces_[faceIndex];
    std::vector<std::vector<size_t>> simplices;
    if (f.dim == 0) {
        simplices.push_back(f.vertexIndices);
    } else {
        const size_t apex = f.vertexIndices[0];
        for (size_t child : children(faceIndex)) {
            const auto& cv = faces_[child].vertexIndices;
            if (std::find(cv.begin(), cv.end(), apex) != cv.end()) continue;
            for (const auto& s : triangulation(child)) {
                std::vector<size_t> simplex = s;
                simplex.push_back(apex);
                simplices.push_back(std::move(simplex));
            }
        }
    }
    return triCache_.emplace(faceIndex, std::move(simplices)).first->second;
}

inline Rat Polytope::volumeFromApex(size_t apexVertex) const {
    // Fan from the apex over facets not containing it.
    Rat total = 0;
    Int dfact = 1;
    for (size_t i = 2; i <= dim_; ++i) dfact *= Int(i);
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        if (faces_[fi].dim != static_cast<int>(dim_) - 1) continue;
        const auto& fv = faces_[fi].vertexIndices;
        if (std::find(fv.begin(), fv.end(), apexVertex) != fv.end()) continue;
        for (const auto& s : triangulation(fi)) {
            Mat edges;
            for (size_t vi : s)
                if (vi != s[0]) edges.push_back(sub(vertices_[vi], vertices_[s[0]]));
            edges.push_back(sub(vertices_[apexVertex], vertices_[s[0]]));
            Rat dv = det(edges);
            total += (dv < 0 ? -dv : dv) / Rat(dfact);
        }
    }
    return total;
}

inline Rat Polytope::volume() const { return volumeFromApex(0); }

inline Rat Polytope::projectedVolume(size_t faceIndex,
                                     const std::vector<size_t>& coords) const {
    const Face& f = faces_[faceIndex];
    if (f.dim == 0) return 1;
    if (coords.size() != static_cast<size_t>(f.dim))
        throw std::invalid_argument("coordinate subset size must equal face dim");
    Int kfact = 1;
    for (int i = 2; i <= f.dim; ++i) kfact *= Int(i);
    Rat total = 0;
    for (const auto& s : triangulation(faceIndex)) {
        Mat edges;
        for (size_t i = 1; i < s.size(); ++i) {
            Vec e;
            for (size_t c : coords)
                e.push_back(vertices_[s[i]][c] - vertices_[s[0]][c]);
            edges.push_back(std::move(e));
        }
        Rat dv = det(edges);
        total += (dv < 0 ? -dv : dv) / Rat(kfact);
    }
    return total;
}

inline Classification Polytope::classifyTranslated(const Vec& x, const Vec& v) const {
    std::vector<size_t> tight;
    for (size_t fi = 0; fi < facets_.size(); ++fi) {
        Rat s = 0;
        for (size_t c = 0; c < dim_; ++c)
            s += Rat(facets_[fi].normal[c]) * (x[c] - v[c]);
        if (s > facets_[fi].offset) return {PointLocation::Exterior};
        if (s == facets_[fi].offset) tight.push_back(fi);
    }
    if (tight.empty()) return {PointLocation::Interior};
    std::vector<size_t> vset = facets_[tight[0]].vertexIndices;
    for (size_t i = 1; i < tight.size(); ++i) {
        std::vector<size_t> inter;
        const auto& fv = facets_[tight[i]].vertexIndices;
        std::set_intersection(vset.begin(), vset.end(), fv.begin(), fv.end(),
                              std::back_inserter(inter));
        vset = std::move(inter);
    }
    size_t face = findFace(vset);
    return {PointLocation::Boundary, face};
}

inline Classification Polytope::classify(const Vec& x) const {
    return classifyTranslated(x, Vec(dim_, 0));
}

inline size_t Polytope::supportFace(const Vec& n) const {
    if (is_zero(n)) throw ZeroDirection("support direction must be nonzero");
    Rat best = dot(n, vertices_[0]);
    for (size_t i = 1; i < vertices_.size(); ++i)
        best = std::max(best, dot(n, vertices_[i]));
    std::vector<size_t> arg;
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (dot(n, vertices_[i]) == best) arg.push_back(i);
    size_t face = findFace(arg);
    if (face == npos) throw std::logic_error("support set is not a face");
    return face;
}

inline std::pair<Rat, Rat> Polytope::facetPairVolumes(const Vec& n) const {
    if (is_zero(n)) throw ZeroDirection("facet direction must be nonzero");
    // Drop the coordinate where |n_i| is maximal; both support faces share
    // the normal direction, so projection scales their volumes equally.
    size_t drop = 0;
    Rat mx = n[0] < 0 ? -n[0] : n[0];
    for (size_t i = 1; i < dim_; ++i) {
        Rat a = n[i] < 0 ? -n[i] : n[i];
        if (a > mx) { mx = a; drop = i; }
    }
    std::vector<size_t> coords;
    for (size_t i = 0; i < dim_; ++i)
        if (i != drop) coords.push_back(i);
    auto proxy = [&](size_t faceIndex) -> Rat {
        if (faces_[faceIndex].dim != static_cast<int>(dim_) - 1) return 0;
        return projectedVolume(faceIndex, coords);
    };
    return {proxy(supportFace(n)), proxy(supportFace(negate(n)))};
}

inline Vec Polytope::vertexCentroid() const {
    Vec c(dim_, 0);
    for (const auto& v : vertices_) c = add(c, v);
    return scale(Rat(1, Int(vertices_.size())), c);
}

inline std::pair<Vec, Vec> Polytope::boundingBox(const Vec& v) const {
    Vec lo = add(vertices_[0], v), hi = lo;
    for (const auto& p : vertices_) {
        for (size_t c = 0; c < dim_; ++c) {
            Rat x = p[c] + v[c];
            if (x < lo[c]) lo[c] = x;
            if (x > hi[c]) hi[c] = x;
        }
    }
    return {lo, hi};
}

}  // namespace ktile

#endif
