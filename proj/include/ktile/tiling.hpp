#ifndef KTILE_TILING_HPP
#define KTILE_TILING_HPP

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ktile/boundary.hpp"
#include "ktile/multiset.hpp"
#include "ktile/polytope.hpp"
#include "ktile/symmetry.hpp"

namespace ktile {

struct ExhaustedAttempts : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SymmetryPreconditionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentCounts : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointCounts {
    long long interior = 0;
    long long boundary = 0;
};

struct KTilingReport {
    enum class Kind { Verified, ExactVerified, Refuted };
    Kind kind;
    long long k = 0;          // valid for Verified / ExactVerified
    size_t cellsChecked = 0;  // valid for ExactVerified
    Vec v1, v2;               // witness translates for Refuted
    long long count1 = 0, count2 = 0;
    unsigned trials = 0;
    std::uint64_t seed = 0;
};

/// Exact counts, with multiplicity, of Lambda-points interior to P+v and on
/// its boundary.
inline PointCounts count_points(const TranslationMultiset& lambda, const Polytope& P,
                                const Vec& v) {
    auto [lo, hi] = P.boundingBox(v);
    PointCounts counts;
    for (const auto& comp : lambda.components) {
        for_each_lattice_point_in_box(comp, lo, hi, [&](const Vec& p) {
            switch (P.classifyTranslated(p, v).location) {
                case PointLocation::Interior: counts.interior += comp.multiplicity; break;
                case PointLocation::Boundary: counts.boundary += comp.multiplicity; break;
                case PointLocation::Exterior: break;
            }
        });
    }
    return counts;
}

// Large prime denominator for sampled translates; accidental boundary hits
// would need an exact rational coincidence and are rejected anyway.
inline constexpr std::uint64_t kSampleDenominator = 2147483647ULL;  // 2^31 - 1

/// Draws v with coordinates a_i/Q inside a fundamental domain of the coarsest
/// common sublattice, accepting only translates whose boundary holds no
/// Lambda-point.
inline Vec sample_general_position(const Polytope& P, const TranslationMultiset& lambda,
                                   std::mt19937_64& rng, unsigned maxAttempts = 64) {
    std::uniform_int_distribution<std::uint64_t> dist(0, kSampleDenominator - 1);
    for (unsigned attempt = 0; attempt < maxAttempts; ++attempt) {
        Vec v(P.dim());
        for (size_t i = 0; i < P.dim(); ++i)
            v[i] = Rat(Int(dist(rng)), Int(kSampleDenominator));
        if (count_points(lambda, P, v).boundary == 0) return v;
    }
    throw ExhaustedAttempts("no general-position translate found");
}

inline Vec sample_general_position(const Polytope& P, const TranslationMultiset& lambda,
                                   std::uint64_t seed, unsigned maxAttempts = 64) {
    std::mt19937_64 rng(seed);
    return sample_general_position(P, lambda, rng, maxAttempts);
}

struct RationalTilingResult {
    Int N;
    long long k;
};

/// Constructive side: a centrally symmetric rational polytope with centrally
/// symmetric facets k-tiles with (1/N)Z^d, N the lcm of the vertex coordinate
/// denominators. Counts are re-sampled for constancy and checked against
/// k = N^d * volume(P) exactly.
inline RationalTilingResult compute_k_rational(const Polytope& P,
                                               std::uint64_t seed = 20120823) {
    if (minkowski_verdict(P).overall != SymmetryOutcome::Pass)
        throw SymmetryPreconditionFailed(
            "polytope or a facet of it is not centrally symmetric");
    Int N = 1;
    for (const auto& v : P.vertices())
        for (const auto& x : v) N = lcm(N, denominator(x));
    TranslationMultiset lambda = TranslationMultiset::integerLattice(P.dim(), Rat(1, N));
    std::mt19937_64 rng(seed);
    long long k = -1;
    for (int i = 0; i < 10; ++i) {
        Vec v = sample_general_position(P, lambda, rng);
        long long count = count_points(lambda, P, v).interior;
        if (k == -1) k = count;
        else if (count != k)
            throw InconsistentCounts("interior counts differ across translates");
    }
    Rat expected = P.volume();
    for (size_t i = 0; i < P.dim(); ++i) expected *= Rat(N);
    if (Rat(k) != expected)
        throw InconsistentCounts("count does not match N^d * volume");
    return {N, k};
}

/// Probabilistic verification: the covering count must be constant over sampled
/// general-position translates.
inline KTilingReport verify_k_tiling_sampled(const Polytope& P,
                                             const TranslationMultiset& lambda,
                                             unsigned trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    KTilingReport report;
    report.trials = trials;
    report.seed = seed;
    Vec v0;
    long long k0 = 0;
    for (unsigned t = 0; t < trials; ++t) {
        Vec v = sample_general_position(P, lambda, rng);
        long long count = count_points(lambda, P, v).interior;
        if (t == 0) {
            v0 = v;
            k0 = count;
        } else if (count != k0) {
            report.kind = KTilingReport::Kind::Refuted;
            report.v1 = v0;
            report.count1 = k0;
            report.v2 = v;
            report.count2 = count;
            return report;
        }
    }
    report.kind = KTilingReport::Kind::Verified;
    report.k = k0;
    return report;
}

namespace detail2d {

struct Line {
    // a x + b y = c with (a, b) primitive integer, first nonzero positive.
    Int a, b;
    Rat c;
    bool operator<(const Line& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

}  // namespace detail2d

/// Exact d=2 verification: the interior-count function of v is piecewise
/// constant off the arrangement of lines {lambda - E}; one exact sample per
/// arrangement cell inside a fundamental domain decides the verdict.
inline KTilingReport verify_k_tiling_exact_2d(const Polytope& P,
                                              const TranslationMultiset& lambda) {
    if (P.dim() != 2) throw DimensionUnsupported("exact verification requires d = 2");
    lambda.validate();
    const Rat M(lambda.commonPeriod());

    auto [plo, phi] = P.boundingBox(Vec(2, 0));
    Vec wlo = {plo[0], plo[1]};
    Vec whi = {M + phi[0], M + phi[1]};

    std::set<detail2d::Line> lines;
    for (size_t fi = 0; fi < P.faces().size(); ++fi) {
        if (P.faces()[fi].dim != 1) continue;
        const auto& vi = P.faces()[fi].vertexIndices;
        const Vec& p = P.vertices()[vi[0]];
        const Vec& q = P.vertices()[vi[1]];
        Vec dir = sub(q, p);
        std::vector<Int> nrm = primitive_integer(Vec{dir[1], -dir[0]});
        if (nrm[0] < 0 || (nrm[0] == 0 && nrm[1] < 0)) { nrm[0] = -nrm[0]; nrm[1] = -nrm[1]; }
        for (const auto& comp : lambda.components) {
            for_each_lattice_point_in_box(comp, wlo, whi, [&](const Vec& lam) {
                // v on the line lambda - E: <nrm, v> = <nrm, lambda - p>
                Rat c = Rat(nrm[0]) * (lam[0] - p[0]) + Rat(nrm[1]) * (lam[1] - p[1]);
                lines.insert({nrm[0], nrm[1], c});
            });
        }
    }

    // Slab decomposition over [0, M]^2.
    std::set<Rat> xs = {Rat(0), M};
    std::vector<detail2d::Line> ls(lines.begin(), lines.end());
    for (const auto& l : ls)
        if (l.b == 0) {
            Rat x = l.c / Rat(l.a);
            if (x > 0 && x < M) xs.insert(x);
        }
    for (size_t i = 0; i < ls.size(); ++i) {
        for (size_t j = i + 1; j < ls.size(); ++j) {
            Rat d = Rat(ls[i].a) * Rat(ls[j].b) - Rat(ls[j].a) * Rat(ls[i].b);
            if (d == 0) continue;
            Rat x = (ls[i].c * Rat(ls[j].b) - ls[j].c * Rat(ls[i].b)) / d;
            if (x > 0 && x < M) xs.insert(x);
        }
    }

    KTilingReport report;
    report.kind = KTilingReport::Kind::ExactVerified;
    bool haveFirst = false;
    Vec firstV;
    long long k0 = 0;
    std::vector<Rat> xv(xs.begin(), xs.end());
    for (size_t i = 0; i + 1 < xv.size(); ++i) {
        Rat xm = (xv[i] + xv[i + 1]) / 2;
        std::set<Rat> ys = {Rat(0), M};
        for (const auto& l : ls) {
            if (l.b == 0) continue;
            Rat y = (l.c - Rat(l.a) * xm) / Rat(l.b);
            if (y > 0 && y < M) ys.insert(y);
        }
        std::vector<Rat> yv(ys.begin(), ys.end());
        for (size_t j = 0; j + 1 < yv.size(); ++j) {
            Vec v = {xm, (yv[j] + yv[j + 1]) / 2};
            PointCounts counts = count_points(lambda, P, v);
            if (counts.boundary != 0)
                throw std::logic_error("cell sample hit a boundary; arrangement incomplete");
            ++report.cellsChecked;
            if (!haveFirst) {
                haveFirst = true;
                firstV = v;
                k0 = counts.interior;
            } else if (counts.interior != k0) {
                report.kind = KTilingReport::Kind::Refuted;
                report.v1 = firstV;
                report.count1 = k0;
                report.v2 = v;
                report.count2 = counts.interior;
                return report;
            }
        }
    }
    report.k = k0;
    return report;
}

}  // namespace ktile

#endif
