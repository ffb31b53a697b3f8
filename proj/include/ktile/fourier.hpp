#ifndef KTILE_FOURIER_HPP
#define KTILE_FOURIER_HPP

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "ktile/polytope.hpp"

namespace ktile {

struct ToleranceNotReached : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ComplexValue {
    std::complex<double> value{0.0, 0.0};
    double errorBound = 0.0;
};

namespace detail_fourier {

inline std::complex<double> unit_phase(const Rat& phi) {
    // exp(2 pi i phi); reduce mod 1 exactly before leaving rationals.
    Rat frac = phi - Rat(rat_floor(phi));
    double t = 2.0 * M_PI * to_double(frac);
    return {std::cos(t), std::sin(t)};
}

/// Orthogonal projection of xi onto the direction space of the face,
/// exact via a rational Gram solve.
inline Vec face_projection(const Face& f, const Vec& xi) {
    const size_t k = f.spanDirs.size();
    const size_t d = xi.size();
    if (k == 0) return Vec(d, 0);
    Mat gram(k, Vec(k));
    Vec rhs(k);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) gram[i][j] = dot(f.spanDirs[i], f.spanDirs[j]);
        rhs[i] = dot(f.spanDirs[i], xi);
    }
    auto y = solve(gram, rhs);
    if (!y) throw std::logic_error("face span directions are dependent");
    Vec proj(d, 0);
    for (size_t i = 0; i < k; ++i) proj = add(proj, scale((*y)[i], f.spanDirs[i]));
    return proj;
}

/// Relative k-volume of a face: exact |det| for full-dimensional faces,
/// sqrt of the exact Gram determinant otherwise.
inline double relative_volume(const Polytope& P, size_t faceIndex) {
    const Face& f = P.faces()[faceIndex];
    const int k = f.dim;
    if (k == 0) return 1.0;
    Int kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= Int(i);
    if (k == static_cast<int>(P.dim())) return to_double(P.volume());
    double total = 0;
    for (const auto& s : P.triangulation(faceIndex)) {
        Mat edges;
        for (size_t i = 1; i < s.size(); ++i)
            edges.push_back(sub(P.vertices()[s[i]], P.vertices()[s[0]]));
        Mat gram(edges.size(), Vec(edges.size()));
        for (size_t i = 0; i < edges.size(); ++i)
            for (size_t j = 0; j < edges.size(); ++j) gram[i][j] = dot(edges[i], edges[j]);
        total += std::sqrt(to_double(det(gram))) / to_double(Rat(kfact));
    }
    return total;
}

/// Unnormalized outward normal of child face G within aff(F): lies in
/// span(F), orthogonal to span(G), pointing away from F's centroid.
inline Vec outward_in_face(const Polytope& P, const Face& f, const Face& g) {
    const size_t k = f.spanDirs.size();
    Mat constraints;  // <g_i, sum_j t_j f_j> = 0 as rows over t
    for (const auto& gd : g.spanDirs) {
        Vec row(k);
        for (size_t j = 0; j < k; ++j) row[j] = dot(gd, f.spanDirs[j]);
        constraints.push_back(row);
    }
    Mat ts = constraints.empty() ? Mat{Vec(k, 0)} : orthogonal_complement(constraints, k);
    if (constraints.empty()) {
        ts.clear();
        Vec t(k, 0);
        t[0] = 1;
        ts.push_back(t);
    }
    Vec w(P.dim(), 0);
    for (size_t j = 0; j < k; ++j) w = add(w, scale(ts[0][j], f.spanDirs[j]));
    Vec centroid(P.dim(), 0);
    for (size_t vi : f.vertexIndices) centroid = add(centroid, P.vertices()[vi]);
    centroid = scale(Rat(1, Int(f.vertexIndices.size())), centroid);
    Rat side = dot(w, sub(centroid, g.basePoint));
    if (side == 0) throw std::logic_error("degenerate outward normal orientation");
    if (side > 0) w = negate(w);
    return w;
}

}  // namespace detail_fourier

/// Fourier transform of 1_P at rational frequency xi by the recursive
/// combinatorial Stokes formula over the face lattice. The Case I test
/// (projected frequency exactly zero) is decided in rational arithmetic, so
/// the recursion never divides by a near-zero norm.
inline ComplexValue hat_indicator(const Polytope& P, const Vec& xi) {
    std::map<size_t, ComplexValue> memo;
    std::function<ComplexValue(size_t)> eval = [&](size_t faceIndex) -> ComplexValue {
        auto it = memo.find(faceIndex);
        if (it != memo.end()) return it->second;
        const Face& f = P.faces()[faceIndex];
        Vec proj = detail_fourier::face_projection(f, xi);
        ComplexValue out;
        if (is_zero(proj)) {
            // Case I: the phase is constant on the face.
            Rat phi = dot(xi, f.basePoint);
            double vol = detail_fourier::relative_volume(P, faceIndex);
            out.value = vol * detail_fourier::unit_phase(phi);
            out.errorBound = std::abs(out.value) * 1e-13;
        } else {
            // Case II: Stokes recursion over the boundary faces.
            Rat norm2 = dot(proj, proj);
            const std::complex<double> factor(0.0, -1.0 / (2.0 * M_PI));  // 1/(2 pi i)
            for (size_t child : P.children(faceIndex)) {
                Vec w = detail_fourier::outward_in_face(P, f, P.faces()[child]);
                Rat num = dot(proj, w);
                double wlen = std::sqrt(to_double(dot(w, w)));
                double coef = to_double(num / norm2) / wlen;
                ComplexValue cv = eval(child);
                out.value += factor * coef * cv.value;
                out.errorBound +=
                    std::abs(coef) / (2.0 * M_PI) * (cv.errorBound + std::abs(cv.value) * 1e-13);
            }
        }
        memo[faceIndex] = out;
        return out;
    };
    return eval(P.topFace());
}

namespace detail_fourier {

inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(size_t n) {
    static std::map<size_t, std::pair<std::vector<double>, std::vector<double>>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> nodes(n), weights(n);
    for (size_t i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess, on [-1, 1].
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (size_t k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (size_t k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = 0.5 * (x + 1.0);                        // map to [0, 1]
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);      // already halved
    }
    return cache.emplace(n, std::make_pair(nodes, weights)).first->second;
}

// Integral of exp(2 pi i <xi, x>) over the simplex at fixed tensor order,
// via the Duffy transform of the unit cube.
inline std::complex<double> simplex_integral_order(
    const std::vector<std::vector<double>>& verts, const std::vector<double>& xi,
    double absDet, size_t order) {
    const size_t k = verts.size() - 1;
    const auto& [nodes, weights] = gauss_legendre(order);
    std::vector<std::vector<double>> edges(k, std::vector<double>(verts[0].size()));
    for (size_t j = 0; j < k; ++j)
        for (size_t c = 0; c < verts[0].size(); ++c)
            edges[j][c] = verts[j + 1][c] - verts[0][c];

    std::complex<double> total(0.0, 0.0);
    std::vector<size_t> idx(k, 0);
    while (true) {
        double rem = 1.0, jac = 1.0, weight = 1.0;
        std::vector<double> x = verts[0];
        for (size_t j = 0; j < k; ++j) {
            double t = nodes[idx[j]] * rem;
            jac *= rem;
            weight *= weights[idx[j]];
            rem -= t;
            for (size_t c = 0; c < x.size(); ++c) x[c] += t * edges[j][c];
        }
        double phase = 0;
        for (size_t c = 0; c < x.size(); ++c) phase += xi[c] * x[c];
        phase *= 2.0 * M_PI;
        total += weight * jac * std::complex<double>(std::cos(phase), std::sin(phase));
        size_t j = 0;
        while (j < k) {
            if (++idx[j] < order) break;
            idx[j] = 0;
            ++j;
        }
        if (j == k) break;
    }
    return absDet * total;
}

}  // namespace detail_fourier

/// Independent quadrature oracle: triangulates P and integrates the complex
/// exponential per simplex with order-doubling tensor Gauss rules until the
/// requested tolerance is met.
inline ComplexValue hat_quadrature(const Polytope& P, const Vec& xi, double tolerance) {
    if (tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
    const auto& tris = P.triangulation(P.topFace());
    const double perSimplex = tolerance / static_cast<double>(tris.size());
    std::vector<double> xid = to_double(xi);
    ComplexValue out;
    for (const auto& s : tris) {
        std::vector<std::vector<double>> verts;
        Mat edges;
        for (size_t i = 0; i < s.size(); ++i) {
            verts.push_back(to_double(P.vertices()[s[i]]));
            if (i > 0) edges.push_back(sub(P.vertices()[s[i]], P.vertices()[s[0]]));
        }
        Rat dv = det(edges);
        double absDet = std::fabs(to_double(dv));
        std::complex<double> prev =
            detail_fourier::simplex_integral_order(verts, xid, absDet, 4);
        bool converged = false;
        for (size_t order = 8; order <= 128; order *= 2) {
            std::complex<double> cur =
                detail_fourier::simplex_integral_order(verts, xid, absDet, order);
            double diff = std::abs(cur - prev);
            prev = cur;
            if (diff < perSimplex) {
                out.value += cur;
                out.errorBound += diff + 1e-15 * absDet;
                converged = true;
                break;
            }
        }
        if (!converged) throw ToleranceNotReached("quadrature did not converge");
    }
    return out;
}

}  // namespace ktile

#endif
