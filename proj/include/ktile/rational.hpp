#ifndef KTILE_RATIONAL_HPP
#define KTILE_RATIONAL_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ktile {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroDirection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rat& x) {
    return floor_div(numerator(x), denominator(x));
}

inline Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

/// Parses a decimal-free fraction string such as "3/2", "-1" or "0".
inline Rat parse_fraction(const std::string& s) {
    if (s.empty()) throw ParseError("empty fraction string");
    if (s.find_first_not_of("0123456789+-/") != std::string::npos)
        throw ParseError("invalid fraction string: '" + s + "'");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw ParseError("invalid fraction string: '" + s + "'");
    }
}

inline std::string fraction_string(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

inline Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Vec negate(const Vec& a) { return scale(-1, a); }

inline bool is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

inline Vec mat_vec(const Mat& m, const Vec& x) {
    Vec r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
    return r;
}

/// Exact determinant by fraction-free-ish Gaussian elimination.
inline Rat det(Mat m) {
    const size_t n = m.size();
    Rat result = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            result = -result;
        }
        result *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return result;
}

/// Row rank of an arbitrary rational matrix.
inline size_t rank(Mat m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rnk = 0;
    for (size_t col = 0; col < cols && rnk < rows; ++col) {
        size_t piv = rnk;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rnk]);
        for (size_t r = rnk + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[rnk][col];
            for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[rnk][c];
        }
        ++rnk;
    }
    return rnk;
}

/// Solves m x = b for square invertible m; returns nullopt when singular.
inline std::optional<Vec> solve(Mat m, Vec b) {
    const size_t n = m.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
    return x;
}

inline Mat inverse(const Mat& m) {
    const size_t n = m.size();
    Mat inv(n, Vec(n, 0));
    for (size_t j = 0; j < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        auto col = solve(m, e);
        if (!col) throw DegenerateInput("singular matrix");
        for (size_t i = 0; i < n; ++i) inv[i][j] = (*col)[i];
    }
    return inv;
}

/// Clears denominators and divides by the gcd of the entries; the sign of the
/// first nonzero entry is preserved.
inline std::vector<Int> primitive_integer(const Vec& v) {
    Int den_lcm = 1;
    for (const Rat& x : v) den_lcm = lcm(den_lcm, denominator(x));
    std::vector<Int> w(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = numerator(v[i]) * (den_lcm / denominator(v[i]));
        g = gcd(g, w[i]);
    }
    if (g == 0) throw ZeroDirection("zero vector has no primitive representative");
    for (auto& x : w) x /= g;
    return w;
}

inline Vec to_rational(const std::vector<Int>& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

/// Basis of the orthogonal complement of span(dirs) in R^d.
inline Mat orthogonal_complement(const Mat& dirs, size_t d) {
    // Solve <dirs_i, x> = 0: reduce and read off free-variable basis vectors.
    Mat m = dirs;
    const size_t rows = m.size();
    std::vector<size_t> pivot_col;
    size_t rnk = 0;
    for (size_t col = 0; col < d && rnk < rows; ++col) {
        size_t piv = rnk;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rnk]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rnk || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[rnk][col];
            for (size_t c = 0; c < d; ++c) m[r][c] -= f * m[rnk][c];
        }
        pivot_col.push_back(col);
        ++rnk;
    }
    Mat basis;
    for (size_t col = 0; col < d; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end())
            continue;
        Vec x(d, 0);
        x[col] = 1;
        for (size_t i = 0; i < rnk; ++i)
            x[pivot_col[i]] = -m[i][col] / m[i][pivot_col[i]];
        basis.push_back(x);
    }
    return basis;
}

inline double to_double(const Rat& x) {
    return static_cast<double>(x);
}

inline std::vector<double> to_double(const Vec& v) {
    std::vector<double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
    return r;
}

}  // namespace ktile

#endif
