#ifndef KTILE_MULTISET_HPP
#define KTILE_MULTISET_HPP

#include <functional>
#include <vector>

#include "ktile/polytope.hpp"

namespace ktile {

struct LatticeComponent {
    Mat basis;          // invertible; lattice point = basis * z + offset, z in Z^d
    Vec offset;
    unsigned multiplicity = 1;
};

/// Finite union of translated lattices with multiplicities: the multiset
/// Lambda of translation vectors.
struct TranslationMultiset {
    std::vector<LatticeComponent> components;

    static TranslationMultiset integerLattice(size_t d, const Rat& scale = 1) {
        TranslationMultiset m;
        LatticeComponent c;
        c.basis = Mat(d, Vec(d, 0));
        for (size_t i = 0; i < d; ++i) c.basis[i][i] = scale;
        c.offset = Vec(d, 0);
        c.multiplicity = 1;
        m.components.push_back(std::move(c));
        return m;
    }

    void validate() const {
        for (const auto& c : components) {
            if (det(c.basis) == 0) throw DegenerateInput("lattice basis is singular");
            if (c.multiplicity == 0) throw DegenerateInput("multiplicity must be positive");
        }
    }

    /// An integer M with M * Z^d contained in every component lattice
    /// (offsets ignored); period of all translate-count functions.
    Int commonPeriod() const {
        Int m = 1;
        for (const auto& c : components) {
            Mat inv = inverse(c.basis);
            for (const auto& row : inv)
                for (const auto& x : row) m = lcm(m, denominator(x));
        }
        return m;
    }
};

/// Calls fn(point, multiplicity) for every lattice point of the component
/// inside the axis box [lo, hi] (a superset is enumerated and filtered).
inline void for_each_lattice_point_in_box(const LatticeComponent& comp, const Vec& lo,
                                          const Vec& hi,
                                          const std::function<void(const Vec&)>& fn) {
    const size_t d = lo.size();
    Mat inv = inverse(comp.basis);
    // Preimage of the box is a parallelepiped; bound it by mapping all corners.
    Vec zlo(d), zhi(d);
    bool first = true;
    for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
        Vec corner(d);
        for (size_t i = 0; i < d; ++i)
            corner[i] = ((mask >> i) & 1 ? hi[i] : lo[i]) - comp.offset[i];
        Vec z = mat_vec(inv, corner);
        for (size_t i = 0; i < d; ++i) {
            if (first || z[i] < zlo[i]) zlo[i] = z[i];
            if (first || z[i] > zhi[i]) zhi[i] = z[i];
        }
        first = false;
    }
    std::vector<Int> zmin(d), zmax(d);
    for (size_t i = 0; i < d; ++i) {
        zmin[i] = rat_ceil(zlo[i]);
        zmax[i] = rat_floor(zhi[i]);
        if (zmax[i] < zmin[i]) return;
    }
    std::vector<Int> z = zmin;
    while (true) {
        Vec zr(d);
        for (size_t i = 0; i < d; ++i) zr[i] = Rat(z[i]);
        Vec p = add(mat_vec(comp.basis, zr), comp.offset);
        bool inside = true;
        for (size_t i = 0; i < d; ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) { inside = false; break; }
        if (inside) fn(p);
        size_t i = 0;
        while (i < d) {
            if (z[i] < zmax[i]) { ++z[i]; break; }
            z[i] = zmin[i];
            ++i;
        }
        if (i == d) return;
    }
}

}  // namespace ktile

#endif
