#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gainmat/errors.hpp"
#include "gainmat/matrix.hpp"

namespace gainmat {

enum class GroupFamily { trivial, cyclic, dihedral, translation, wallpaper };

// Supported space-group types: the five rotation-only wallpaper groups.
enum class WallpaperName { p1, p2, p3, p4, p6 };

inline int wallpaper_rotation_order(WallpaperName w) {
    switch (w) {
        case WallpaperName::p1: return 1;
        case WallpaperName::p2: return 2;
        case WallpaperName::p3: return 3;
        case WallpaperName::p4: return 4;
        case WallpaperName::p6: return 6;
    }
    throw internal_error("bad wallpaper name");
}

inline std::string wallpaper_name_str(WallpaperName w) {
    switch (w) {
        case WallpaperName::p1: return "p1";
        case WallpaperName::p2: return "p2";
        case WallpaperName::p3: return "p3";
        case WallpaperName::p4: return "p4";
        case WallpaperName::p6: return "p6";
    }
    throw internal_error("bad wallpaper name");
}

// Action of the base rotation on lattice coordinates: an integer 2x2 matrix
// of the stated rotation order.
inline ExactMatrix wallpaper_rotation_action(WallpaperName w) {
    auto mk = [](int a, int b, int c, int d) {
        ExactMatrix m(2, 2);
        m.at(0, 0) = Scalar(a);
        m.at(0, 1) = Scalar(b);
        m.at(1, 0) = Scalar(c);
        m.at(1, 1) = Scalar(d);
        return m;
    };
    switch (w) {
        case WallpaperName::p1: return mk(1, 0, 0, 1);
        case WallpaperName::p2: return mk(-1, 0, 0, -1);
        case WallpaperName::p3: return mk(0, -1, 1, -1);
        case WallpaperName::p4: return mk(0, -1, 1, 0);
        case WallpaperName::p6: return mk(1, -1, 1, 0);
    }
    throw internal_error("bad wallpaper name");
}

// Reference lattice carrying the rotation: identity for p1/p2/p4, the
// hexagonal basis with columns (1,0) and (-1/2, sqrt(3)/2) for p3/p6.
inline ExactMatrix wallpaper_reference_lattice(WallpaperName w) {
    if (w == WallpaperName::p3 || w == WallpaperName::p6) {
        ExactMatrix b(2, 2);
        b.at(0, 0) = Scalar(1);
        b.at(0, 1) = Scalar(Rational(-1, 2));
        b.at(1, 1) = Scalar::quad(0, Rational(1, 2), 3);
        return b;
    }
    return ExactMatrix::identity(2);
}

inline void require_crystallographic_order(int k) {
    if (k != 1 && k != 2 && k != 3 && k != 4 && k != 6)
        throw unsupported_error("rotation order " + std::to_string(k) +
                                " has no exact quadratic realization (supported: 1, 2, 3, 4, 6)");
}

struct GroupDescriptor {
    GroupFamily family = GroupFamily::trivial;
    int dimension = 2;               // ambient dimension d
    int order = 1;                   // cyclic/dihedral rotation order k
    int trans_rank = 0;              // translation rank t
    WallpaperName wallpaper = WallpaperName::p1;
    ExactMatrix lattice;             // wallpaper lattice basis B (2x2, nonsingular)

    static GroupDescriptor trivial_group(int d) {
        GroupDescriptor g;
        g.family = GroupFamily::trivial;
        g.dimension = d;
        return g;
    }

    static GroupDescriptor cyclic(int k, int d) {
        require_crystallographic_order(k);
        GroupDescriptor g;
        g.family = GroupFamily::cyclic;
        g.order = k;
        g.dimension = d;
        return g;
    }

    static GroupDescriptor dihedral(int k, int d) {
        require_crystallographic_order(k);
        GroupDescriptor g;
        g.family = GroupFamily::dihedral;
        g.order = k;
        g.dimension = d;
        return g;
    }

    static GroupDescriptor translation(int t, int d = 2) {
        GroupDescriptor g;
        g.family = GroupFamily::translation;
        g.trans_rank = t;
        g.dimension = d;
        return g;
    }

    static GroupDescriptor wallpaper_group(WallpaperName w, ExactMatrix lattice_basis = {}) {
        GroupDescriptor g;
        g.family = GroupFamily::wallpaper;
        g.wallpaper = w;
        g.dimension = 2;
        g.order = wallpaper_rotation_order(w);
        if (lattice_basis.rows() == 0) lattice_basis = wallpaper_reference_lattice(w);
        if (lattice_basis.rows() != 2 || lattice_basis.cols() != 2 || rank(lattice_basis) != 2)
            throw input_error("wallpaper lattice basis must be a nonsingular 2x2 matrix");
        g.lattice = std::move(lattice_basis);
        return g;
    }

    bool finite() const { return family == GroupFamily::trivial || family == GroupFamily::cyclic ||
                                 family == GroupFamily::dihedral; }

    std::size_t element_count() const {
        switch (family) {
            case GroupFamily::trivial: return 1;
            case GroupFamily::cyclic: return order;
            case GroupFamily::dihedral: return 2 * static_cast<std::size_t>(order);
            default: return 0;  // infinite
        }
    }
};

// One group element; the payload read depends on the family:
//   cyclic r^j:              rot = j
//   dihedral s^a r^j:        rot = j, reflected = a
//   translation z:           shift = z
//   wallpaper (K^j, z):      rot = j, shift = z (lattice coordinates, c = 0)
class GroupElement {
  public:
    int rot = 0;
    bool reflected = false;
    std::vector<BigInt> shift;

    static GroupElement rotation(int j) {
        GroupElement e;
        e.rot = j;
        return e;
    }
    static GroupElement reflection(int j) {
        GroupElement e;
        e.rot = j;
        e.reflected = true;
        return e;
    }
    static GroupElement translation(std::vector<BigInt> z) {
        GroupElement e;
        e.shift = std::move(z);
        return e;
    }
    static GroupElement space(int j, std::vector<BigInt> z) {
        GroupElement e;
        e.rot = j;
        e.shift = std::move(z);
        return e;
    }

    friend bool operator==(const GroupElement& x, const GroupElement& y) {
        return x.rot == y.rot && x.reflected == y.reflected && x.shift == y.shift;
    }
    friend bool operator!=(const GroupElement& x, const GroupElement& y) { return !(x == y); }
    friend bool operator<(const GroupElement& x, const GroupElement& y) {
        return std::tie(x.rot, x.reflected, x.shift) < std::tie(y.rot, y.reflected, y.shift);
    }
};

namespace detail {
inline int mod(int a, int k) {
    const int r = a % k;
    return r < 0 ? r + k : r;
}

inline std::vector<BigInt> apply_action_power(WallpaperName w, int j, const std::vector<BigInt>& z) {
    const ExactMatrix k = wallpaper_rotation_action(w);
    std::vector<BigInt> r = z;
    const int order = wallpaper_rotation_order(w);
    for (int s = 0; s < mod(j, order); ++s) {
        const BigInt x = num(k.at(0, 0).rational_part()) * r[0] + num(k.at(0, 1).rational_part()) * r[1];
        const BigInt y = num(k.at(1, 0).rational_part()) * r[0] + num(k.at(1, 1).rational_part()) * r[1];
        r = {x, y};
    }
    return r;
}

inline void check_element(const GroupDescriptor& g, const GroupElement& e) {
    switch (g.family) {
        case GroupFamily::trivial:
            if (e.rot != 0 || e.reflected || !e.shift.empty())
                throw input_error("non-identity element of the trivial group");
            return;
        case GroupFamily::cyclic:
            if (e.reflected || !e.shift.empty()) throw input_error("cyclic element with non-rotation payload");
            return;
        case GroupFamily::dihedral:
            if (!e.shift.empty()) throw input_error("dihedral element with translation payload");
            return;
        case GroupFamily::translation:
            if (e.rot != 0 || e.reflected || static_cast<int>(e.shift.size()) != g.trans_rank)
                throw input_error("translation element of wrong rank");
            return;
        case GroupFamily::wallpaper:
            if (e.reflected || e.shift.size() != 2)
                throw input_error("wallpaper element needs a rotation power and a length-2 shift");
            return;
    }
}
}  // namespace detail

inline GroupElement identity_element(const GroupDescriptor& g) {
    GroupElement e;
    if (g.family == GroupFamily::translation) e.shift.assign(g.trans_rank, BigInt(0));
    if (g.family == GroupFamily::wallpaper) e.shift.assign(2, BigInt(0));
    return e;
}

inline bool is_identity(const GroupDescriptor& g, const GroupElement& e) {
    return e == identity_element(g);
}

// Canonical form: rotation powers reduced mod k, absent shifts read as zero.
inline GroupElement normalize(const GroupDescriptor& g, GroupElement e) {
    if (e.shift.empty()) {
        if (g.family == GroupFamily::translation) e.shift.assign(g.trans_rank, BigInt(0));
        if (g.family == GroupFamily::wallpaper) e.shift.assign(2, BigInt(0));
    }
    detail::check_element(g, e);
    if (g.family == GroupFamily::cyclic || g.family == GroupFamily::dihedral ||
        g.family == GroupFamily::wallpaper)
        e.rot = detail::mod(e.rot, g.order);
    return e;
}

inline GroupElement compose(const GroupDescriptor& g, const GroupElement& x0, const GroupElement& y0) {
    const GroupElement x = normalize(g, x0), y = normalize(g, y0);
    switch (g.family) {
        case GroupFamily::trivial: return x;
        case GroupFamily::cyclic: return normalize(g, GroupElement::rotation(x.rot + y.rot));
        case GroupFamily::dihedral: {
            // (s^a r^i)(s^b r^j) = s^(a xor b) r^(j + (-1)^b i)
            GroupElement e;
            e.reflected = x.reflected != y.reflected;
            e.rot = (y.reflected ? -x.rot : x.rot) + y.rot;
            return normalize(g, e);
        }
        case GroupFamily::translation: {
            std::vector<BigInt> z(x.shift.size());
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = x.shift[i] + y.shift[i];
            return GroupElement::translation(std::move(z));
        }
        case GroupFamily::wallpaper: {
            // (K^i, z)(K^j, z') = (K^(i+j), z + K^i z')
            auto moved = detail::apply_action_power(g.wallpaper, x.rot, y.shift);
            return normalize(g, GroupElement::space(x.rot + y.rot,
                                                    {x.shift[0] + moved[0], x.shift[1] + moved[1]}));
        }
    }
    throw internal_error("bad group family");
}

inline GroupElement inverse(const GroupDescriptor& g, const GroupElement& x0) {
    const GroupElement x = normalize(g, x0);
    switch (g.family) {
        case GroupFamily::trivial: return x;
        case GroupFamily::cyclic: return normalize(g, GroupElement::rotation(-x.rot));
        case GroupFamily::dihedral:
            return x.reflected ? x : normalize(g, GroupElement::rotation(-x.rot));
        case GroupFamily::translation: {
            std::vector<BigInt> z(x.shift.size());
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = -x.shift[i];
            return GroupElement::translation(std::move(z));
        }
        case GroupFamily::wallpaper: {
            auto moved = detail::apply_action_power(g.wallpaper, -x.rot, x.shift);
            return normalize(g, GroupElement::space(-x.rot, {-moved[0], -moved[1]}));
        }
    }
    throw internal_error("bad group family");
}

// Canonical generating set of the full group.
inline std::vector<GroupElement> group_generators(const GroupDescriptor& g) {
    switch (g.family) {
        case GroupFamily::trivial: return {};
        case GroupFamily::cyclic: return {GroupElement::rotation(1)};
        case GroupFamily::dihedral: return {GroupElement::rotation(1), GroupElement::reflection(0)};
        case GroupFamily::translation: {
            std::vector<GroupElement> gens;
            for (int i = 0; i < g.trans_rank; ++i) {
                std::vector<BigInt> z(g.trans_rank, BigInt(0));
                z[i] = 1;
                gens.push_back(GroupElement::translation(std::move(z)));
            }
            return gens;
        }
        case GroupFamily::wallpaper: {
            std::vector<GroupElement> gens;
            if (g.order > 1) gens.push_back(GroupElement::space(1, {BigInt(0), BigInt(0)}));
            gens.push_back(GroupElement::space(0, {BigInt(1), BigInt(0)}));
            gens.push_back(GroupElement::space(0, {BigInt(0), BigInt(1)}));
            return gens;
        }
    }
    throw internal_error("bad group family");
}

// Subgroup handle produced by closure(). Finite families enumerate all
// elements; translation subgroups carry a lattice basis (Hermite form rows);
// wallpaper subgroups retain the generator list, which downstream consumers
// evaluate through closure-invariant functionals.
struct Subgroup {
    GroupDescriptor group;
    std::vector<GroupElement> generators;
    std::vector<GroupElement> elements;   // full element list iff enumerated
    std::vector<std::vector<BigInt>> lattice_rows;  // translation: basis of the generated lattice
    bool enumerated = false;

    std::size_t size() const {
        if (!enumerated) throw unsupported_error("size of a non-enumerated subgroup");
        return elements.size();
    }

    bool trivial() const {
        if (enumerated) return elements.size() == 1;
        if (group.family == GroupFamily::translation) return lattice_rows.empty();
        return generators.empty();
    }
};

namespace detail {
// Integer row Hermite reduction; returns the nonzero rows.
inline std::vector<std::vector<BigInt>> hermite_rows(std::vector<std::vector<BigInt>> rows, std::size_t width) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool reduced = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                const BigInt q = rows[i][c] / rows[r][c];
                for (std::size_t j = 0; j < width; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) reduced = false;
            }
            if (reduced) {
                ++r;
                break;
            }
        }
    }
    rows.resize(r);
    return rows;
}
}  // namespace detail

inline Subgroup closure(const GroupDescriptor& g, const std::vector<GroupElement>& gens) {
    Subgroup sub;
    sub.group = g;
    for (const GroupElement& e : gens) {
        const GroupElement n = normalize(g, e);
        if (!is_identity(g, n) &&
            std::find(sub.generators.begin(), sub.generators.end(), n) == sub.generators.end())
            sub.generators.push_back(n);
    }
    switch (g.family) {
        case GroupFamily::trivial:
        case GroupFamily::cyclic:
        case GroupFamily::dihedral: {
            std::set<GroupElement> seen{identity_element(g)};
            std::vector<GroupElement> work(sub.generators);
            while (!work.empty()) {
                const GroupElement e = work.back();
                work.pop_back();
                if (!seen.insert(e).second) continue;
                if (seen.size() > g.element_count())
                    throw internal_error("closure exceeded the group order");
                for (const GroupElement& h : sub.generators) {
                    work.push_back(compose(g, e, h));
                    work.push_back(compose(g, h, e));
                }
                work.push_back(inverse(g, e));
            }
            sub.elements.assign(seen.begin(), seen.end());
            sub.enumerated = true;
            return sub;
        }
        case GroupFamily::translation: {
            std::vector<std::vector<BigInt>> rows;
            for (const GroupElement& e : sub.generators) rows.push_back(e.shift);
            sub.lattice_rows = detail::hermite_rows(std::move(rows), g.trans_rank);
            return sub;
        }
        case GroupFamily::wallpaper:
            return sub;  // generator list is the handle
    }
    throw internal_error("bad group family");
}

}  // namespace gainmat
