#pragma once

#include <map>
#include <memory>
#include <vector>

#include "gainmat/group.hpp"
#include "gainmat/matrix.hpp"
#include "gainmat/random.hpp"

namespace gainmat {

// Exact rotation matrix R(2*pi*j/k) for crystallographic k; entries lie in Q
// for k in {1,2,4} and in Q(sqrt(3)) for k in {3,6}.
inline ExactMatrix rotation_matrix(int k, int j) {
    require_crystallographic_order(k);
    ExactMatrix base(2, 2);
    switch (k) {
        case 1: base = ExactMatrix::identity(2); break;
        case 2: base = Scalar(-1) * ExactMatrix::identity(2); break;
        case 3:
            base.at(0, 0) = Scalar(Rational(-1, 2));
            base.at(0, 1) = Scalar::quad(0, Rational(-1, 2), 3);
            base.at(1, 0) = Scalar::quad(0, Rational(1, 2), 3);
            base.at(1, 1) = Scalar(Rational(-1, 2));
            break;
        case 4:
            base.at(0, 1) = Scalar(-1);
            base.at(1, 0) = Scalar(1);
            break;
        case 6:
            base.at(0, 0) = Scalar(Rational(1, 2));
            base.at(0, 1) = Scalar::quad(0, Rational(-1, 2), 3);
            base.at(1, 0) = Scalar::quad(0, Rational(1, 2), 3);
            base.at(1, 1) = Scalar(Rational(1, 2));
            break;
    }
    ExactMatrix r = ExactMatrix::identity(2);
    for (int s = 0; s < detail::mod(j, k); ++s) r = r * base;
    return r;
}

// Quarter-turn in the plane, used by the rigidity hyperplanes.
inline ExactMatrix quarter_turn() { return rotation_matrix(4, 1); }

inline ExactMatrix int_vector_to_column(const std::vector<BigInt>& z) {
    ExactMatrix v(z.size(), 1);
    for (std::size_t i = 0; i < z.size(); ++i) v.at(i, 0) = Scalar(z[i]);
    return v;
}

enum class RepKind { natural, augmented, exterior_square_natural, exterior_square_augmented };

// Matrix representation of a supported group, with a per-element cache.
// The cache is write-once per element and the object is treated as immutable
// after construction, so sharing across computations is safe.
class Representation {
  public:
    Representation(GroupDescriptor g, RepKind kind) : g_(std::move(g)), kind_(kind) {
        base_dim_ = natural_dim(g_);
        switch (kind_) {
            case RepKind::natural: dim_ = base_dim_; break;
            case RepKind::augmented: dim_ = base_dim_ + 1; break;
            case RepKind::exterior_square_natural: dim_ = base_dim_ * (base_dim_ - 1) / 2; break;
            case RepKind::exterior_square_augmented: dim_ = (base_dim_ + 1) * base_dim_ / 2; break;
        }
        if (g_.family == GroupFamily::wallpaper) {
            lattice_inv_ = inverse(g_.lattice);
            base_rotation_ = g_.lattice * wallpaper_rotation_action(g_.wallpaper) * lattice_inv_;
        }
        if (g_.family == GroupFamily::translation &&
            (kind_ == RepKind::augmented || kind_ == RepKind::exterior_square_augmented) &&
            g_.trans_rank != g_.dimension)
            throw unsupported_error("augmented translation representation needs rank == dimension");
    }

    const GroupDescriptor& group() const { return g_; }
    RepKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }

    const ExactMatrix& matrix(const GroupElement& e0) const {
        const GroupElement e = normalize(g_, e0);
        auto it = cache_.find(e);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(e, build(e)).first->second;
    }

    // Linear part of the element in ambient coordinates (wallpaper: B K^j B^-1).
    ExactMatrix linear_part(const GroupElement& e0) const {
        const GroupElement e = normalize(g_, e0);
        return natural_matrix(e);
    }

    // Translational part in ambient coordinates (zero for point groups).
    ExactMatrix translation_part(const GroupElement& e0) const {
        const GroupElement e = normalize(g_, e0);
        switch (g_.family) {
            case GroupFamily::translation: return int_vector_to_column(e.shift);
            case GroupFamily::wallpaper: return g_.lattice * int_vector_to_column(e.shift);
            default: return ExactMatrix(base_dim_, 1);
        }
    }

  private:
    static std::size_t natural_dim(const GroupDescriptor& g) {
        switch (g.family) {
            case GroupFamily::trivial: return g.dimension;
            case GroupFamily::cyclic:
            case GroupFamily::dihedral:
                if (g.dimension == 1 && g.family == GroupFamily::cyclic && g.order <= 2) return 1;
                if (g.dimension == 2 || g.dimension == 3) return g.dimension;
                throw unsupported_error("no exact natural representation in dimension " +
                                        std::to_string(g.dimension) + " for this point group");
            case GroupFamily::translation: return g.dimension;
            case GroupFamily::wallpaper: return 2;
        }
        throw internal_error("bad group family");
    }

    ExactMatrix natural_matrix(const GroupElement& e) const {
        switch (g_.family) {
            case GroupFamily::trivial: return ExactMatrix::identity(base_dim_);
            case GroupFamily::cyclic:
            case GroupFamily::dihedral: {
                if (base_dim_ == 1) {
                    ExactMatrix m(1, 1);
                    m.at(0, 0) = Scalar(detail::mod(e.rot, 2) == 0 ? 1 : -1);
                    return m;
                }
                ExactMatrix m = ExactMatrix::identity(base_dim_);
                const ExactMatrix r = rotation_matrix(g_.order, e.rot);
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) m.at(i, j) = r.at(i, j);
                if (e.reflected) {
                    // s = diag(1,-1) in the plane; diag(1,-1,-1) in space, so the
                    // group still acts by rotations there.
                    ExactMatrix s = ExactMatrix::identity(base_dim_);
                    s.at(1, 1) = Scalar(-1);
                    if (base_dim_ == 3) s.at(2, 2) = Scalar(-1);
                    m = s * m;
                }
                return m;
            }
            case GroupFamily::translation: return ExactMatrix::identity(base_dim_);
            case GroupFamily::wallpaper: {
                ExactMatrix m = ExactMatrix::identity(2);
                for (int s = 0; s < detail::mod(e.rot, g_.order); ++s) m = m * base_rotation_;
                return m;
            }
        }
        throw internal_error("bad group family");
    }

    ExactMatrix build(const GroupElement& e) const {
        switch (kind_) {
            case RepKind::natural: return natural_matrix(e);
            case RepKind::augmented: {
                const ExactMatrix a = natural_matrix(e);
                const ExactMatrix t = translation_part(e);
                ExactMatrix m(base_dim_ + 1, base_dim_ + 1);
                for (std::size_t i = 0; i < base_dim_; ++i) {
                    for (std::size_t j = 0; j < base_dim_; ++j) m.at(i, j) = a.at(i, j);
                    m.at(i, base_dim_) = t.at(i, 0);
                }
                m.at(base_dim_, base_dim_) = Scalar(1);
                return m;
            }
            case RepKind::exterior_square_natural: return exterior_square(natural_matrix(e));
            case RepKind::exterior_square_augmented: {
                Representation aug(g_, RepKind::augmented);
                return exterior_square(aug.matrix(e));
            }
        }
        throw internal_error("bad representation kind");
    }

    GroupDescriptor g_;
    RepKind kind_;
    std::size_t base_dim_ = 0, dim_ = 0;
    ExactMatrix lattice_inv_, base_rotation_;
    mutable std::map<GroupElement, ExactMatrix> cache_;
};

// dim span{ image(I - rho(gamma)) : gamma in X }. Invariant under replacing X
// by the subgroup it generates, so generator lists are sufficient arguments.
inline std::size_t d_rho(const Representation& rep, const std::vector<GroupElement>& elems) {
    ExactMatrix stacked;
    const ExactMatrix id = ExactMatrix::identity(rep.dim());
    for (const GroupElement& e : elems) stacked = hstack(stacked, id - rep.matrix(e));
    if (stacked.rows() == 0) return 0;
    return rank(stacked);
}

inline std::size_t d_rho(const Representation& rep, const Subgroup& sub) {
    return d_rho(rep, sub.enumerated ? sub.elements : sub.generators);
}

// dim of the common fixed space of the whole group under rep.
inline std::size_t fixed_space_dim(const Representation& rep) {
    ExactMatrix stacked;
    const ExactMatrix id = ExactMatrix::identity(rep.dim());
    for (const GroupElement& e : group_generators(rep.group()))
        stacked = vstack(stacked, rep.matrix(e) - id);
    if (stacked.rows() == 0) return rep.dim();
    return rep.dim() - rank(stacked);
}

// Basis of { B : B K = A B } where K is the lattice action of the base
// rotation and A its ambient matrix; this is the tangent space of admissible
// lattice deformations. Solved by vectorization: (K^T (x) I - I (x) A) vec(B) = 0
// with column-major vec.
inline std::vector<ExactMatrix> lat_bar_basis(const GroupDescriptor& g) {
    if (g.family != GroupFamily::wallpaper) throw unsupported_error("lat_bar_basis needs a wallpaper group");
    const ExactMatrix k = wallpaper_rotation_action(g.wallpaper);
    const Representation rep(g, RepKind::natural);
    const ExactMatrix a = rep.linear_part(GroupElement::rotation(1));
    const ExactMatrix id2 = ExactMatrix::identity(2);
    const ExactMatrix sys = kronecker(k.transpose(), id2) - kronecker(id2, a);
    std::vector<ExactMatrix> basis;
    for (const ExactMatrix& v : null_space(sys)) {
        ExactMatrix b(2, 2);
        b.at(0, 0) = v.at(0, 0);
        b.at(1, 0) = v.at(1, 0);
        b.at(0, 1) = v.at(2, 0);
        b.at(1, 1) = v.at(3, 0);
        basis.push_back(std::move(b));
    }
    return basis;
}

// k-tuple of bilinear forms b_i(alpha, t) = alpha^T C_i t; the pairing that
// couples edge directions with gain translations in lift-style subspaces.
struct BilinearMap {
    std::vector<ExactMatrix> forms;  // each d x t
    std::size_t d = 0, t = 0;

    std::size_t k() const { return forms.size(); }

    // d = 1: b(alpha, t) = alpha * t, one form per translation coordinate.
    static BilinearMap scalar_pairing(std::size_t t) {
        BilinearMap b;
        b.d = 1;
        b.t = t;
        for (std::size_t i = 0; i < t; ++i) {
            ExactMatrix c(1, t);
            c.at(0, i) = Scalar(1);
            b.forms.push_back(std::move(c));
        }
        return b;
    }

    // b(alpha, t) = alpha (x) t with coordinates ordered (l, m) -> l*t + m.
    static BilinearMap tensor_pairing(std::size_t d, std::size_t t) {
        BilinearMap b;
        b.d = d;
        b.t = t;
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t m = 0; m < t; ++m) {
                ExactMatrix c(d, t);
                c.at(l, m) = Scalar(1);
                b.forms.push_back(std::move(c));
            }
        return b;
    }

    // b_i(alpha, t) = <alpha, B_i B^-1 t> for a lattice basis {B_i} of the
    // admissible deformations of B; unitary with respect to the point group.
    static BilinearMap lattice_pairing(const std::vector<ExactMatrix>& lat_basis, const ExactMatrix& lattice) {
        BilinearMap b;
        b.d = 2;
        b.t = 2;
        const ExactMatrix inv = inverse(lattice);
        for (const ExactMatrix& bi : lat_basis) b.forms.push_back(bi * inv);
        return b;
    }

    // Matrix of alpha -> b(alpha, t): a k x d matrix with rows (C_i t)^T.
    ExactMatrix apply_matrix(const ExactMatrix& tvec) const {
        if (tvec.rows() != t || tvec.cols() != 1) throw shape_error("bilinear pairing: bad translation shape");
        ExactMatrix m(k(), d);
        for (std::size_t i = 0; i < k(); ++i) {
            const ExactMatrix col = forms[i] * tvec;  // d x 1
            for (std::size_t j = 0; j < d; ++j) m.at(i, j) = col.at(j, 0);
        }
        return m;
    }

    ExactMatrix apply(const ExactMatrix& alpha, const ExactMatrix& tvec) const {
        return apply_matrix(tvec) * alpha;  // k x 1
    }
};

// mu_b(X) = dim{ b(alpha, gamma) : alpha in F^d, gamma in X }, evaluated by
// stacking the per-gain maps; closure-invariant, so X may be a generator list.
inline std::size_t mu_bilinear(const BilinearMap& b, const std::vector<ExactMatrix>& gains) {
    ExactMatrix stacked;
    for (const ExactMatrix& t : gains) stacked = hstack(stacked, b.apply_matrix(t));
    if (stacked.rows() == 0) return 0;
    return rank(stacked);
}

// Everything needed to run the space-group computations for one wallpaper
// group instance: its lattice, the admissible-deformation basis and the
// induced pairing. k() is the number of lattice degrees of freedom.
struct WallpaperContext {
    GroupDescriptor group;
    std::vector<ExactMatrix> lat_basis;
    BilinearMap pairing;

    std::size_t k() const { return lat_basis.size(); }

    static WallpaperContext make(const GroupDescriptor& g) {
        if (g.family != GroupFamily::wallpaper) throw unsupported_error("wallpaper context needs a wallpaper group");
        WallpaperContext ctx;
        ctx.group = g;
        ctx.lat_basis = lat_bar_basis(g);
        ctx.pairing = BilinearMap::lattice_pairing(ctx.lat_basis, g.lattice);
        return ctx;
    }

    // Whether B equals sum_i s_i B_i for some coefficients, i.e. the lattice
    // lies in the admissible family (always true for B built generically).
    bool lattice_in_family() const {
        ExactMatrix sys;
        for (const ExactMatrix& bi : lat_basis) {
            ExactMatrix v(4, 1);
            v.at(0, 0) = bi.at(0, 0);
            v.at(1, 0) = bi.at(1, 0);
            v.at(2, 0) = bi.at(0, 1);
            v.at(3, 0) = bi.at(1, 1);
            sys = hstack(sys, v);
        }
        ExactMatrix v(4, 1);
        v.at(0, 0) = group.lattice.at(0, 0);
        v.at(1, 0) = group.lattice.at(1, 0);
        v.at(2, 0) = group.lattice.at(0, 1);
        v.at(3, 0) = group.lattice.at(1, 1);
        return rank(sys) == rank(hstack(sys, v));
    }
};

// Generic admissible lattice B = sum_i s_i B_i with fresh random coefficients.
inline GroupDescriptor generic_wallpaper_group(WallpaperName w, Rng& rng) {
    const GroupDescriptor ref = GroupDescriptor::wallpaper_group(w);
    const auto basis = lat_bar_basis(ref);
    for (int attempt = 0; attempt < 8; ++attempt) {
        ExactMatrix b(2, 2);
        for (const ExactMatrix& bi : basis) b = b + rng.random_scalar() * bi;
        if (rank(b) == 2) return GroupDescriptor::wallpaper_group(w, b);
    }
    throw internal_error("could not sample a nonsingular generic lattice");
}

}  // namespace gainmat
