#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gainmat/gain_graph.hpp"
#include "gainmat/matrix.hpp"
#include "gainmat/random.hpp"
#include "gainmat/representation.hpp"

namespace gainmat {

// One edge's canonical subspace inside a common ambient space. The basis
// columns are linearly independent, so dim == basis.cols().
struct EdgeSubspace {
    int edge = -1;
    std::size_t ambient = 0;
    ExactMatrix basis;  // ambient x dim

    std::size_t dim() const { return basis.cols(); }
};

// Basis of the column space: the pivot columns found by row reduction.
inline ExactMatrix column_space_basis(const ExactMatrix& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    ExactMatrix basis(m.rows(), piv.size());
    for (std::size_t c = 0; c < piv.size(); ++c)
        for (std::size_t i = 0; i < m.rows(); ++i) basis.at(i, c) = m.at(i, piv[c]);
    return basis;
}

namespace detail {
inline void put_block(ExactMatrix& m, std::size_t row0, std::size_t col, const ExactMatrix& block,
                      std::size_t block_col) {
    for (std::size_t i = 0; i < block.rows(); ++i) m.at(row0 + i, col) = block.at(i, block_col);
}
}  // namespace detail

// Direction subspaces A_{e,psi} in (F^d)^V: a non-loop i -> j carries
// { x : x(i) + rho(psi) x(j) = 0, x = 0 elsewhere }; a loop at i carries
// { x : x(i) in image(I - rho(psi)), x = 0 elsewhere }.
inline std::vector<EdgeSubspace> build_direction_subspaces(const GainGraph& g, const Representation& rep) {
    const std::size_t d = rep.dim();
    const std::size_t ambient = d * g.vertex_count();
    std::vector<EdgeSubspace> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const ExactMatrix rho = rep.matrix(ed.gain);
        EdgeSubspace s{e, ambient, ExactMatrix()};
        if (!g.is_loop(e)) {
            ExactMatrix basis(ambient, d);
            for (std::size_t l = 0; l < d; ++l) {
                basis.at(d * ed.head + l, l) = Scalar(1);
                for (std::size_t i = 0; i < d; ++i) basis.at(d * ed.tail + i, l) = -rho.at(i, l);
            }
            s.basis = std::move(basis);
        } else {
            const ExactMatrix img = column_space_basis(ExactMatrix::identity(d) - rho);
            ExactMatrix basis(ambient, img.cols());
            for (std::size_t c = 0; c < img.cols(); ++c)
                detail::put_block(basis, d * ed.tail, c, img, c);
            s.basis = std::move(basis);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// Graphic subspaces D_e^d: gains ignored, x(i) = -x(j) on a non-loop and the
// zero subspace on a loop. The identity-gain special case of the above.
inline std::vector<EdgeSubspace> build_graphic_subspaces(const GainGraph& g, std::size_t d) {
    const std::size_t ambient = d * g.vertex_count();
    std::vector<EdgeSubspace> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        EdgeSubspace s{e, ambient, ExactMatrix()};
        if (!g.is_loop(e)) {
            ExactMatrix basis(ambient, d);
            for (std::size_t l = 0; l < d; ++l) {
                basis.at(d * ed.head + l, l) = Scalar(1);
                basis.at(d * ed.tail + l, l) = Scalar(-1);
            }
            s.basis = std::move(basis);
        } else {
            s.basis = ExactMatrix(ambient, 0);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// Lift subspaces L_{e,psi} in (F^d)^V + F^k for translation gains t:
// non-loop: x(i) = -x(j) free, x(*) = -b(x(i), t); loop: x(V) = 0,
// x(*) = -b(alpha, t) over free alpha.
inline std::vector<EdgeSubspace> build_lift_subspaces(const GainGraph& g, const BilinearMap& b) {
    if (g.group().family != GroupFamily::translation)
        throw unsupported_error("lift subspaces need translation gains");
    const std::size_t d = b.d, k = b.k();
    const std::size_t ambient = d * g.vertex_count() + k;
    const std::size_t star = d * g.vertex_count();
    std::vector<EdgeSubspace> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const ExactMatrix bt = b.apply_matrix(int_vector_to_column(ed.gain.shift));  // k x d
        EdgeSubspace s{e, ambient, ExactMatrix()};
        if (!g.is_loop(e)) {
            ExactMatrix basis(ambient, d);
            for (std::size_t l = 0; l < d; ++l) {
                basis.at(d * ed.tail + l, l) = Scalar(1);
                basis.at(d * ed.head + l, l) = Scalar(-1);
                for (std::size_t i = 0; i < k; ++i) basis.at(star + i, l) = -bt.at(i, l);
            }
            s.basis = std::move(basis);
        } else {
            const ExactMatrix img = column_space_basis(Scalar(-1) * bt);
            ExactMatrix basis(ambient, img.cols());
            for (std::size_t c = 0; c < img.cols(); ++c) detail::put_block(basis, star, c, img, c);
            s.basis = std::move(basis);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// Unified subspaces U_{e,psi} in (F^d)^V + F^k for gains (psi1, psi2):
// non-loop: x(i) + psi1 x(j) = 0, x(*) = -b(x(i), psi2); loop:
// x(i) = (I - psi1) alpha, x(*) = -b(alpha, psi2) over free alpha.
inline std::vector<EdgeSubspace> build_unified_subspaces(const GainGraph& g, const Representation& rep,
                                                         const BilinearMap& b) {
    const std::size_t d = rep.dim(), k = b.k();
    if (b.d != d || b.t != d) throw shape_error("unified subspaces: pairing dimensions must match the group");
    const std::size_t ambient = d * g.vertex_count() + k;
    const std::size_t star = d * g.vertex_count();
    std::vector<EdgeSubspace> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const ExactMatrix a = rep.linear_part(ed.gain);
        const ExactMatrix bt = b.apply_matrix(rep.translation_part(ed.gain));  // k x d
        EdgeSubspace s{e, ambient, ExactMatrix()};
        if (!g.is_loop(e)) {
            ExactMatrix basis(ambient, d);
            for (std::size_t l = 0; l < d; ++l) {
                basis.at(d * ed.head + l, l) = Scalar(1);
                ExactMatrix xi(d, 1);
                for (std::size_t i = 0; i < d; ++i) xi.at(i, 0) = -a.at(i, l);
                detail::put_block(basis, d * ed.tail, l, xi, 0);
                const ExactMatrix xs = Scalar(-1) * (bt * xi);
                detail::put_block(basis, star, l, xs, 0);
            }
            s.basis = std::move(basis);
        } else {
            ExactMatrix gen(d + k, d);  // stacked [ (I-A) alpha ; -b(alpha, t) ]
            const ExactMatrix ia = ExactMatrix::identity(d) - a;
            for (std::size_t l = 0; l < d; ++l) {
                for (std::size_t i = 0; i < d; ++i) gen.at(i, l) = ia.at(i, l);
                for (std::size_t i = 0; i < k; ++i) gen.at(d + i, l) = -bt.at(i, l);
            }
            const ExactMatrix img = column_space_basis(gen);
            ExactMatrix basis(ambient, img.cols());
            for (std::size_t c = 0; c < img.cols(); ++c) {
                for (std::size_t i = 0; i < d; ++i) basis.at(d * ed.tail + i, c) = img.at(i, c);
                for (std::size_t i = 0; i < k; ++i) basis.at(star + i, c) = img.at(d + i, c);
            }
            s.basis = std::move(basis);
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline std::size_t common_ambient(const std::vector<EdgeSubspace>& subs) {
    std::size_t ambient = 0;
    for (const EdgeSubspace& s : subs) {
        if (ambient == 0) ambient = s.ambient;
        if (s.ambient != ambient) throw shape_error("edge subspaces live in different ambient spaces");
    }
    return ambient;
}

// dim of the joint span of the subspaces.
inline std::size_t span_rank(const std::vector<EdgeSubspace>& subs) {
    ExactMatrix stacked;
    for (const EdgeSubspace& s : subs) stacked = hstack(stacked, s.basis);
    if (stacked.rows() == 0) return 0;
    return rank(stacked);
}

// Deterministic generic data derived from one seed: per-edge coefficient
// blocks, vertex points, per-edge body points and lattice coefficients. Each
// value depends only on (seed, indices), never on draw order.
struct GenericAssignment {
    std::uint64_t seed = 0;
    std::uint64_t height = kDefaultHeight;

    enum Tag : std::uint64_t { kAlpha = 1, kPoint = 2, kBody = 3, kLattice = 4 };

    Rational alpha(int edge, std::size_t idx) const {
        Rng rng(seed, kAlpha, std::uint64_t(edge), idx);
        return rng.random_rational(height);
    }

    ExactMatrix vertex_point(int v, std::size_t d) const {
        ExactMatrix p(d, 1);
        for (std::size_t i = 0; i < d; ++i) {
            Rng rng(seed, kPoint, std::uint64_t(v), i);
            p.at(i, 0) = Scalar(rng.random_rational(height));
        }
        return p;
    }

    ExactMatrix body_point(int edge, int side, std::size_t d) const {
        ExactMatrix p(d, 1);
        for (std::size_t i = 0; i < d; ++i) {
            Rng rng(seed, kBody, std::uint64_t(edge) * 2 + side, i);
            p.at(i, 0) = Scalar(rng.random_rational(height));
        }
        return p;
    }

    ExactMatrix lattice_coeffs(std::size_t k) const {
        ExactMatrix s(k, 1);
        for (std::size_t i = 0; i < k; ++i) {
            Rng rng(seed, kLattice, i, 0);
            s.at(i, 0) = Scalar(rng.random_rational(height));
        }
        return s;
    }
};

// One generic vector from the subspace: the basis combination with the edge's
// fresh coefficient block. Zero-dimensional subspaces yield the zero vector.
inline ExactMatrix sample_generic_vector(const EdgeSubspace& s, const GenericAssignment& ga) {
    ExactMatrix v(s.ambient, 1);
    for (std::size_t c = 0; c < s.basis.cols(); ++c) {
        const Scalar coeff = Scalar(ga.alpha(s.edge, c));
        for (std::size_t i = 0; i < s.ambient; ++i) v.at(i, 0) += coeff * s.basis.at(i, c);
    }
    return v;
}

struct GenericRank {
    std::size_t rank = 0;
    std::vector<std::uint64_t> seeds;
    bool disagreement = false;
};

// Schwartz-Zippel surrogate for the rank of generic representative vectors:
// max over three derived seeds; a disagreement adds a fourth seed and flags
// the result.
inline GenericRank generic_matroid_rank(const std::vector<EdgeSubspace>& subs, std::uint64_t seed,
                                        std::uint64_t height = kDefaultHeight) {
    common_ambient(subs);
    GenericRank out;
    auto rank_for = [&](std::uint64_t s) {
        GenericAssignment ga{s, height};
        ExactMatrix m;
        for (const EdgeSubspace& sub : subs) m = hstack(m, sample_generic_vector(sub, ga));
        return m.rows() == 0 ? std::size_t(0) : rank(m);
    };
    std::size_t best = 0;
    for (std::uint64_t s = seed; s < seed + 3; ++s) {
        const std::size_t r = rank_for(s);
        if (!out.seeds.empty() && r != best) out.disagreement = true;
        best = std::max(best, r);
        out.seeds.push_back(s);
    }
    if (out.disagreement) {
        best = std::max(best, rank_for(seed + 3));
        out.seeds.push_back(seed + 3);
    }
    out.rank = best;
    return out;
}

// S cap H for H = ker(functional . ): re-bases each subspace.
inline EdgeSubspace intersect_with_hyperplane(const EdgeSubspace& s, const ExactMatrix& functional) {
    if (functional.rows() != s.ambient || functional.cols() != 1)
        throw shape_error("hyperplane functional has wrong shape");
    ExactMatrix w(1, s.basis.cols());
    for (std::size_t c = 0; c < s.basis.cols(); ++c) {
        Scalar acc;
        for (std::size_t i = 0; i < s.ambient; ++i) acc += functional.at(i, 0) * s.basis.at(i, c);
        w.at(0, c) = acc;
    }
    if (w.is_zero()) return s;  // subspace already inside H
    ExactMatrix combo;  // basis.cols() x (dim-1)
    for (const ExactMatrix& v : null_space(w)) combo = hstack(combo, v);
    EdgeSubspace out{s.edge, s.ambient, ExactMatrix(s.ambient, 0)};
    if (combo.rows() != 0) out.basis = s.basis * combo;
    return out;
}

inline std::vector<EdgeSubspace> intersect_with_hyperplane(const std::vector<EdgeSubspace>& subs,
                                                           const ExactMatrix& functional) {
    std::vector<EdgeSubspace> out;
    for (const EdgeSubspace& s : subs) out.push_back(intersect_with_hyperplane(s, functional));
    return out;
}

// dim span of the subspaces truncated by the generic hyperplane functional.
inline std::size_t truncate_rank(const std::vector<EdgeSubspace>& subs, const ExactMatrix& functional) {
    return span_rank(intersect_with_hyperplane(subs, functional));
}

}  // namespace gainmat
