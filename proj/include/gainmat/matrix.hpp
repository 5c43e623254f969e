#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gainmat/errors.hpp"
#include "gainmat/scalar.hpp"

namespace gainmat {

// Dense matrix over one quadratic field Q(sqrt(n)). All arithmetic is exact;
// entries may freely mix the rational context (n = 0) with one nonzero n.
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    // The unique nonzero quadratic context among entries (0 if all rational).
    unsigned context() const {
        unsigned n = 0;
        for (const Scalar& s : data_) {
            if (s.context() == 0) continue;
            if (n == 0)
                n = s.context();
            else if (n != s.context())
                throw context_error("matrix mixes sqrt(" + std::to_string(n) + ") and sqrt(" +
                                    std::to_string(s.context()) + ")");
        }
        return n;
    }

    bool is_zero() const {
        for (const Scalar& s : data_)
            if (!s.is_zero()) return false;
        return true;
    }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    ExactMatrix column(std::size_t j) const {
        ExactMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
        return c;
    }

    friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }
    friend bool operator!=(const ExactMatrix& x, const ExactMatrix& y) { return !(x == y); }

    friend ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y) {
        require_same_shape(x, y, "+");
        ExactMatrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.data_.size(); ++i) r.data_[i] = x.data_[i] + y.data_[i];
        return r;
    }

    friend ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y) {
        require_same_shape(x, y, "-");
        ExactMatrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.data_.size(); ++i) r.data_[i] = x.data_[i] - y.data_[i];
        return r;
    }

    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
        if (x.cols_ != y.rows_)
            throw shape_error("matrix product shape mismatch: " + x.shape_str() + " * " + y.shape_str());
        ExactMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }

    friend ExactMatrix operator*(const Scalar& s, const ExactMatrix& m) {
        ExactMatrix r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i) r.data_[i] = s * m.data_[i];
        return r;
    }

    std::string shape_str() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  private:
    static void require_same_shape(const ExactMatrix& x, const ExactMatrix& y, const char* op) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw shape_error(std::string("matrix ") + op + " shape mismatch: " + x.shape_str() + " vs " +
                              y.shape_str());
    }

    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

inline ExactMatrix hstack(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.rows() == 0 && x.cols() == 0) return y;
    if (y.rows() == 0 && y.cols() == 0) return x;
    if (x.rows() != y.rows()) throw shape_error("hstack row mismatch: " + x.shape_str() + " | " + y.shape_str());
    ExactMatrix r(x.rows(), x.cols() + y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) r.at(i, j) = x.at(i, j);
        for (std::size_t j = 0; j < y.cols(); ++j) r.at(i, x.cols() + j) = y.at(i, j);
    }
    return r;
}

inline ExactMatrix vstack(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.rows() == 0 && x.cols() == 0) return y;
    if (y.rows() == 0 && y.cols() == 0) return x;
    if (x.cols() != y.cols()) throw shape_error("vstack column mismatch: " + x.shape_str() + " / " + y.shape_str());
    ExactMatrix r(x.rows() + y.rows(), x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < x.rows(); ++i) r.at(i, j) = x.at(i, j);
        for (std::size_t i = 0; i < y.rows(); ++i) r.at(x.rows() + i, j) = y.at(i, j);
    }
    return r;
}

inline ExactMatrix kronecker(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x.at(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < y.rows(); ++p)
                for (std::size_t q = 0; q < y.cols(); ++q)
                    r.at(i * y.rows() + p, j * y.cols() + q) = x.at(i, j) * y.at(p, q);
        }
    return r;
}

namespace detail {

// Integer pair p + q*sqrt(n); Bareiss elimination stays inside Z[sqrt(n)],
// so rank needs no rational arithmetic after row denominators are cleared.
struct RingEnt {
    BigInt p, q;
    bool zero() const { return p == 0 && q == 0; }
};

inline BigInt exact_quotient(const BigInt& x, const BigInt& d) {
    BigInt q, r;
    divide_qr(x, d, q, r);
    if (r != 0) throw internal_error("fraction-free elimination produced a non-exact division");
    return q;
}

inline RingEnt ring_mul(const RingEnt& x, const RingEnt& y, const BigInt& n) {
    return {x.p * y.p + n * x.q * y.q, x.p * y.q + x.q * y.p};
}

inline RingEnt ring_div(const RingEnt& x, const RingEnt& d, const BigInt& n) {
    if (d.q == 0) return {exact_quotient(x.p, d.p), exact_quotient(x.q, d.p)};
    const RingEnt conj{d.p, -d.q};
    const BigInt norm = d.p * d.p - n * d.q * d.q;
    const RingEnt y = ring_mul(x, conj, n);
    return {exact_quotient(y.p, norm), exact_quotient(y.q, norm)};
}

// Clears denominators row by row (row scaling preserves rank).
inline std::vector<std::vector<RingEnt>> to_ring_rows(const ExactMatrix& m) {
    std::vector<std::vector<RingEnt>> rows(m.rows(), std::vector<RingEnt>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            l = lcm(l, den(m.at(i, j).rational_part()));
            l = lcm(l, den(m.at(i, j).radical_part()));
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Scalar& s = m.at(i, j);
            rows[i][j].p = num(s.rational_part()) * (l / den(s.rational_part()));
            rows[i][j].q = num(s.radical_part()) * (l / den(s.radical_part()));
        }
    }
    return rows;
}

}  // namespace detail

// Rank by fraction-free Bareiss elimination over Z[sqrt(n)].
inline std::size_t rank(const ExactMatrix& m) {
    const BigInt n = m.context();  // also validates context uniformity
    auto a = detail::to_ring_rows(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    detail::RingEnt prev{1, 0};
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c].zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                detail::RingEnt prod1 = detail::ring_mul(a[r][c], a[i][j], n);
                detail::RingEnt prod2 = detail::ring_mul(a[i][c], a[r][j], n);
                detail::RingEnt numer{prod1.p - prod2.p, prod1.q - prod2.q};
                a[i][j] = detail::ring_div(numer, prev, n);
            }
            a[i][c] = detail::RingEnt{0, 0};
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// Reduced row echelon form by exact field elimination; fills pivot columns.
inline ExactMatrix rref(const ExactMatrix& m, std::vector<std::size_t>* pivots = nullptr) {
    ExactMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a.at(pivot, c).is_zero()) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(pivot, j));
        const Scalar inv = Scalar(1) / a.at(r, c);
        for (std::size_t j = c; j < cols; ++j) a.at(r, j) = inv * a.at(r, j);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            const Scalar f = a.at(i, c);
            for (std::size_t j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = std::move(piv);
    return a;
}

// Basis of {x : m x = 0}, one column vector per free column of the RREF.
inline std::vector<ExactMatrix> null_space(const ExactMatrix& m) {
    std::vector<std::size_t> piv;
    const ExactMatrix r = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<ExactMatrix> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        ExactMatrix v(m.cols(), 1);
        v.at(c, 0) = Scalar(1);
        for (std::size_t k = 0; k < piv.size(); ++k)
            if (piv[k] < c) v.at(piv[k], 0) = -r.at(k, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline ExactMatrix inverse(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw shape_error("inverse of non-square matrix " + m.shape_str());
    std::vector<std::size_t> piv;
    const ExactMatrix r = rref(hstack(m, ExactMatrix::identity(m.rows())), &piv);
    if (piv.size() != m.rows() || (m.rows() > 0 && piv.back() >= m.rows()))
        throw error("matrix is singular");
    ExactMatrix inv(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) inv.at(i, j) = r.at(i, m.cols() + j);
    return inv;
}

namespace detail {
inline std::vector<std::pair<std::size_t, std::size_t>> index_pairs(std::size_t d) {
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) ps.emplace_back(i, j);
    return ps;
}
}  // namespace detail

// Second compound matrix: entry [(i1,i2),(j1,j2)] is the 2x2 minor on rows
// {i1,i2} and columns {j1,j2}; pairs ordered lexicographically. Multiplicative
// by Cauchy-Binet, so it sends a representation to a representation.
inline ExactMatrix exterior_square(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw shape_error("exterior square of non-square matrix " + m.shape_str());
    const auto pairs = detail::index_pairs(m.rows());
    ExactMatrix r(pairs.size(), pairs.size());
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = 0; b < pairs.size(); ++b) {
            const auto [i1, i2] = pairs[a];
            const auto [j1, j2] = pairs[b];
            r.at(a, b) = m.at(i1, j1) * m.at(i2, j2) - m.at(i1, j2) * m.at(i2, j1);
        }
    return r;
}

// u ^ v for column vectors, in the same lexicographic pair coordinates, so
// exterior_square(M) * wedge2(u, v) = wedge2(M u, M v).
inline ExactMatrix wedge2(const ExactMatrix& u, const ExactMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
        throw shape_error("wedge2 expects two equal-length column vectors");
    const auto pairs = detail::index_pairs(u.rows());
    ExactMatrix w(pairs.size(), 1);
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        const auto [i, j] = pairs[a];
        w.at(a, 0) = u.at(i, 0) * v.at(j, 0) - u.at(j, 0) * v.at(i, 0);
    }
    return w;
}

}  // namespace gainmat
