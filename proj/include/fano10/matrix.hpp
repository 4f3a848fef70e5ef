#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fano10/poly.hpp"

namespace fano10 {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix r(cols_, rows_, data_.empty() ? T() : data_[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(j, i) = at(i, j);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r(a.rows_, b.cols_, a.data_.empty() && b.data_.empty() ? T() : zero_like(a, b));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r = a;
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!(at(i, j) == at(j, i))) return false;
        return true;
    }

private:
    static T zero_like(const Matrix& a, const Matrix& b) {
        const T& sample = !a.data_.empty() ? a.data_[0] : b.data_[0];
        return sample - sample;
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using ScalarMatrix = Matrix<FieldElement>;
using PolyMatrix = Matrix<MultiPoly>;

inline ScalarMatrix scalar_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols) {
    return ScalarMatrix(rows, cols, f->zero());
}

inline ScalarMatrix scalar_identity(const FieldPtr& f, std::size_t n) {
    ScalarMatrix m = scalar_matrix(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
    return m;
}

inline PolyMatrix poly_matrix(const FieldPtr& f, unsigned arity, std::size_t rows, std::size_t cols) {
    return PolyMatrix(rows, cols, MultiPoly::zero(f, arity));
}

// In-place row reduction to reduced echelon form.  Returns the rank and the
// pivot column list.
inline std::size_t rref(ScalarMatrix& m, std::vector<std::size_t>* pivots = nullptr) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t sel = rank;
        while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(rank, j));
        FieldElement inv = m.at(rank, col).inv();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            FieldElement f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

inline std::size_t rank_of(ScalarMatrix m) { return rref(m); }

// Echelon-form basis of the right kernel; rank + nullity = column count.
inline std::vector<std::vector<FieldElement>> kernel_solve(ScalarMatrix m) {
    const FieldPtr f = [&] {
        // any entry carries the field; an empty matrix has trivial kernel
        if (m.rows() == 0 || m.cols() == 0) return FieldPtr();
        return m.at(0, 0).field();
    }();
    std::vector<std::size_t> pivots;
    rref(m, &pivots);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<FieldElement> v(m.cols(), f->zero());
        v[free_col] = f->one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline FieldElement scalar_det(ScalarMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const FieldPtr f = m.at(0, 0).field();
    FieldElement det = f->one();
    std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m.at(sel, col).is_zero()) ++sel;
        if (sel == n) return f->zero();
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
            det = -det;
        }
        det = det * m.at(col, col);
        FieldElement inv = m.at(col, col).inv();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            FieldElement fct = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j)
                m.at(i, j) = m.at(i, j) - fct * m.at(col, j);
        }
    }
    return det;
}

inline ScalarMatrix evaluate_matrix(const PolyMatrix& m, const std::vector<FieldElement>& point) {
    ScalarMatrix r = scalar_matrix(point[0].field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = m.at(i, j).evaluate(point);
    return r;
}

// Fraction-free (Bareiss) determinant over the polynomial ring.  All interior
// divisions are exact by the standard minor identity.
inline MultiPoly bareiss_det(PolyMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m.rows();
    const FieldPtr f = m.at(0, 0).field();
    unsigned arity = m.at(0, 0).arity();
    if (n == 0) return MultiPoly::constant(f, arity, f->one());
    MultiPoly prev = MultiPoly::constant(f, arity, f->one());
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            std::size_t sel = k + 1;
            while (sel < n && m.at(sel, k).is_zero()) ++sel;
            if (sel == n) return MultiPoly::zero(f, arity);
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                auto q = num.divide_exact(prev);
                if (!q) throw std::logic_error("Bareiss division not exact");
                m.at(i, j) = std::move(*q);
            }
            m.at(i, k) = MultiPoly::zero(f, arity);
        }
        prev = m.at(k, k);
    }
    MultiPoly det = m.at(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

inline PolyMatrix poly_minor(const PolyMatrix& m, std::size_t drop_row, std::size_t drop_col) {
    PolyMatrix r(m.rows() - 1, m.cols() - 1, m.at(0, 0));
    std::size_t ri = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == drop_row) continue;
        std::size_t rj = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j == drop_col) continue;
            r.at(ri, rj) = m.at(i, j);
            ++rj;
        }
        ++ri;
    }
    return r;
}

// Determinant and adjugate with the exact identity m*adj = det*I.
inline std::pair<MultiPoly, PolyMatrix> det_adjugate(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate of non-square matrix");
    std::size_t n = m.rows();
    const FieldPtr f = m.at(0, 0).field();
    unsigned arity = m.at(0, 0).arity();
    if (n == 1) {
        PolyMatrix adj(1, 1, MultiPoly::constant(f, arity, f->one()));
        return {m.at(0, 0), adj};
    }
    PolyMatrix adj = poly_matrix(f, arity, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            MultiPoly cof = bareiss_det(poly_minor(m, i, j));
            if ((i + j) % 2) cof = -cof;
            adj.at(j, i) = std::move(cof);
        }
    }
    MultiPoly det = bareiss_det(m);
    return {det, adj};
}

inline std::vector<Exponents> monomials_of_degree(unsigned arity, unsigned d) {
    std::vector<Exponents> out;
    Exponents cur(arity, 0);
    // lexicographic enumeration of exponent vectors with total degree d
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned remaining) {
        if (pos + 1 == arity) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            cur[pos] = e;
            rec(pos + 1, remaining - e);
        }
    };
    if (arity == 0) return out;
    rec(0, d);
    return out;
}

// Evaluation-interpolation determinant for square matrices of homogeneous
// linear trivariate forms.  Must agree with bareiss_det; used as the
// independent fallback route.
inline MultiPoly det_interpolate(const PolyMatrix& m, SplitMix64& rng) {
    std::size_t n = m.rows();
    const FieldPtr f = m.at(0, 0).field();
    unsigned arity = m.at(0, 0).arity();
    if (arity != 3) throw std::invalid_argument("interpolation determinant needs trivariate entries");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!m.at(i, j).is_zero() && m.at(i, j).homogeneous_degree() != std::optional<unsigned>(1))
                throw std::invalid_argument("interpolation determinant needs linear entries");
    auto monos = monomials_of_degree(3, static_cast<unsigned>(n));
    std::size_t unknowns = monos.size();
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::size_t samples = unknowns + 8;
        ScalarMatrix sys = scalar_matrix(f, samples, unknowns + 1);
        for (std::size_t s = 0; s < samples; ++s) {
            std::vector<FieldElement> pt{f->random(rng), f->random(rng), f->random(rng)};
            for (std::size_t c = 0; c < unknowns; ++c) {
                FieldElement v = f->one();
                for (unsigned k = 0; k < 3; ++k)
                    for (unsigned e = 0; e < monos[c][k]; ++e) v = v * pt[k];
                sys.at(s, c) = v;
            }
            sys.at(s, unknowns) = scalar_det(evaluate_matrix(m, pt));
        }
        std::vector<std::size_t> pivots;
        std::size_t rank = rref(sys, &pivots);
        // need full column rank on the coefficient block and a consistent system
        if (rank < unknowns) continue;
        bool consistent = true;
        for (std::size_t r = 0; r < rank; ++r)
            if (pivots[r] == unknowns) consistent = false;
        if (!consistent) continue;
        std::vector<MultiPoly::Term> terms;
        for (std::size_t c = 0; c < unknowns; ++c)
            terms.emplace_back(monos[c], sys.at(c, unknowns));
        return MultiPoly::from_terms(f, 3, std::move(terms));
    }
    throw std::runtime_error("interpolation determinant failed to converge");
}

} // namespace fano10
