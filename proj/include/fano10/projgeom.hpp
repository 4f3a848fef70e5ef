#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fano10/matrix.hpp"
#include "fano10/unipoly.hpp"

namespace fano10 {

class ProjPoint {
public:
    ProjPoint() = default;
    explicit ProjPoint(std::vector<FieldElement> coords) : c_(std::move(coords)) {
        bool nonzero = false;
        for (const auto& v : c_) nonzero |= !v.is_zero();
        if (!nonzero) throw std::invalid_argument("projective point needs a nonzero coordinate");
    }

    const std::vector<FieldElement>& coords() const { return c_; }
    std::size_t ambient_dim() const { return c_.size() - 1; }
    const FieldPtr& field() const { return c_[0].field(); }

    // equality up to a global scalar
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        if (a.c_.size() != b.c_.size()) return false;
        std::size_t k = 0;
        while (a.c_[k].is_zero() && b.c_[k].is_zero()) {
            ++k;
            if (k == a.c_.size()) return true;
        }
        if (a.c_[k].is_zero() || b.c_[k].is_zero()) return false;
        FieldElement ratio = a.c_[k] / b.c_[k];
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i] * ratio) return false;
        return true;
    }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

    ProjPoint embedded(const FieldPtr& target) const {
        std::vector<FieldElement> out;
        for (const auto& v : c_) out.push_back(MultiPoly::convert_coeff(v, target));
        return ProjPoint(std::move(out));
    }

private:
    std::vector<FieldElement> c_;
};

// Projective linear subspace, stored as an rref basis of its affine cone.
class LinSubspace {
public:
    LinSubspace() = default;

    static LinSubspace from_rows(ScalarMatrix rows) {
        std::size_t rank = rref(rows);
        if (rank != rows.rows()) throw std::invalid_argument("subspace basis rows are dependent");
        return LinSubspace(std::move(rows));
    }

    // span of possibly dependent generators; an empty row set gives the
    // empty subspace (proj_dim -1)
    static LinSubspace span_of(ScalarMatrix rows) {
        if (rows.rows() == 0) return LinSubspace(std::move(rows));
        const FieldPtr f = rows.at(0, 0).field();
        std::size_t rank = rref(rows);
        ScalarMatrix basis = scalar_matrix(f, rank, rows.cols());
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rows.cols(); ++j)
                basis.at(i, j) = rows.at(i, j);
        return LinSubspace(std::move(basis));
    }

    static LinSubspace span_of_points(const std::vector<ProjPoint>& pts) {
        const FieldPtr& f = pts.at(0).field();
        ScalarMatrix rows = scalar_matrix(f, pts.size(), pts[0].coords().size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts[i].coords().size(); ++j)
                rows.at(i, j) = pts[i].coords()[j];
        return span_of(std::move(rows));
    }

    const ScalarMatrix& basis() const { return b_; }
    std::size_t ambient_dim() const { return b_.cols() - 1; }
    // projective dimension; -1 encodes the empty subspace
    int proj_dim() const { return static_cast<int>(b_.rows()) - 1; }

    bool contains_point(const ProjPoint& p) const {
        ScalarMatrix stacked = scalar_matrix(p.field(), b_.rows() + 1, b_.cols());
        for (std::size_t i = 0; i < b_.rows(); ++i)
            for (std::size_t j = 0; j < b_.cols(); ++j)
                stacked.at(i, j) = b_.at(i, j);
        for (std::size_t j = 0; j < b_.cols(); ++j)
            stacked.at(b_.rows(), j) = p.coords()[j];
        return rref(stacked) == b_.rows();
    }

    LinSubspace joined_with(const ProjPoint& p) const {
        ScalarMatrix stacked = scalar_matrix(p.field(), b_.rows() + 1, b_.cols());
        for (std::size_t i = 0; i < b_.rows(); ++i)
            for (std::size_t j = 0; j < b_.cols(); ++j)
                stacked.at(i, j) = b_.at(i, j);
        for (std::size_t j = 0; j < b_.cols(); ++j)
            stacked.at(b_.rows(), j) = p.coords()[j];
        return span_of(std::move(stacked));
    }

    // Zassenhaus intersection
    LinSubspace intersect(const LinSubspace& other) const {
        const FieldPtr& f = b_.at(0, 0).field();
        std::size_t n = b_.cols();
        std::size_t r1 = b_.rows(), r2 = other.b_.rows();
        ScalarMatrix z = scalar_matrix(f, r1 + r2, 2 * n);
        for (std::size_t i = 0; i < r1; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                z.at(i, j) = b_.at(i, j);
                z.at(i, n + j) = b_.at(i, j);
            }
        for (std::size_t i = 0; i < r2; ++i)
            for (std::size_t j = 0; j < n; ++j)
                z.at(r1 + i, j) = other.b_.at(i, j);
        std::size_t rank = rref(z);
        // rows of rank-part with zero left half carry the intersection in the right half
        std::vector<std::vector<FieldElement>> keep;
        for (std::size_t i = 0; i < rank; ++i) {
            bool left_zero = true;
            for (std::size_t j = 0; j < n && left_zero; ++j)
                left_zero = z.at(i, j).is_zero();
            if (!left_zero) continue;
            std::vector<FieldElement> row;
            for (std::size_t j = 0; j < n; ++j) row.push_back(z.at(i, n + j));
            keep.push_back(std::move(row));
        }
        ScalarMatrix basis = scalar_matrix(f, keep.size(), n);
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                basis.at(i, j) = keep[i][j];
        return span_of(std::move(basis));
    }

    bool same_as(const LinSubspace& other) const {
        if (b_.rows() != other.b_.rows() || b_.cols() != other.b_.cols()) return false;
        // both are rref bases, so row spaces agree iff the matrices agree
        // after normalization; compare via rank of the stack
        ScalarMatrix stacked = scalar_matrix(b_.at(0, 0).field(), b_.rows() + other.b_.rows(), b_.cols());
        for (std::size_t i = 0; i < b_.rows(); ++i)
            for (std::size_t j = 0; j < b_.cols(); ++j)
                stacked.at(i, j) = b_.at(i, j);
        for (std::size_t i = 0; i < other.b_.rows(); ++i)
            for (std::size_t j = 0; j < b_.cols(); ++j)
                stacked.at(b_.rows() + i, j) = other.b_.at(i, j);
        return rref(stacked) == b_.rows();
    }

    ProjPoint row_point(std::size_t i) const {
        std::vector<FieldElement> c;
        for (std::size_t j = 0; j < b_.cols(); ++j) c.push_back(b_.at(i, j));
        return ProjPoint(std::move(c));
    }

    LinSubspace embedded(const FieldPtr& target) const {
        ScalarMatrix m = scalar_matrix(target, b_.rows(), b_.cols());
        for (std::size_t i = 0; i < b_.rows(); ++i)
            for (std::size_t j = 0; j < b_.cols(); ++j)
                m.at(i, j) = MultiPoly::convert_coeff(b_.at(i, j), target);
        return from_rows(std::move(m));
    }

private:
    explicit LinSubspace(ScalarMatrix b) : b_(std::move(b)) {}
    ScalarMatrix b_;
};

// Quadric hypersurface given by a symmetric Gram matrix: q(x) = x^T A x.
class Quadric {
public:
    explicit Quadric(ScalarMatrix gram) : a_(std::move(gram)) {
        if (!a_.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
    }

    // Gram matrix of a quadratic form given as a polynomial; off-diagonal
    // coefficients are halved
    static Quadric from_form(const MultiPoly& q) {
        unsigned n = q.arity();
        const FieldPtr& f = q.field();
        ScalarMatrix a = scalar_matrix(f, n, n);
        FieldElement half = f->from_int(2).inv();
        for (const auto& [e, c] : q.terms()) {
            int i = -1, j = -1;
            unsigned total = 0;
            for (unsigned k = 0; k < n; ++k) {
                total += e[k];
                if (e[k] >= 1 && i < 0) i = static_cast<int>(k);
                if (e[k] == 2) j = static_cast<int>(k);
                else if (e[k] == 1 && static_cast<int>(k) != i) j = static_cast<int>(k);
            }
            if (total != 2) throw std::invalid_argument("form is not quadratic");
            if (i == j) {
                a.at(i, i) = c;
            } else {
                a.at(i, j) = c * half;
                a.at(j, i) = c * half;
            }
        }
        return Quadric(std::move(a));
    }

    const ScalarMatrix& gram() const { return a_; }
    std::size_t ambient_dim() const { return a_.rows() - 1; }
    const FieldPtr& field() const { return a_.at(0, 0).field(); }

    FieldElement evaluate(const ProjPoint& p) const {
        FieldElement acc = field()->zero();
        const auto& x = p.coords();
        for (std::size_t i = 0; i < a_.rows(); ++i)
            for (std::size_t j = 0; j < a_.cols(); ++j)
                acc = acc + x[i] * a_.at(i, j) * x[j];
        return acc;
    }

    FieldElement bilinear(const std::vector<FieldElement>& u, const std::vector<FieldElement>& v) const {
        FieldElement acc = field()->zero();
        for (std::size_t i = 0; i < a_.rows(); ++i)
            for (std::size_t j = 0; j < a_.cols(); ++j)
                acc = acc + u[i] * a_.at(i, j) * v[j];
        return acc;
    }

    MultiPoly form() const {
        const FieldPtr& f = field();
        unsigned n = static_cast<unsigned>(a_.rows());
        std::vector<MultiPoly::Term> terms;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i; j < n; ++j) {
                FieldElement c = (i == j) ? a_.at(i, i) : a_.at(i, j) + a_.at(j, i);
                if (c.is_zero()) continue;
                Exponents e(n, 0);
                e[i] += 1;
                e[j] += 1;
                terms.emplace_back(std::move(e), c);
            }
        return MultiPoly::from_terms(f, n, std::move(terms));
    }

    Quadric embedded(const FieldPtr& target) const {
        ScalarMatrix m = scalar_matrix(target, a_.rows(), a_.cols());
        for (std::size_t i = 0; i < a_.rows(); ++i)
            for (std::size_t j = 0; j < a_.cols(); ++j)
                m.at(i, j) = MultiPoly::convert_coeff(a_.at(i, j), target);
        return Quadric(std::move(m));
    }

private:
    ScalarMatrix a_;
};

// rank of the Gram matrix together with the projectivized kernel;
// n - rank = projective dimension of the vertex
inline std::pair<std::size_t, LinSubspace> rank_vertex(const Quadric& q) {
    bool zero = true;
    for (std::size_t i = 0; i < q.gram().rows() && zero; ++i)
        for (std::size_t j = 0; j < q.gram().cols() && zero; ++j)
            zero = q.gram().at(i, j).is_zero();
    if (zero) throw std::invalid_argument("zero quadratic form");
    auto kernel = kernel_solve(q.gram());
    const FieldPtr& f = q.field();
    std::size_t n1 = q.gram().rows();
    ScalarMatrix basis = scalar_matrix(f, kernel.size(), n1);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = 0; j < n1; ++j)
            basis.at(i, j) = kernel[i][j];
    LinSubspace vertex = LinSubspace::span_of(std::move(basis));
    return {n1 - kernel.size(), vertex};
}

// isotropy of a whole subspace: B^T A B = 0
inline bool contains(const Quadric& q, const LinSubspace& s) {
    if (q.ambient_dim() != s.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
    const ScalarMatrix& b = s.basis();
    ScalarMatrix prod = b * q.gram() * b.transpose();
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j)
            if (!prod.at(i, j).is_zero()) return false;
    return true;
}

struct RulingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two isotropic 3-planes through the vertex of a rank-6 quadric in P^6 lie in
// the same family of the ruling iff their intersection has odd projective
// dimension.  This parity rule is the implemented definition of "same family";
// it is certified against a brute-force family-connectivity oracle in tests.
inline bool same_ruling(const Quadric& q, const LinSubspace& p1, const LinSubspace& p2) {
    if (q.ambient_dim() != 6) throw RulingError("quadric must live in P^6");
    auto [rank, vertex] = rank_vertex(q);
    if (rank != 6) throw RulingError("quadric must have rank 6");
    ProjPoint v = vertex.row_point(0);
    auto check = [&](const LinSubspace& p, const char* which) {
        if (p.proj_dim() != 3) throw RulingError(std::string(which) + ": not a 3-plane");
        if (!p.contains_point(v)) throw RulingError(std::string(which) + ": does not contain the vertex");
        if (!contains(q, p)) throw RulingError(std::string(which) + ": not isotropic for the quadric");
    };
    check(p1, "first plane");
    check(p2, "second plane");
    int d = p1.intersect(p2).proj_dim();
    return d % 2 != 0; // both planes contain the vertex, so d >= 0
}

// rank of the Jacobian of the given forms at a point of their common zero locus
inline std::size_t jacobian_rank(const std::vector<MultiPoly>& forms, const ProjPoint& pt) {
    const FieldPtr& f = pt.field();
    for (const auto& g : forms)
        if (!g.evaluate(pt.coords()).is_zero())
            throw std::invalid_argument("point does not lie on the variety");
    ScalarMatrix jac = scalar_matrix(f, forms.size(), pt.coords().size());
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = 0; j < pt.coords().size(); ++j)
            jac.at(i, j) = forms[i].derivative(static_cast<unsigned>(j)).evaluate(pt.coords());
    return rank_of(std::move(jac));
}

// Random isotropic 3-plane through the vertex of a rank-6 quadric in P^6:
// greedy extension of random isotropic vectors to an isotropic flag,
// resampling on failure.
inline std::optional<LinSubspace> sample_isotropic_3plane(const Quadric& q, SplitMix64& rng, int budget = 64) {
    const FieldPtr& f = q.field();
    auto [rank, vertex] = rank_vertex(q);
    if (rank != 6 || q.ambient_dim() != 6) throw std::invalid_argument("need a rank-6 quadric in P^6");
    std::size_t n = 7;
    std::vector<std::vector<FieldElement>> span{std::vector<FieldElement>()};
    span[0].clear();
    for (std::size_t j = 0; j < n; ++j) span[0].push_back(vertex.basis().at(0, j));
    while (span.size() < 4 && budget-- > 0) {
        // orthogonal complement of the current span
        ScalarMatrix cond = scalar_matrix(f, span.size(), n);
        for (std::size_t i = 0; i < span.size(); ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                FieldElement acc = f->zero();
                for (std::size_t k = 0; k < n; ++k)
                    acc = acc + span[i][k] * q.gram().at(k, j);
                cond.at(i, j) = acc;
            }
        }
        auto comp = kernel_solve(cond);
        // random u = a + t b in the complement with q(u) = 0
        auto sample_in_comp = [&] {
            std::vector<FieldElement> v(n, f->zero());
            for (const auto& basis_vec : comp) {
                FieldElement c = f->random(rng);
                for (std::size_t j = 0; j < n; ++j) v[j] = v[j] + c * basis_vec[j];
            }
            return v;
        };
        std::vector<FieldElement> a = sample_in_comp(), b = sample_in_comp();
        FieldElement qa = q.bilinear(a, a), qab = q.bilinear(a, b), qb = q.bilinear(b, b);
        std::optional<FieldElement> t;
        if (!qb.is_zero()) {
            // qa + 2 t qab + t^2 qb = 0
            FieldElement disc = qab * qab - qa * qb;
            auto root = field_sqrt(disc, rng);
            if (!root) continue;
            t = (-qab + *root) / qb;
        } else if (!qab.is_zero()) {
            t = -qa / (f->from_int(2) * qab);
        } else if (qa.is_zero()) {
            t = f->zero();
        } else {
            continue;
        }
        std::vector<FieldElement> u(n);
        for (std::size_t j = 0; j < n; ++j) u[j] = a[j] + *t * b[j];
        // reject zero or dependent vectors
        ScalarMatrix stacked = scalar_matrix(f, span.size() + 1, n);
        for (std::size_t i = 0; i < span.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) stacked.at(i, j) = span[i][j];
        for (std::size_t j = 0; j < n; ++j) stacked.at(span.size(), j) = u[j];
        if (rank_of(stacked) != span.size() + 1) continue;
        span.push_back(std::move(u));
    }
    if (span.size() < 4) return std::nullopt;
    ScalarMatrix basis = scalar_matrix(f, 4, n);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < n; ++j) basis.at(i, j) = span[i][j];
    LinSubspace plane = LinSubspace::span_of(std::move(basis));
    if (!contains(q, plane)) return std::nullopt;
    return plane;
}

} // namespace fano10
