#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano10/grassw.hpp"

namespace fano10 {

// A nonzero homogeneous curve in a projective plane.
struct PlaneCurve {
    MultiPoly poly;
    unsigned degree;

    explicit PlaneCurve(MultiPoly p) : poly(std::move(p)), degree(0) {
        if (poly.is_zero()) throw std::invalid_argument("plane curve must be nonzero");
        if (poly.arity() != 3) throw std::invalid_argument("plane curve must be trivariate");
        auto h = poly.homogeneous_degree();
        if (!h) throw std::invalid_argument("plane curve must be homogeneous");
        degree = *h;
    }
};

// The net of quadrics on P^6_O spanned by the two pencil generators and the
// extra cone Omega_O.  Coordinates on the net: member(l) = l0 A1 + l1 A2 +
// l2 A_Omega, so the pencil is exactly {l2 = 0}.
class NetOfQuadrics {
public:
    NetOfQuadrics(ScalarMatrix a1, ScalarMatrix a2, ScalarMatrix a_omega)
        : gen_{std::move(a1), std::move(a2), std::move(a_omega)} {
        for (const auto& g : gen_) {
            if (g.rows() != 7 || g.cols() != 7) throw std::invalid_argument("net generators must be 7x7");
            if (!g.is_symmetric()) throw std::invalid_argument("net generators must be symmetric");
        }
        field_ = gen_[0].at(0, 0).field();
        // linear independence of the three generators
        ScalarMatrix flat = scalar_matrix(field_, 3, 49);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t i = 0; i < 7; ++i)
                for (std::size_t j = 0; j < 7; ++j)
                    flat.at(k, 7 * i + j) = gen_[k].at(i, j);
        if (rank_of(flat) != 3) throw std::invalid_argument("net generators are linearly dependent");
    }

    const FieldPtr& field() const { return field_; }
    const ScalarMatrix& generator(std::size_t i) const { return gen_[i]; }

    ScalarMatrix member(const FieldElement& l0, const FieldElement& l1, const FieldElement& l2) const {
        ScalarMatrix m = scalar_matrix(field_, 7, 7);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j)
                m.at(i, j) = l0 * gen_[0].at(i, j) + l1 * gen_[1].at(i, j) + l2 * gen_[2].at(i, j);
        return m;
    }

    ScalarMatrix member(const ProjPoint& l) const { return member(l.coords()[0], l.coords()[1], l.coords()[2]); }

    // 7x7 matrix of linear forms in (l0, l1, l2)
    PolyMatrix member_symbolic() const {
        PolyMatrix m = poly_matrix(field_, 3, 7, 7);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j) {
                std::vector<MultiPoly::Term> terms;
                for (unsigned k = 0; k < 3; ++k) {
                    if (gen_[k].at(i, j).is_zero()) continue;
                    Exponents e(3, 0);
                    e[k] = 1;
                    terms.emplace_back(std::move(e), gen_[k].at(i, j));
                }
                m.at(i, j) = MultiPoly::from_terms(field_, 3, std::move(terms));
            }
        return m;
    }

    NetOfQuadrics embedded(const FieldPtr& target) const {
        std::array<ScalarMatrix, 3> out;
        for (std::size_t k = 0; k < 3; ++k) {
            out[k] = scalar_matrix(target, 7, 7);
            for (std::size_t i = 0; i < 7; ++i)
                for (std::size_t j = 0; j < 7; ++j)
                    out[k].at(i, j) = MultiPoly::convert_coeff(gen_[k].at(i, j), target);
        }
        return NetOfQuadrics(std::move(out[0]), std::move(out[1]), std::move(out[2]));
    }

private:
    std::array<ScalarMatrix, 3> gen_;
    FieldPtr field_;
};

struct DiscriminantCurves {
    PlaneCurve septic; // det of the net, degree 7
    PlaneCurve line;   // Gamma_1 = {l2 = 0}
    PlaneCurve sextic; // Gamma_6 = septic / l2
};

// Discriminant of the net: det(member(l)) factors as l2 * Gamma_6 with the
// division exact exactly once.
inline DiscriminantCurves discriminant(const NetOfQuadrics& net) {
    MultiPoly septic = bareiss_det(net.member_symbolic());
    if (septic.is_zero() || septic.homogeneous_degree() != std::optional<unsigned>(7))
        throw std::logic_error("net determinant is not a septic");
    MultiPoly l2 = MultiPoly::variable(net.field(), 3, 2);
    auto sextic = septic.divide_exact(l2);
    if (!sextic) throw std::logic_error("determinant is not divisible by l2: pencil members not all singular");
    if (sextic->divide_exact(l2))
        throw std::logic_error("determinant divisible by l2 twice: degenerate cone");
    return {PlaneCurve(septic), PlaneCurve(l2), PlaneCurve(*sextic)};
}

struct MinRankRecord {
    bool ok = false;
    std::size_t on_curve = 0;  // sampled discriminant points with rank exactly 6
    std::size_t off_curve = 0; // sampled non-discriminant points with rank 7
    std::string witness;
};

namespace detail {

// random point of the plane curve: pick a random line l0,l1 slice and solve
// for l2 (or permuted), retrying until a root exists in the field
inline std::optional<ProjPoint> sample_curve_point(const PlaneCurve& curve, SplitMix64& rng, int budget = 200) {
    const FieldPtr& F = curve.poly.field();
    while (budget-- > 0) {
        unsigned solve_var = static_cast<unsigned>(rng.below(3));
        std::vector<MultiPoly> subs(3, MultiPoly::zero(F, 1));
        std::vector<FieldElement> fixed(3, F->zero());
        for (unsigned k = 0; k < 3; ++k) {
            if (k == solve_var) subs[k] = MultiPoly::variable(F, 1, 0);
            else {
                fixed[k] = F->random(rng);
                subs[k] = MultiPoly::constant(F, 1, fixed[k]);
            }
        }
        MultiPoly restricted = curve.poly.substitute(subs);
        if (restricted.is_zero()) continue;
        UniPoly u = UniPoly::from_multipoly(restricted, 0);
        if (u.degree() < 1) continue;
        auto roots = uni_roots(u, rng);
        if (roots.empty()) continue;
        std::vector<FieldElement> pt = fixed;
        pt[solve_var] = roots[rng.below(roots.size())];
        bool all_zero = pt[0].is_zero() && pt[1].is_zero() && pt[2].is_zero();
        if (all_zero) continue;
        return ProjPoint(pt);
    }
    return std::nullopt;
}

} // namespace detail

// Rank statistics over the net: members on the discriminant have rank
// exactly 6 (never less), members off it have rank 7.
inline MinRankRecord min_rank_check(const NetOfQuadrics& net, const DiscriminantCurves& disc,
                                    std::size_t samples, SplitMix64& rng) {
    MinRankRecord rec;
    const FieldPtr& F = net.field();
    while (rec.on_curve < samples) {
        auto p = detail::sample_curve_point(disc.septic, rng);
        if (!p) {
            rec.witness = "could not sample discriminant points";
            return rec;
        }
        std::size_t r = rank_of(net.member(*p));
        if (r != 6) {
            rec.witness = r < 6 ? "rank below 6 on the discriminant" : "full rank on the discriminant";
            return rec;
        }
        ++rec.on_curve;
    }
    while (rec.off_curve < samples) {
        std::vector<FieldElement> l{F->random(rng), F->random(rng), F->random(rng)};
        if (l[0].is_zero() && l[1].is_zero() && l[2].is_zero()) continue;
        if (disc.septic.poly.evaluate(l).is_zero()) continue;
        if (rank_of(net.member(l[0], l[1], l[2])) != 7) {
            rec.witness = "rank defect off the discriminant";
            return rec;
        }
        ++rec.off_curve;
    }
    rec.ok = true;
    return rec;
}

// scalar adjugate via cofactors
inline ScalarMatrix scalar_adjugate(const ScalarMatrix& m) {
    std::size_t n = m.rows();
    const FieldPtr& F = m.at(0, 0).field();
    ScalarMatrix adj = scalar_matrix(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ScalarMatrix minor = scalar_matrix(F, n - 1, n - 1);
            std::size_t ri = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if (a == i) continue;
                std::size_t rj = 0;
                for (std::size_t b = 0; b < n; ++b) {
                    if (b == j) continue;
                    minor.at(ri, rj) = m.at(a, b);
                    ++rj;
                }
                ++ri;
            }
            FieldElement c = scalar_det(minor);
            if ((i + j) % 2) c = -c;
            adj.at(j, i) = c;
        }
    return adj;
}

// Vertex of a rank-6 member: a nonzero adjugate column, cross-checked against
// the kernel.
inline ProjPoint vertex_map(const NetOfQuadrics& net, const ProjPoint& p) {
    ScalarMatrix m = net.member(p);
    ScalarMatrix adj = scalar_adjugate(m);
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < 7 && !col; ++j)
        for (std::size_t i = 0; i < 7; ++i)
            if (!adj.at(i, j).is_zero()) {
                col = j;
                break;
            }
    if (!col) throw std::invalid_argument("adjugate vanishes: member has rank at most 5");
    std::vector<FieldElement> v;
    for (std::size_t i = 0; i < 7; ++i) v.push_back(adj.at(i, *col));
    ProjPoint vertex((std::vector<FieldElement>(v)));
    auto ker = kernel_solve(m);
    if (ker.size() != 1) throw std::logic_error("member kernel is not one-dimensional");
    if (vertex != ProjPoint(ker[0])) throw std::logic_error("adjugate column disagrees with the kernel");
    return vertex;
}

// Polynomial-level certificate that the adjugate of the symbolic net member
// has rank 1 along the discriminant: every 2x2 minor of adj is exactly
// divisible by det.  Works for any symmetric 7x7 matrix of linear forms.
inline bool adjugate_rank1_identity(const PolyMatrix& sym, std::pair<std::size_t, std::size_t>* witness = nullptr) {
    auto [det, adj] = det_adjugate(sym);
    if (det.is_zero()) throw std::invalid_argument("determinant vanishes identically");
    std::size_t n = sym.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = j + 1; l < n; ++l) {
                    MultiPoly minor = adj.at(i, j) * adj.at(k, l) - adj.at(i, l) * adj.at(k, j);
                    if (minor.is_zero()) continue;
                    if (!minor.divide_exact(det)) {
                        if (witness) *witness = {i * n + j, k * n + l};
                        return false;
                    }
                }
    return true;
}

inline bool adjugate_rank1_identity(const NetOfQuadrics& net) {
    return adjugate_rank1_identity(net.member_symbolic());
}

struct EmbeddingRecord {
    bool ok = false;
    std::size_t distinct_pairs = 0;
    std::size_t gamma1_points = 0;
    std::string witness;
};

// Sample-level injectivity of the vertex map on the discriminant, plus the
// Gamma_1 image tracing C_O.
inline EmbeddingRecord embedding_sample_check(const NetOfQuadrics& net, const DiscriminantCurves& disc,
                                              const WOModel& wo, std::size_t pairs, SplitMix64& rng) {
    EmbeddingRecord rec;
    while (rec.distinct_pairs < pairs) {
        auto p = detail::sample_curve_point(disc.septic, rng);
        auto q = detail::sample_curve_point(disc.septic, rng);
        if (!p || !q) {
            rec.witness = "could not sample discriminant points";
            return rec;
        }
        if (*p == *q) continue;
        if (vertex_map(net, *p) == vertex_map(net, *q)) {
            rec.witness = "vertex collision between distinct discriminant points";
            return rec;
        }
        ++rec.distinct_pairs;
    }
    // points of Gamma_1 = {l2 = 0}: vertices trace C_O, injectively on samples
    const FieldPtr& F = net.field();
    std::vector<ProjPoint> seen;
    while (rec.gamma1_points < pairs / 2 + 1) {
        std::vector<FieldElement> l{F->random(rng), F->random(rng), F->zero()};
        if (l[0].is_zero() && l[1].is_zero()) continue;
        ProjPoint v = vertex_map(net, ProjPoint(l));
        if (!wo.on_co(v)) {
            rec.witness = "Gamma_1 vertex off the twisted cubic";
            return rec;
        }
        bool dup = false;
        for (const auto& s : seen) dup |= (s == v);
        if (dup) continue; // same lambda up to scale can repeat
        seen.push_back(v);
        ++rec.gamma1_points;
    }
    rec.ok = true;
    return rec;
}

struct GenericityCertificate {
    unsigned attempts = 0;
    bool ok = false;
    std::vector<std::string> failures; // failures of the last attempt
};

// A point of one of the discriminant double covers: a base point on the
// curve plus a witness isotropic 3-plane through the vertex of the member
// quadric, selecting one of the two rulings.  Two covering points over the
// same base point are equal iff same_ruling holds for their witnesses.
struct CoveringPoint {
    ProjPoint base;      // point of the discriminant curve (possibly over an extension)
    ProjPoint vertex;    // vertex of the member quadric
    LinSubspace witness; // isotropic 3-plane through the vertex
};

using LabeledDivisor = std::vector<CoveringPoint>;

// equality over the same base point
inline bool same_covering_point(const NetOfQuadrics& net, const CoveringPoint& a, const CoveringPoint& b) {
    if (a.base != b.base) throw std::invalid_argument("covering points lie over different base points");
    Quadric q(net.member(a.base));
    return same_ruling(q, a.witness, b.witness);
}

// The nodal model: a quadric cone Omega with vertex O, its projection
// Omega_O to P^6_O, the six singular points s_1..s_6 of X_O on C_O (over a
// splitting field when necessary), and the genericity certificate.
class NodalXModel {
public:
    // Build from an 8x8 Gram matrix on P7 that must annihilate O = [e45].
    static NodalXModel from_cone(const WOModel& wo, const ScalarMatrix& omega8, SplitMix64& rng) {
        if (omega8.rows() != 8 || omega8.cols() != 8 || !omega8.is_symmetric())
            throw std::invalid_argument("Omega must be a symmetric 8x8 Gram matrix");
        for (std::size_t i = 0; i < 8; ++i)
            if (!omega8.at(i, 7).is_zero())
                throw std::invalid_argument("Omega is not a cone with vertex O");
        ScalarMatrix omega7 = scalar_matrix(omega8.at(0, 0).field(), 7, 7);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j) omega7.at(i, j) = omega8.at(i, j);
        NodalXModel m(wo, omega7);
        m.cert_.attempts = 1;
        m.run_genericity(rng);
        if (!m.cert_.ok) {
            std::string msg = "degenerate nodal model:";
            for (const auto& f : m.cert_.failures) msg += " [" + f + "]";
            throw std::runtime_error(msg);
        }
        return m;
    }

    // Random cone with resampling against the genericity checklist.
    static NodalXModel sample(const WOModel& wo, std::uint64_t seed, unsigned budget = 32) {
        const FieldPtr& F = wo.field();
        if (!F->finite())
            throw std::domain_error("finite field required to certify genericity");
        SplitMix64 rng(seed);
        GenericityCertificate last;
        for (unsigned attempt = 1; attempt <= budget; ++attempt) {
            ScalarMatrix omega7 = scalar_matrix(F, 7, 7);
            for (std::size_t i = 0; i < 7; ++i)
                for (std::size_t j = i; j < 7; ++j) {
                    FieldElement v = F->random(rng);
                    omega7.at(i, j) = v;
                    omega7.at(j, i) = v;
                }
            NodalXModel m(wo, omega7);
            m.cert_.attempts = attempt;
            SplitMix64 check_rng = rng.split();
            m.run_genericity(check_rng);
            if (m.cert_.ok) return m;
            last = m.cert_;
        }
        std::string msg = "genericity budget exhausted; last failures:";
        for (const auto& f : last.failures) msg += " [" + f + "]";
        throw std::runtime_error(msg);
    }

    const WOModel& wo() const { return wo_; }
    const FieldPtr& field() const { return wo_.field(); }
    // 7x7 Gram of Omega_O on P^6_O
    const ScalarMatrix& omega() const { return omega_; }
    // 8x8 Gram of Omega on P7 (zero row/column for x45)
    ScalarMatrix omega_p7() const {
        ScalarMatrix m = scalar_matrix(field(), 8, 8);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j) m.at(i, j) = omega_.at(i, j);
        return m;
    }
    MultiPoly omega_form() const { return Quadric(omega_).form(); }

    NetOfQuadrics net() const {
        return NetOfQuadrics(Quadric::from_form(wo_.quadric1()).gram(), Quadric::from_form(wo_.quadric2()).gram(),
                             omega_);
    }

    const DiscriminantCurves& curves() const { return *disc_; }
    const GenericityCertificate& certificate() const { return cert_; }

    // splitting field of the six points (equals the base field when rational)
    const FieldPtr& splitting_field() const { return split_; }
    // the six singular points of X_O, over the splitting field
    const std::vector<ProjPoint>& singular_points() const { return si_; }
    // the six points p_i = Gamma_1 cap Gamma_6, over the splitting field
    const std::vector<ProjPoint>& pencil_branch_points() const { return pi_; }

    // the quadric surface Q = P^3_W cap Omega_O, as a quadratic form in the
    // coordinates (x14, x24, x34, x35) of P^3_W
    ScalarMatrix q_surface_gram() const {
        const std::array<unsigned, 4> idx{wcoord::p6_x14, wcoord::p6_x24, wcoord::p6_x34, wcoord::p6_x35};
        ScalarMatrix g = scalar_matrix(field(), 4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) g.at(i, j) = omega_.at(idx[i], idx[j]);
        return g;
    }

private:
    NodalXModel(const WOModel& wo, ScalarMatrix omega7) : wo_(wo), omega_(std::move(omega7)) {}

    // the binary sextic Omega_O(C_O(s,t))
    MultiPoly co_sextic() const {
        const FieldPtr& F = field();
        MultiPoly s = MultiPoly::variable(F, 2, 0), t = MultiPoly::variable(F, 2, 1);
        std::vector<MultiPoly> co(7, MultiPoly::zero(F, 2));
        using namespace wcoord;
        co[p6_x14] = s * s * t;
        co[p6_x24] = s * s * s;
        co[p6_x34] = s * t * t;
        co[p6_x35] = -(t * t * t);
        return Quadric(omega_).form().substitute(co);
    }

    static bool binary_form_squarefree(const MultiPoly& form) {
        MultiPoly ds = form.derivative(0), dt = form.derivative(1);
        if (ds.is_zero() || dt.is_zero()) return false;
        MultiPoly g = binary_form_gcd(ds, dt, 0, 1);
        return g.total_degree() == 0;
    }

    // irreducible factor degrees of a binary form, counting a root at
    // infinity as a linear factor
    static std::vector<unsigned> binary_factor_degrees(const MultiPoly& form, SplitMix64& rng) {
        const FieldPtr& F = form.field();
        unsigned d = form.total_degree();
        std::vector<FieldElement> coeffs(d + 1, F->zero());
        for (const auto& [e, c] : form.terms()) coeffs[e[0]] = c;
        UniPoly u(F, coeffs);
        std::vector<unsigned> out;
        for (unsigned k = static_cast<unsigned>(u.degree()); k < d; ++k) out.push_back(1);
        for (const auto& [fac, mult] : uni_factor(u, rng))
            for (unsigned i = 0; i < mult; ++i) out.push_back(static_cast<unsigned>(fac.degree()));
        return out;
    }

    void run_genericity(SplitMix64& rng) {
        cert_.failures.clear();
        const FieldPtr& F = field();

        // the cone meets C_O in six distinct points
        MultiPoly sx = co_sextic();
        if (sx.is_zero() || sx.total_degree() != 6)
            cert_.failures.push_back("restriction to C_O is not a sextic");
        else if (!binary_form_squarefree(sx))
            cert_.failures.push_back("s_i not distinct");

        // discriminant factors as l2 * smooth sextic
        try {
            disc_.emplace(discriminant(net()));
            SplitMix64 r2 = rng.split();
            if (!plane_curve_smooth(disc_->sextic.poly, r2))
                cert_.failures.push_back("Gamma_6 singular");
            // transversality of Gamma_1 with Gamma_6: six simple roots on l2 = 0
            MultiPoly restricted = restrict_to_line(disc_->sextic.poly);
            if (restricted.is_zero() || restricted.total_degree() != 6)
                cert_.failures.push_back("Gamma_6 restricted to Gamma_1 degenerates");
            else if (!binary_form_squarefree(restricted))
                cert_.failures.push_back("Gamma_1 not transverse to Gamma_6");
        } catch (const std::exception& e) {
            cert_.failures.push_back(std::string("discriminant: ") + e.what());
        }

        if (!cert_.failures.empty()) return;

        // splitting field for both six-point divisors
        SplitMix64 r3 = rng.split();
        unsigned K = 1;
        for (unsigned d : binary_factor_degrees(co_sextic(), r3)) K = std::lcm(K, d);
        for (unsigned d : binary_factor_degrees(restrict_to_line(disc_->sextic.poly), r3)) K = std::lcm(K, d);
        if (K == 1) {
            split_ = F;
        } else if (F->kind() == FieldKind::Prime) {
            split_ = Field::extension_of_degree(F->p(), K);
        } else {
            cert_.failures.push_back("extension required over an extension base field");
            return;
        }

        // the six s_i over the splitting field
        SplitMix64 r4 = rng.split();
        si_.clear();
        MultiPoly sx_e = co_sextic().embedded(split_);
        for (const auto& [s, t] : binary_form_roots(sx_e, 0, 1, r4)) {
            using namespace wcoord;
            std::vector<FieldElement> c(7, split_->zero());
            c[p6_x14] = s * s * t;
            c[p6_x24] = s * s * s;
            c[p6_x34] = s * t * t;
            c[p6_x35] = -(t * t * t);
            si_.emplace_back(std::move(c));
        }
        if (si_.size() != 6) {
            cert_.failures.push_back("six points did not split over the computed field");
            return;
        }
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j)
                if (si_[i] == si_[j]) cert_.failures.push_back("s_i not distinct over the splitting field");

        // the six p_i on Gamma_1 over the same field
        pi_.clear();
        MultiPoly rl = restrict_to_line(disc_->sextic.poly).embedded(split_);
        for (const auto& [l0, l1] : binary_form_roots(rl, 0, 1, r4))
            pi_.emplace_back(std::vector<FieldElement>{l0, l1, split_->zero()});
        if (pi_.size() != 6) {
            cert_.failures.push_back("Gamma_1 branch points did not split");
            return;
        }

        cert_.ok = cert_.failures.empty();
    }

    // restrict a trivariate curve to the line l2 = 0, as a binary form in
    // (l0, l1)
    static MultiPoly restrict_to_line(const MultiPoly& curve) {
        const FieldPtr& F = curve.field();
        std::vector<MultiPoly> subs{MultiPoly::variable(F, 2, 0), MultiPoly::variable(F, 2, 1),
                                    MultiPoly::zero(F, 2)};
        return curve.substitute(subs);
    }

    WOModel wo_;
    ScalarMatrix omega_;
    std::optional<DiscriminantCurves> disc_;
    GenericityCertificate cert_;
    FieldPtr split_;
    std::vector<ProjPoint> si_;
    std::vector<ProjPoint> pi_;
};

inline NodalXModel sample_nodal_x(const WOModel& wo, std::uint64_t seed, unsigned budget = 32) {
    return NodalXModel::sample(wo, seed, budget);
}

// singular points of X_O (the vertices over the six branch points)
inline std::vector<ProjPoint> singular_points_xo(const NodalXModel& m) { return m.singular_points(); }

struct Gamma1Labels {
    bool section_ok = false;       // P^3_W isotropic in every pencil member
    bool vertices_match = false;   // {v(p_i)} equals {s_i} as sets
    LabeledDivisor d_tilde;        // the six points labeled by P^3_W
    LabeledDivisor rho_g_cx;       // the six points labeled by <P, s_i>
    std::vector<bool> meets_at_si; // <P, s_i> cap P^3_W = {s_i}
    std::vector<bool> different_family; // per-index parity D-tilde vs rho_g(c_X)
    bool ok = false;
};

// The section of the double cover over Gamma_1 given by P^3_W, the divisor
// D-tilde, and the comparison against rho_g([c_X]) where c_X is the conic cut
// on X by the beta-plane.  The projected beta-plane is
// P = {x14 = x24 = x34 = x35 = 0}.
inline Gamma1Labels gamma1_section_and_labels(const NodalXModel& m) {
    Gamma1Labels out;
    const FieldPtr& E = m.splitting_field();
    NetOfQuadrics net = m.net().embedded(E);
    const WOModel& wo = m.wo();

    // (i) P^3_W is isotropic for both pencil generators (symbolically exact:
    // the Gram blocks over the P^3_W coordinates vanish)
    LinSubspace p3w = wo.p3w().embedded(E);
    out.section_ok = contains(Quadric(net.generator(0)), p3w) && contains(Quadric(net.generator(1)), p3w);

    // the projected beta-plane P, over the splitting field
    using namespace wcoord;
    ScalarMatrix prows = scalar_matrix(E, 3, 7);
    prows.at(0, p6_x12) = E->one();
    prows.at(1, p6_x13) = E->one();
    prows.at(2, p6_x23) = E->one();
    LinSubspace beta = LinSubspace::from_rows(std::move(prows));

    std::vector<ProjPoint> vertices;
    for (const auto& p : m.pencil_branch_points()) vertices.push_back(vertex_map(net, p));
    // {v(p_i)} = {s_i} as sets
    out.vertices_match = true;
    for (const auto& v : vertices) {
        bool found = false;
        for (const auto& s : m.singular_points()) found |= (v == s);
        out.vertices_match &= found;
    }

    out.ok = out.section_ok && out.vertices_match;
    for (std::size_t i = 0; i < 6; ++i) {
        const ProjPoint& p = m.pencil_branch_points()[i];
        Quadric q(net.member(p));
        CoveringPoint dt{p, vertices[i], p3w};
        LinSubspace span = beta.joined_with(vertices[i]);
        CoveringPoint rg{p, vertices[i], span};
        out.d_tilde.push_back(dt);
        out.rho_g_cx.push_back(rg);
        LinSubspace meet = span.intersect(p3w);
        bool meets = meet.proj_dim() == 0 && meet.contains_point(vertices[i]);
        out.meets_at_si.push_back(meets);
        bool diff = false;
        try {
            diff = !same_ruling(q, span, p3w);
        } catch (const std::exception&) {
            out.ok = false;
        }
        out.different_family.push_back(diff);
        out.ok = out.ok && meets && diff;
    }
    return out;
}

// rho_g for a conic on X_O, given by its 2-plane (3x7 basis rows) and the
// quadratic form cutting the conic inside that plane (Gram in plane
// coordinates).  Returns the labeled divisor over the six points of
// L_c cap Gamma_6.
inline LabeledDivisor rho_g_point(const NodalXModel& m, const LinSubspace& plane, const ScalarMatrix& conic_gram,
                                  SplitMix64& rng) {
    if (plane.proj_dim() != 2) throw std::invalid_argument("conic plane must be 2-dimensional");
    const FieldPtr& F = plane.basis().at(0, 0).field();
    NetOfQuadrics net0 = m.net();
    if (!F->same(*net0.field())) throw std::invalid_argument("conic plane must be over the base field");

    // restriction of each generator to the plane must be a multiple of the
    // conic form
    const ScalarMatrix& B = plane.basis();
    std::vector<FieldElement> mu;
    for (std::size_t k = 0; k < 3; ++k) {
        ScalarMatrix r = B * net0.generator(k) * B.transpose();
        // find ratio r = mu * conic_gram
        FieldElement ratio = F->zero();
        bool found = false, consistent = true;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if (conic_gram.at(i, j).is_zero()) {
                    if (!r.at(i, j).is_zero()) consistent = false;
                    continue;
                }
                FieldElement q = r.at(i, j) / conic_gram.at(i, j);
                if (!found) {
                    ratio = q;
                    found = true;
                } else if (q != ratio) {
                    consistent = false;
                }
            }
        if (!consistent) throw std::invalid_argument("conic is not cut on X_O: restriction not proportional");
        mu.push_back(found ? ratio : F->zero());
    }
    bool all_zero = mu[0].is_zero() && mu[1].is_zero() && mu[2].is_zero();
    if (all_zero) throw std::invalid_argument("L_c is not a line: plane contained in every member");

    // parametrize L_c = {mu.l = 0} by two points
    std::array<std::vector<FieldElement>, 2> gens;
    {
        ScalarMatrix murow = scalar_matrix(F, 1, 3);
        for (unsigned k = 0; k < 3; ++k) murow.at(0, k) = mu[k];
        auto ker = kernel_solve(murow);
        if (ker.size() != 2) throw std::logic_error("L_c parametrization failed");
        gens = {ker[0], ker[1]};
    }
    // restrict Gamma_6 to L_c
    const MultiPoly& sextic = m.curves().sextic.poly;
    std::vector<MultiPoly> subs;
    for (unsigned k = 0; k < 3; ++k) {
        MultiPoly s = MultiPoly::variable(F, 2, 0).scaled(gens[0][k]) + MultiPoly::variable(F, 2, 1).scaled(gens[1][k]);
        subs.push_back(s);
    }
    MultiPoly restricted = sextic.substitute(subs);
    if (restricted.is_zero()) throw std::invalid_argument("L_c lies inside Gamma_6");

    // splitting field of the six points
    unsigned K = 1;
    {
        unsigned d = restricted.total_degree();
        std::vector<FieldElement> coeffs(d + 1, F->zero());
        for (const auto& [e, c] : restricted.terms()) coeffs[e[0]] = c;
        UniPoly u(F, coeffs);
        for (const auto& [fac, mult] : uni_factor(u, rng)) {
            (void)mult;
            K = std::lcm(K, static_cast<unsigned>(fac.degree()));
        }
    }
    FieldPtr E = F;
    if (K > 1) {
        if (F->kind() != FieldKind::Prime) throw std::domain_error("extension required over an extension base field");
        E = Field::extension_of_degree(F->p(), K);
    }

    NetOfQuadrics net = net0.embedded(E);
    LinSubspace plane_e = plane.embedded(E);
    LabeledDivisor out;
    MultiPoly restricted_e = restricted.embedded(E);
    std::vector<FieldElement> g0e, g1e;
    for (unsigned k = 0; k < 3; ++k) {
        g0e.push_back(MultiPoly::convert_coeff(gens[0][k], E));
        g1e.push_back(MultiPoly::convert_coeff(gens[1][k], E));
    }
    for (const auto& [a, b] : binary_form_roots(restricted_e, 0, 1, rng)) {
        std::vector<FieldElement> l(3, E->zero());
        for (unsigned k = 0; k < 3; ++k) l[k] = a * g0e[k] + b * g1e[k];
        ProjPoint p(l);
        ProjPoint v = vertex_map(net, p);
        if (plane_e.contains_point(v))
            throw std::invalid_argument("vertex lies in the conic plane");
        LinSubspace witness = plane_e.joined_with(v);
        out.push_back(CoveringPoint{p, v, witness});
    }
    if (out.size() != 6) throw std::logic_error("L_c cap Gamma_6 did not yield six points");
    return out;
}

// The discriminant Gamma_6* of the conic bundle structure over P^2_W:
// restrict Omega_O to the polynomial fiber frames of the three charts, take
// determinants, strip chart content, homogenize, and check agreement.
inline PlaneCurve conic_bundle_discriminant_star(const NodalXModel& m, SplitMix64& rng) {
    const FieldPtr& F = m.field();
    using namespace wcoord;
    // frames: three 7-vectors of polynomials in the two affine chart
    // variables (u, v); chart k means a_k = 1
    auto bi = [&](unsigned arity, std::initializer_list<std::pair<unsigned, MultiPoly>> entries) {
        std::vector<MultiPoly> w(7, MultiPoly::zero(F, arity));
        for (const auto& [idx, p] : entries) w[idx] = p;
        return w;
    };
    MultiPoly u = MultiPoly::variable(F, 2, 0), v = MultiPoly::variable(F, 2, 1);
    MultiPoly one = MultiPoly::constant(F, 2, F->one());

    struct Chart {
        std::array<std::vector<MultiPoly>, 3> frame;
        MultiPoly content;                 // known extraneous factor of det
        std::array<unsigned, 3> homog_map; // chart var order: (fixed, u, v) -> (l0,l1,l2) positions
    };
    std::vector<Chart> charts;
    // chart a12 = 1, u = a13, v = a23
    charts.push_back(Chart{
        {bi(2, {{p6_x12, one}, {p6_x13, u}, {p6_x23, v}}),
         bi(2, {{p6_x14, one}, {p6_x34, -v}, {p6_x35, -u - v * v}}),
         bi(2, {{p6_x24, one}, {p6_x34, u}, {p6_x35, u * v}})},
        MultiPoly::constant(F, 2, F->one()),
        {0, 1, 2}});
    // chart a13 = 1, u = a12, v = a23
    charts.push_back(Chart{
        {bi(2, {{p6_x12, u}, {p6_x13, one}, {p6_x23, v}}),
         bi(2, {{p6_x14, v}, {p6_x24, v * v + u}, {p6_x34, one}}),
         bi(2, {{p6_x14, -u}, {p6_x24, -u * v}, {p6_x35, one}})},
        MultiPoly::constant(F, 2, F->one()),
        {1, 0, 2}});
    // chart a23 = 1, u = a12, v = a13; frame degenerates on 1 + uv = 0
    charts.push_back(Chart{
        {bi(2, {{p6_x12, u}, {p6_x13, v}, {p6_x23, one}}),
         bi(2, {{p6_x14, v}, {p6_x24, one + u * v}, {p6_x34, v * v}}),
         bi(2, {{p6_x14, -(u * u)}, {p6_x34, u}, {p6_x35, one + u * v}})},
        one + u * v,
        {2, 0, 1}});

    std::vector<MultiPoly> results; // homogeneous trivariate, chart order
    for (const auto& chart : charts) {
        // 3x3 restriction of Omega_O to the frame
        PolyMatrix g = poly_matrix(F, 2, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                MultiPoly acc = MultiPoly::zero(F, 2);
                for (std::size_t a = 0; a < 7; ++a)
                    for (std::size_t b = 0; b < 7; ++b) {
                        if (chart.frame[i][a].is_zero() || chart.frame[j][b].is_zero()) continue;
                        acc = acc + (chart.frame[i][a] * chart.frame[j][b]).scaled(m.omega().at(a, b));
                    }
                g.at(i, j) = acc;
            }
        MultiPoly det = bareiss_det(g);
        // strip the known chart content (squared factors of the frame
        // degeneracy locus), then any remaining power needed to reach
        // degree 6
        if (!chart.content.is_constant()) {
            while (det.total_degree() > 6) {
                auto q = det.divide_exact(chart.content);
                if (!q) break;
                det = *q;
            }
        }
        if (det.is_zero() || det.total_degree() > 6)
            throw std::runtime_error("chart determinant does not reduce to degree 6");
        // homogenize to degree 6 in the chart variable order, then permute to
        // (l0 = a12, l1 = a13, l2 = a23)
        MultiPoly h = det.homogenized(0, 6); // variables now (w, u, v)
        std::vector<MultiPoly> perm(3, MultiPoly::zero(F, 3));
        perm[0] = MultiPoly::variable(F, 3, chart.homog_map[0]);
        perm[1] = MultiPoly::variable(F, 3, chart.homog_map[1]);
        perm[2] = MultiPoly::variable(F, 3, chart.homog_map[2]);
        results.push_back(h.substitute(perm));
    }
    for (std::size_t k = 1; k < results.size(); ++k)
        if (!MultiPoly::proportional(results[0], results[k]))
            throw std::runtime_error("chart discriminants disagree");
    PlaneCurve curve(results[0]);
    if (curve.degree != 6) throw std::runtime_error("Gamma_6* does not have degree 6");
    if (!plane_curve_smooth(curve.poly, rng)) throw std::runtime_error("Gamma_6* is singular");
    return curve;
}

} // namespace fano10
