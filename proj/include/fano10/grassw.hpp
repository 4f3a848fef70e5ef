#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano10/projgeom.hpp"
#include "fano10/resultant.hpp"

namespace fano10 {

// Coordinate conventions.
//
// P9  : basis B = (e12,e13,e14,e15,e23,e24,e25,e34,e35,e45) of P(Lambda^2 V5),
//       coordinates indexed 0..9 in that order.
// P7  : P(V8), where V8 = {x14+x25 = x15+x34 = 0}; coordinates
//       (x12,x13,x14,x23,x24,x34,x35,x45), obtained by dropping x15, x25
//       and substituting x15 = -x34, x25 = -x14.
// P6_O: projection from O = [e45]; the P7 coordinates with x45 dropped,
//       i.e. (x12,x13,x14,x23,x24,x34,x35).
namespace wcoord {
// P9 indices
inline constexpr unsigned p9_x12 = 0, p9_x13 = 1, p9_x14 = 2, p9_x15 = 3, p9_x23 = 4,
                          p9_x24 = 5, p9_x25 = 6, p9_x34 = 7, p9_x35 = 8, p9_x45 = 9;
// P7 indices
inline constexpr unsigned p7_x12 = 0, p7_x13 = 1, p7_x14 = 2, p7_x23 = 3, p7_x24 = 4,
                          p7_x34 = 5, p7_x35 = 6, p7_x45 = 7;
// P6_O indices (same order, no x45)
inline constexpr unsigned p6_x12 = 0, p6_x13 = 1, p6_x14 = 2, p6_x23 = 3, p6_x24 = 4,
                          p6_x34 = 5, p6_x35 = 6;
} // namespace wcoord

enum class WOrbit { O1, O2, O3, O4 };

inline const char* orbit_name(WOrbit o) {
    switch (o) {
    case WOrbit::O1: return "O1";
    case WOrbit::O2: return "O2";
    case WOrbit::O3: return "O3";
    default: return "O4";
    }
}

namespace detail {

inline MultiPoly mono2(const FieldPtr& f, unsigned arity, unsigned i, unsigned j, long c) {
    Exponents e(arity, 0);
    e[i] += 1;
    e[j] += 1;
    std::vector<MultiPoly::Term> terms;
    terms.emplace_back(std::move(e), f->from_int(c));
    return MultiPoly::from_terms(f, arity, std::move(terms));
}

} // namespace detail

struct BundleRankRecord {
    bool ok = false;
    bool minors5_vanish = false;   // symbolic: every 5x5 minor is identically zero
    bool minor_certificate = false; // symbolic: designated 4x4 minors force rank >= 4
    bool exhaustive_ok = false;     // all points of P^2 over the auxiliary prime
    std::size_t samples = 0;        // fibers of projective dimension 2 over the field
    std::string witness;            // failure detail, if any
};

class WOModel;

// The fixed Grassmannian fourfold W = G(2,V5) cap P(V8) in its standard
// coordinates, together with the structures attached to it: the Pluecker
// quadrics, the pencil of skew forms, the conic c_U, the beta-plane Pi, and
// the dense-orbit parametrization.  All construction-time identities are
// verified symbolically; an exception means the model is inconsistent.
class WModel {
public:
    static WModel build(const FieldPtr& field) {
        if (field->finite() && (field->characteristic() == 2 || field->characteristic() == 3))
            throw std::invalid_argument("field characteristic 2 or 3 is inadmissible");
        WModel m(field);
        m.verify_construction();
        return m;
    }

    const FieldPtr& field() const { return field_; }

    // quadrics P1..P5 on P9 (pluecker(i) omits index i+1 of {1..5})
    const std::vector<MultiPoly>& pluecker() const { return p9_quadrics_; }
    // the two linear forms x14+x25 and x15+x34 cutting V8
    const std::vector<MultiPoly>& v8_forms() const { return v8_forms_; }
    // the same five quadrics restricted to P7 = P(V8)
    const std::vector<MultiPoly>& w_equations_p7() const { return p7_quadrics_; }
    // the two generators of the pencil of skew forms on V5
    const ScalarMatrix& pencil_form(std::size_t i) const { return pencil_[i]; }
    // the conic c_U = {x1^2 + x2*x3 = 0} inside {x4 = x5 = 0}, on P(V5)
    const MultiPoly& conic_cu() const { return conic_cu_; }
    // the beta-plane Pi = <e12, e13, e23> in P9
    const LinSubspace& plane_pi() const { return pi_; }

    // all seven defining equations of W in P9
    std::vector<MultiPoly> equations_p9() const {
        std::vector<MultiPoly> eqs = p9_quadrics_;
        eqs.insert(eqs.end(), v8_forms_.begin(), v8_forms_.end());
        return eqs;
    }

    bool on_w(const ProjPoint& pt) const {
        for (const auto& e : equations_p9())
            if (!e.evaluate(pt.coords()).is_zero()) return false;
        return true;
    }

    // dense-orbit parametrization
    // (-ux-v^2, u^2-vy, -v, u, uv+xy, x, v, -u, y, 1) in basis B
    ProjPoint orbit4_param(const FieldElement& u, const FieldElement& v,
                           const FieldElement& x, const FieldElement& y) const {
        std::vector<FieldElement> c(10, field_->zero());
        c[0] = -(u * x) - v * v;
        c[1] = u * u - v * y;
        c[2] = -v;
        c[3] = u;
        c[4] = u * v + x * y;
        c[5] = x;
        c[6] = v;
        c[7] = -u;
        c[8] = y;
        c[9] = field_->one();
        return ProjPoint(std::move(c));
    }

    // the same parametrization with symbolic (u,v,x,y), variables 0..3
    std::vector<MultiPoly> orbit4_param_symbolic() const {
        const FieldPtr& f = field_;
        MultiPoly u = MultiPoly::variable(f, 4, 0);
        MultiPoly v = MultiPoly::variable(f, 4, 1);
        MultiPoly x = MultiPoly::variable(f, 4, 2);
        MultiPoly y = MultiPoly::variable(f, 4, 3);
        MultiPoly one = MultiPoly::constant(f, 4, f->one());
        return {-(u * x) - v * v, u * u - v * y, -v, u, u * v + x * y, x, v, -u, y, one};
    }

    WOrbit orbit_classify(const ProjPoint& pt) const {
        if (!on_w(pt)) throw std::invalid_argument("point does not lie on W");
        const auto& c = pt.coords();
        using namespace wcoord;
        bool in_pi = true;
        for (unsigned k = 0; k < 10; ++k)
            if (k != p9_x12 && k != p9_x13 && k != p9_x23 && !c[k].is_zero()) in_pi = false;
        if (in_pi) {
            FieldElement disc = c[p9_x23] * c[p9_x23] + field_->from_int(4) * c[p9_x12] * c[p9_x13];
            return disc.is_zero() ? WOrbit::O1 : WOrbit::O2;
        }
        if (c[p9_x45].is_zero()) return WOrbit::O3;
        return WOrbit::O4;
    }

    // projective tangent space of W at a point of the dense orbit, inside P9
    // (it automatically lies in P(V8) since the V8 forms are among the
    // equations)
    LinSubspace tangent_space(const ProjPoint& pt) const {
        if (orbit_classify(pt) != WOrbit::O4)
            throw std::invalid_argument("tangent space is only provided on the dense orbit");
        auto eqs = equations_p9();
        ScalarMatrix jac = scalar_matrix(field_, eqs.size(), 10);
        for (std::size_t i = 0; i < eqs.size(); ++i)
            for (unsigned j = 0; j < 10; ++j)
                jac.at(i, j) = eqs[i].derivative(j).evaluate(pt.coords());
        if (rank_of(jac) != 5)
            throw std::logic_error("Jacobian rank is not 5 at a dense-orbit point");
        auto ker = kernel_solve(jac);
        ScalarMatrix basis = scalar_matrix(field_, ker.size(), 10);
        for (std::size_t i = 0; i < ker.size(); ++i)
            for (unsigned j = 0; j < 10; ++j) basis.at(i, j) = ker[i][j];
        return LinSubspace::span_of(std::move(basis));
    }

    // gamma_W([V1]): the Pluecker quadric of V1, as a quadric on P7 = P(V8).
    // In coordinates: w = (w1,...,w5) maps to sum_m w_m * P_m restricted to V8.
    Quadric gamma_w(const ProjPoint& v1) const {
        if (v1.coords().size() != 5) throw std::invalid_argument("gamma_w expects a point of P(V5)");
        MultiPoly acc = MultiPoly::zero(field_, 8);
        for (std::size_t m = 0; m < 5; ++m)
            acc = acc + p7_quadrics_[m].scaled(v1.coords()[m]);
        return Quadric::from_form(acc);
    }

    // embed a P9 point of P(V8) into the 8 coordinates of P7
    ProjPoint to_p7(const ProjPoint& pt) const {
        const auto& c = pt.coords();
        using namespace wcoord;
        if (!(c[p9_x14] + c[p9_x25]).is_zero() || !(c[p9_x15] + c[p9_x34]).is_zero())
            throw std::invalid_argument("point is not in P(V8)");
        return ProjPoint({c[p9_x12], c[p9_x13], c[p9_x14], c[p9_x23], c[p9_x24], c[p9_x34], c[p9_x35], c[p9_x45]});
    }

    WOModel project_from_node() const;

private:
    explicit WModel(FieldPtr f) : field_(std::move(f)) {
        const FieldPtr& F = field_;
        using detail::mono2;
        using namespace wcoord;
        // P_m on P9: the Pluecker relation omitting index m of {1..5},
        // P_{ijkl} = x_ij x_kl - x_ik x_jl + x_il x_jk for i<j<k<l
        p9_quadrics_ = {
            // P1: x23*x45 - x24*x35 + x25*x34
            mono2(F, 10, p9_x23, p9_x45, 1) + mono2(F, 10, p9_x24, p9_x35, -1) + mono2(F, 10, p9_x25, p9_x34, 1),
            // P2: x13*x45 - x14*x35 + x15*x34
            mono2(F, 10, p9_x13, p9_x45, 1) + mono2(F, 10, p9_x14, p9_x35, -1) + mono2(F, 10, p9_x15, p9_x34, 1),
            // P3: x12*x45 - x14*x25 + x15*x24
            mono2(F, 10, p9_x12, p9_x45, 1) + mono2(F, 10, p9_x14, p9_x25, -1) + mono2(F, 10, p9_x15, p9_x24, 1),
            // P4: x12*x35 - x13*x25 + x15*x23
            mono2(F, 10, p9_x12, p9_x35, 1) + mono2(F, 10, p9_x13, p9_x25, -1) + mono2(F, 10, p9_x15, p9_x23, 1),
            // P5: x12*x34 - x13*x24 + x14*x23
            mono2(F, 10, p9_x12, p9_x34, 1) + mono2(F, 10, p9_x13, p9_x24, -1) + mono2(F, 10, p9_x14, p9_x23, 1),
        };
        MultiPoly x14 = MultiPoly::variable(F, 10, p9_x14);
        MultiPoly x25 = MultiPoly::variable(F, 10, p9_x25);
        MultiPoly x15 = MultiPoly::variable(F, 10, p9_x15);
        MultiPoly x34 = MultiPoly::variable(F, 10, p9_x34);
        v8_forms_ = {x14 + x25, x15 + x34};
        // restriction to P7: substitute x15 = -x34, x25 = -x14, drop x15/x25
        std::vector<MultiPoly> to_p7_subs;
        auto p7var = [&](unsigned i) { return MultiPoly::variable(F, 8, i); };
        to_p7_subs = {p7var(p7_x12), p7var(p7_x13), p7var(p7_x14), -p7var(p7_x34),
                      p7var(p7_x23), p7var(p7_x24), -p7var(p7_x14), p7var(p7_x34),
                      p7var(p7_x35), p7var(p7_x45)};
        for (const auto& q : p9_quadrics_) p7_quadrics_.push_back(q.substitute(to_p7_subs));
        // pencil of skew forms: e1*^e4* + e2*^e5* and e1*^e5* + e3*^e4*
        pencil_[0] = scalar_matrix(F, 5, 5);
        pencil_[0].at(0, 3) = F->one();
        pencil_[0].at(3, 0) = -F->one();
        pencil_[0].at(1, 4) = F->one();
        pencil_[0].at(4, 1) = -F->one();
        pencil_[1] = scalar_matrix(F, 5, 5);
        pencil_[1].at(0, 4) = F->one();
        pencil_[1].at(4, 0) = -F->one();
        pencil_[1].at(2, 3) = F->one();
        pencil_[1].at(3, 2) = -F->one();
        // c_U on P(V5): x1^2 + x2*x3 (inside x4 = x5 = 0)
        MultiPoly v1 = MultiPoly::variable(F, 5, 0);
        MultiPoly v2 = MultiPoly::variable(F, 5, 1);
        MultiPoly v3 = MultiPoly::variable(F, 5, 2);
        conic_cu_ = v1 * v1 + v2 * v3;
        // Pi = <e12, e13, e23>
        ScalarMatrix pi_rows = scalar_matrix(F, 3, 10);
        pi_rows.at(0, p9_x12) = F->one();
        pi_rows.at(1, p9_x13) = F->one();
        pi_rows.at(2, p9_x23) = F->one();
        pi_ = LinSubspace::from_rows(std::move(pi_rows));
    }

    void verify_construction() const {
        // every defining equation of W vanishes identically on the
        // dense-orbit parametrization
        auto param = orbit4_param_symbolic();
        for (const auto& e : equations_p9())
            if (!e.substitute(param).is_zero())
                throw std::logic_error("a W equation does not vanish on the orbit parametrization");
        // the tangent space at O has the advertised equations and misses Pi
        ProjPoint O = orbit4_param(field_->zero(), field_->zero(), field_->zero(), field_->zero());
        LinSubspace t = tangent_space(O);
        using namespace wcoord;
        for (std::size_t r = 0; r < t.basis().rows(); ++r) {
            const auto& b = t.basis();
            for (unsigned k : {p9_x12, p9_x13, p9_x23})
                if (!b.at(r, k).is_zero()) throw std::logic_error("tangent space at O violates its equations");
            if (!(b.at(r, p9_x14) + b.at(r, p9_x25)).is_zero() || !(b.at(r, p9_x15) + b.at(r, p9_x34)).is_zero())
                throw std::logic_error("tangent space at O violates the V8 relations");
        }
        if (t.proj_dim() != 4) throw std::logic_error("tangent space at O has wrong dimension");
        if (t.intersect(pi_).proj_dim() != -1) throw std::logic_error("tangent space at O meets Pi");
    }

    FieldPtr field_;
    std::vector<MultiPoly> p9_quadrics_;
    std::vector<MultiPoly> v8_forms_;
    std::vector<MultiPoly> p7_quadrics_;
    std::array<ScalarMatrix, 2> pencil_;
    MultiPoly conic_cu_;
    LinSubspace pi_;
};

// The projected fourfold W_O in P^6_O, the pencil cutting it, the 3-plane
// P^3_W, the vertex cubic C_O, and the blow-up bundle structure.
class WOModel {
public:
    const FieldPtr& field() const { return field_; }
    // Q1 = x12*x34 - x13*x24 + x14*x23, Q2 = x12*x35 + x13*x14 - x34*x23
    const MultiPoly& quadric1() const { return q1_; }
    const MultiPoly& quadric2() const { return q2_; }
    const LinSubspace& p3w() const { return p3w_; }

    bool on_wo(const ProjPoint& pt) const {
        return q1_.evaluate(pt.coords()).is_zero() && q2_.evaluate(pt.coords()).is_zero();
    }

    // C_O parametrization: (x14,x24,x34,x35) = (s^2 t, s^3, s t^2, -t^3)
    ProjPoint co_param(const FieldElement& s, const FieldElement& t) const {
        if (s.is_zero() && t.is_zero()) throw std::invalid_argument("C_O parameter (0,0)");
        std::vector<FieldElement> c(7, field_->zero());
        using namespace wcoord;
        c[p6_x14] = s * s * t;
        c[p6_x24] = s * s * s;
        c[p6_x34] = s * t * t;
        c[p6_x35] = -(t * t * t);
        return ProjPoint(std::move(c));
    }

    // the three 2x2 minors of [[x14, x34, -x35], [x24, x14, x34]]
    std::vector<MultiPoly> co_minors() const {
        const FieldPtr& F = field_;
        using namespace wcoord;
        auto v = [&](unsigned i) { return MultiPoly::variable(F, 7, i); };
        MultiPoly x14 = v(p6_x14), x24 = v(p6_x24), x34 = v(p6_x34), x35 = v(p6_x35);
        return {x14 * x14 - x34 * x24, x14 * x34 + x35 * x24, x34 * x34 + x35 * x14};
    }

    bool on_co(const ProjPoint& pt) const {
        for (const auto& m : co_minors())
            if (!m.evaluate(pt.coords()).is_zero()) return false;
        return p3w_.contains_point(pt);
    }

    // vertex of the pencil member lambda0*Q1 + lambda1*Q2
    ProjPoint pencil_vertex(const FieldElement& l0, const FieldElement& l1) const {
        if (l0.is_zero() && l1.is_zero()) throw std::invalid_argument("zero pencil member");
        MultiPoly member = q1_.scaled(l0) + q2_.scaled(l1);
        auto [rank, vertex] = rank_vertex(Quadric::from_form(member));
        if (rank != 6 || vertex.proj_dim() != 0)
            throw std::logic_error("pencil member does not have rank 6 with a point vertex");
        return vertex.row_point(0);
    }

    // the 5x7 coefficient matrix (in x) of the blow-up system: the three
    // minors of (sys1) followed by the two equations of (sys), with symbolic
    // parameters (a12, a13, a23)
    PolyMatrix bundle_matrix_symbolic() const {
        const FieldPtr& F = field_;
        PolyMatrix m = poly_matrix(F, 3, 5, 7);
        auto a = [&](unsigned i) { return MultiPoly::variable(F, 3, i); };
        using namespace wcoord;
        MultiPoly a12 = a(0), a13 = a(1), a23 = a(2);
        // minor rows of (sys1): a12*x13 - a13*x12, a12*x23 - a23*x12, a13*x23 - a23*x13
        m.at(0, p6_x12) = -a13;
        m.at(0, p6_x13) = a12;
        m.at(1, p6_x12) = -a23;
        m.at(1, p6_x23) = a12;
        m.at(2, p6_x13) = -a23;
        m.at(2, p6_x23) = a13;
        // rows of (sys): a12*x34 - a13*x24 + a23*x14 and a12*x35 + a13*x14 - a23*x34
        m.at(3, p6_x14) = a23;
        m.at(3, p6_x24) = -a13;
        m.at(3, p6_x34) = a12;
        m.at(4, p6_x14) = a13;
        m.at(4, p6_x34) = -a23;
        m.at(4, p6_x35) = a12;
        return m;
    }

    // fiber of the bundle projection over a = (a12:a13:a23)
    LinSubspace bundle_fiber(const ProjPoint& a) const {
        if (a.coords().size() != 3) throw std::invalid_argument("bundle base point must lie in P^2_W");
        ScalarMatrix sys = evaluate_matrix(bundle_matrix_symbolic(), a.coords());
        auto ker = kernel_solve(sys);
        ScalarMatrix basis = scalar_matrix(field_, ker.size(), 7);
        for (std::size_t i = 0; i < ker.size(); ++i)
            for (unsigned j = 0; j < 7; ++j) basis.at(i, j) = ker[i][j];
        return LinSubspace::span_of(std::move(basis));
    }

    // the fiber M_{V4} for the hyperplane b1 x1 + b2 x2 + b3 x3 = 0 through
    // V_O; equals bundle_fiber at a = (b3, -b2, b1)
    LinSubspace mv4_fiber(const ProjPoint& b) const {
        if (b.coords().size() != 3) throw std::invalid_argument("hyperplane point must have 3 coordinates");
        const FieldPtr& F = field_;
        const FieldElement &b1 = b.coords()[0], &b2 = b.coords()[1], &b3 = b.coords()[2];
        using namespace wcoord;
        ScalarMatrix sys = scalar_matrix(F, 5, 7);
        sys.at(0, p6_x14) = b1;
        sys.at(0, p6_x24) = b2;
        sys.at(0, p6_x34) = b3;
        sys.at(1, p6_x34) = -b1;
        sys.at(1, p6_x14) = -b2;
        sys.at(1, p6_x35) = b3;
        sys.at(2, p6_x12) = b2;
        sys.at(2, p6_x13) = b3;
        sys.at(3, p6_x12) = b1;
        sys.at(3, p6_x23) = -b3;
        sys.at(4, p6_x13) = b1;
        sys.at(4, p6_x23) = b2;
        auto ker = kernel_solve(sys);
        ScalarMatrix basis = scalar_matrix(F, ker.size(), 7);
        for (std::size_t i = 0; i < ker.size(); ++i)
            for (unsigned j = 0; j < 7; ++j) basis.at(i, j) = ker[i][j];
        return LinSubspace::span_of(std::move(basis));
    }

    // Global certificate that the blow-up projection to P^2_W is a
    // P^2-bundle: the 5x7 system has rank exactly 4 at every a.
    //  - rank <= 4 everywhere: all 5x5 minors vanish identically (symbolic);
    //  - rank >= 4 everywhere: three designated block 4x4 minors reduce to
    //    a12^4, a13^4 and a23^2(a23^2 + a12 a13), which have no common
    //    projective zero over any field;
    //  - belt and braces: exhaustive rank check over GF(101), plus sampled
    //    fibers over the working field.
    BundleRankRecord bundle_rank_check(unsigned samples, SplitMix64& rng) const {
        BundleRankRecord rec;
        PolyMatrix sym = bundle_matrix_symbolic();
        const FieldPtr& F = field_;

        rec.minors5_vanish = true;
        for (unsigned c0 = 0; c0 < 7 && rec.minors5_vanish; ++c0)
            for (unsigned c1 = c0 + 1; c1 < 7 && rec.minors5_vanish; ++c1) {
                // columns excluded from the 5x5 minor
                PolyMatrix sub = poly_matrix(F, 3, 5, 5);
                unsigned cc = 0;
                for (unsigned c = 0; c < 7; ++c) {
                    if (c == c0 || c == c1) continue;
                    for (unsigned r = 0; r < 5; ++r) sub.at(r, cc) = sym.at(r, c);
                    ++cc;
                }
                if (!bareiss_det(sub).is_zero()) {
                    rec.minors5_vanish = false;
                    rec.witness = "a 5x5 minor is not identically zero";
                }
            }

        auto minor4 = [&](std::array<unsigned, 4> rows, std::array<unsigned, 4> cols) {
            PolyMatrix sub = poly_matrix(F, 3, 4, 4);
            for (unsigned r = 0; r < 4; ++r)
                for (unsigned c = 0; c < 4; ++c) sub.at(r, c) = sym.at(rows[r], cols[c]);
            return bareiss_det(sub);
        };
        MultiPoly a12 = MultiPoly::variable(F, 3, 0);
        MultiPoly a13 = MultiPoly::variable(F, 3, 1);
        MultiPoly a23 = MultiPoly::variable(F, 3, 2);
        using namespace wcoord;
        MultiPoly m1 = minor4({0, 1, 3, 4}, {p6_x13, p6_x23, p6_x34, p6_x35});
        MultiPoly m2 = minor4({0, 2, 3, 4}, {p6_x12, p6_x14, p6_x23, p6_x24});
        MultiPoly m3 = minor4({1, 2, 3, 4}, {p6_x12, p6_x13, p6_x14, p6_x34});
        rec.minor_certificate = MultiPoly::proportional(m1, a12.pow(4)) &&
                                MultiPoly::proportional(m2, a13.pow(4)) &&
                                MultiPoly::proportional(m3, a23.pow(2) * (a23.pow(2) + a12 * a13));
        if (!rec.minor_certificate && rec.witness.empty())
            rec.witness = "designated 4x4 minors do not match their closed forms";

        // exhaustive rank check over a small auxiliary prime
        const std::uint64_t p0 = 101;
        FieldPtr aux = Field::prime(p0);
        PolyMatrix aux_sym = poly_matrix(aux, 3, 5, 7);
        for (unsigned r = 0; r < 5; ++r)
            for (unsigned c = 0; c < 7; ++c) {
                // rebuild entries over GF(p0): coefficients are 0, +-1
                std::vector<MultiPoly::Term> terms;
                for (const auto& [e, cf] : sym.at(r, c).terms()) {
                    FieldElement v = cf.field()->kind() == FieldKind::Rational
                                         ? aux->from_rational(cf.rational_value())
                                         : aux->from_int(cf == cf.field()->one() ? 1 : -1);
                    terms.emplace_back(e, v);
                }
                aux_sym.at(r, c) = MultiPoly::from_terms(aux, 3, std::move(terms));
            }
        rec.exhaustive_ok = true;
        auto aux_rank = [&](const std::vector<FieldElement>& a) {
            return rank_of(evaluate_matrix(aux_sym, a));
        };
        for (std::uint64_t t = 0; t < p0 && rec.exhaustive_ok; ++t)
            for (std::uint64_t u = 0; u < p0; ++u)
                if (aux_rank({aux->one(), aux->from_int(static_cast<long>(t)), aux->from_int(static_cast<long>(u))}) != 4) {
                    rec.exhaustive_ok = false;
                    rec.witness = "rank defect over GF(101), chart a12 = 1";
                    break;
                }
        for (std::uint64_t u = 0; u < p0 && rec.exhaustive_ok; ++u)
            if (aux_rank({aux->zero(), aux->one(), aux->from_int(static_cast<long>(u))}) != 4) {
                rec.exhaustive_ok = false;
                rec.witness = "rank defect over GF(101), chart a13 = 1";
            }
        if (rec.exhaustive_ok && aux_rank({aux->zero(), aux->zero(), aux->one()}) != 4) {
            rec.exhaustive_ok = false;
            rec.witness = "rank defect over GF(101) at (0:0:1)";
        }

        // sampled fibers over the working field
        for (unsigned t = 0; t < samples; ++t) {
            std::vector<FieldElement> a{field_->random(rng), field_->random(rng), field_->random(rng)};
            if (a[0].is_zero() && a[1].is_zero() && a[2].is_zero()) a[0] = field_->one();
            LinSubspace fiber = bundle_fiber(ProjPoint(a));
            if (fiber.proj_dim() != 2) {
                rec.witness = "fiber of wrong dimension at a sampled base point";
                rec.ok = false;
                return rec;
            }
            ++rec.samples;
        }
        rec.ok = rec.minors5_vanish && rec.minor_certificate && rec.exhaustive_ok && rec.samples == samples;
        return rec;
    }

private:
    friend class WModel;
    WOModel(FieldPtr f, MultiPoly q1, MultiPoly q2) : field_(std::move(f)), q1_(std::move(q1)), q2_(std::move(q2)) {
        ScalarMatrix rows = scalar_matrix(field_, 4, 7);
        using namespace wcoord;
        rows.at(0, p6_x14) = field_->one();
        rows.at(1, p6_x24) = field_->one();
        rows.at(2, p6_x34) = field_->one();
        rows.at(3, p6_x35) = field_->one();
        p3w_ = LinSubspace::from_rows(std::move(rows));
    }

    FieldPtr field_;
    MultiPoly q1_, q2_;
    LinSubspace p3w_;
};

inline WOModel WModel::project_from_node() const {
    const FieldPtr& F = field_;
    // drop x45 from the P7 quadrics with no x45 term: P5 gives Q1, P4 gives Q2
    using namespace wcoord;
    auto drop_x45 = [&](const MultiPoly& q) {
        if (q.degree_in(p7_x45) != 0) throw std::logic_error("quadric involves x45");
        return q.dehomogenized(p7_x45);
    };
    MultiPoly q1 = drop_x45(p7_quadrics_[4]);
    MultiPoly q2 = drop_x45(p7_quadrics_[3]);
    WOModel wo(F, q1, q2);
    // symbolic check: the projected orbit parametrization satisfies both
    // quadrics of the pencil
    auto param = orbit4_param_symbolic();
    std::vector<MultiPoly> proj{param[p9_x12], param[p9_x13], param[p9_x14], param[p9_x23],
                                param[p9_x24], param[p9_x34], param[p9_x35]};
    if (!q1.substitute(proj).is_zero() || !q2.substitute(proj).is_zero())
        throw std::logic_error("pencil quadric does not vanish on the projected parametrization");
    // symbolic check: the C_O parametrization satisfies the rank-<=1 minors
    MultiPoly s = MultiPoly::variable(F, 2, 0), t = MultiPoly::variable(F, 2, 1);
    std::vector<MultiPoly> co(7, MultiPoly::zero(F, 2));
    co[p6_x14] = s * s * t;
    co[p6_x24] = s * s * s;
    co[p6_x34] = s * t * t;
    co[p6_x35] = -(t * t * t);
    for (const auto& m : wo.co_minors())
        if (!m.substitute(co).is_zero())
            throw std::logic_error("C_O parametrization does not satisfy the rank condition");
    return wo;
}

} // namespace fano10
