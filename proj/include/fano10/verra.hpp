#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano10/netdisc.hpp"

namespace fano10 {

// The normal form of the nodal projection: on P^6 with coordinates
// (x0..x6), the pencil is spanned by
//   Omega_1 = x0 x1 + x2 x3 + x4 x5,   Omega_2 = x1 x2 + x3 x4 + x5 x6,
// with P^3_W = <e0, e2, e4, e6> and the distinguished line l = <e2, e4>.
// The extra quadric has the shape
//   Omega_O = x2 lam2(x') + x4 lam4(x') + q(x'),  x' = (x0, x1, x3, x5, x6),
// which makes l isotropic for all three.
class NormalFormModel {
public:
    static NormalFormModel build(const FieldPtr& field, std::uint64_t seed) {
        NormalFormModel m(field);
        SplitMix64 rng(seed);
        const std::array<unsigned, 5> xp{0, 1, 3, 5, 6};
        auto random_linear = [&]() {
            MultiPoly acc = MultiPoly::zero(field, 7);
            for (unsigned k : xp) acc = acc + MultiPoly::variable(field, 7, k).scaled(field->random(rng));
            return acc;
        };
        m.lam2_ = random_linear();
        m.lam4_ = random_linear();
        MultiPoly q = MultiPoly::zero(field, 7);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j)
                q = q + (MultiPoly::variable(field, 7, xp[i]) * MultiPoly::variable(field, 7, xp[j]))
                            .scaled(field->random(rng));
        m.q_ = q;
        m.omegao_ = MultiPoly::variable(field, 7, 2) * m.lam2_ + MultiPoly::variable(field, 7, 4) * m.lam4_ + q;
        return m;
    }

    const FieldPtr& field() const { return field_; }
    const MultiPoly& omega1() const { return omega1_; }
    const MultiPoly& omega2() const { return omega2_; }
    const MultiPoly& omega_o() const { return omegao_; }
    const MultiPoly& lam2() const { return lam2_; }
    const MultiPoly& lam4() const { return lam4_; }
    const MultiPoly& qform() const { return q_; }

    LinSubspace p3w() const { return coordinate_subspace({0, 2, 4, 6}); }
    LinSubspace ell() const { return coordinate_subspace({2, 4}); }

    // the net in the normal-form coordinates; lambda_2 carries Omega_O
    NetOfQuadrics net() const {
        return NetOfQuadrics(Quadric::from_form(omega1_).gram(), Quadric::from_form(omega2_).gram(),
                             Quadric::from_form(omegao_).gram());
    }

    // vertex of the rank-6 pencil member l0 Omega_1 + l1 Omega_2
    ProjPoint pencil_vertex(const FieldElement& l0, const FieldElement& l1) const {
        const FieldPtr& F = l0.field();
        std::vector<FieldElement> c(7, F->zero());
        c[0] = l1 * l1 * l1;
        c[2] = -(l0 * l1 * l1);
        c[4] = l0 * l0 * l1;
        c[6] = -(l0 * l0 * l0);
        return ProjPoint(std::move(c));
    }

    // the vertex twisted cubic, symbolically in (l0, l1)
    std::vector<MultiPoly> vertex_param_symbolic() const {
        MultiPoly l0 = MultiPoly::variable(field_, 2, 0), l1 = MultiPoly::variable(field_, 2, 1);
        std::vector<MultiPoly> c(7, MultiPoly::zero(field_, 2));
        c[0] = l1 * l1 * l1;
        c[2] = -(l0 * l1 * l1);
        c[4] = l0 * l0 * l1;
        c[6] = -(l0 * l0 * l0);
        return c;
    }

    // the binary sextic cutting the six nodes of X_O on the vertex cubic
    MultiPoly node_sextic() const { return omegao_.substitute(vertex_param_symbolic()); }

    // polynomial frame of the p_W-fiber plane over b in P^2_W: w0 spans the
    // odd coordinates in direction b, w1 and w2 span the kernel line of the
    // fiber inside P^3_W (the bisecant).  Rows of the returned 3x7 matrix.
    ScalarMatrix fiber_frame(const ProjPoint& b) const {
        const FieldPtr& F = b.coords()[0].field();
        const FieldElement &b0 = b.coords()[0], &b1 = b.coords()[1], &b2 = b.coords()[2];
        ScalarMatrix rows = scalar_matrix(F, 3, 7);
        rows.at(0, 1) = b0;
        rows.at(0, 3) = b1;
        rows.at(0, 5) = b2;
        if (!b0.is_zero()) {
            rows.at(1, 0) = b1 * b1 - b0 * b2;
            rows.at(1, 2) = -(b0 * b1);
            rows.at(1, 4) = b0 * b0;
            rows.at(2, 0) = b1 * b2;
            rows.at(2, 2) = -(b0 * b2);
            rows.at(2, 6) = b0 * b0;
        } else if (!b2.is_zero()) {
            rows.at(1, 0) = b2 * b2;
            rows.at(1, 4) = -(b0 * b2);
            rows.at(1, 6) = b0 * b1;
            rows.at(2, 2) = b2 * b2;
            rows.at(2, 4) = -(b1 * b2);
            rows.at(2, 6) = b1 * b1 - b0 * b2;
        } else {
            // b = (0:1:0): kernel of [[0,1,0,0],[0,0,1,0]]
            rows.at(1, 0) = F->one();
            rows.at(2, 6) = F->one();
        }
        return rows;
    }

private:
    explicit NormalFormModel(FieldPtr f)
        : field_(std::move(f)),
          omega1_(MultiPoly::zero(field_, 7)),
          omega2_(MultiPoly::zero(field_, 7)),
          omegao_(MultiPoly::zero(field_, 7)),
          lam2_(MultiPoly::zero(field_, 7)),
          lam4_(MultiPoly::zero(field_, 7)),
          q_(MultiPoly::zero(field_, 7)) {
        auto v = [&](unsigned i) { return MultiPoly::variable(field_, 7, i); };
        omega1_ = v(0) * v(1) + v(2) * v(3) + v(4) * v(5);
        omega2_ = v(1) * v(2) + v(3) * v(4) + v(5) * v(6);
    }

    LinSubspace coordinate_subspace(std::initializer_list<unsigned> idx) const {
        ScalarMatrix rows = scalar_matrix(field_, idx.size(), 7);
        std::size_t r = 0;
        for (unsigned i : idx) rows.at(r++, i) = field_->one();
        return LinSubspace::from_rows(std::move(rows));
    }

    FieldPtr field_;
    MultiPoly omega1_, omega2_, omegao_;
    MultiPoly lam2_, lam4_, q_;
};

// projection to P^2_W: x -> (x1, x3, x5)
inline ProjPoint map_pw(const ProjPoint& x) {
    const auto& c = x.coords();
    if (c.size() != 7) throw std::invalid_argument("expected a point of P^6");
    if (c[1].is_zero() && c[3].is_zero() && c[5].is_zero())
        throw std::invalid_argument("base point of p_W");
    return ProjPoint({c[1], c[3], c[5]});
}

// the quadratic map to P: x -> (x1 lam4 - x3 lam2, x3 lam4 - x5 lam2, x3^2 - x1 x5)
inline ProjPoint map_pell(const NormalFormModel& m, const ProjPoint& x) {
    const auto& c = x.coords();
    if (c.size() != 7) throw std::invalid_argument("expected a point of P^6");
    FieldElement l2 = m.lam2().evaluate(c), l4 = m.lam4().evaluate(c);
    std::vector<FieldElement> z{c[1] * l4 - c[3] * l2, c[3] * l4 - c[5] * l2, c[3] * c[3] - c[1] * c[5]};
    if (z[0].is_zero() && z[1].is_zero() && z[2].is_zero())
        throw std::invalid_argument("base point of p_ell");
    return ProjPoint(std::move(z));
}

namespace detail {

// a point on the conic (in plane coordinates) with Gram g, by random line
// sections and square roots
inline std::optional<std::vector<FieldElement>> conic_point(const ScalarMatrix& g, SplitMix64& rng,
                                                            int tries = 32) {
    const FieldPtr& F = g.at(0, 0).field();
    std::size_t n = g.rows();
    auto q = [&](const std::vector<FieldElement>& u) {
        FieldElement acc = F->zero();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc = acc + g.at(i, j) * u[i] * u[j];
        return acc;
    };
    auto bil = [&](const std::vector<FieldElement>& u, const std::vector<FieldElement>& v) {
        FieldElement acc = F->zero();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc = acc + g.at(i, j) * u[i] * v[j];
        return acc;
    };
    while (tries-- > 0) {
        std::vector<FieldElement> r, s;
        for (std::size_t i = 0; i < n; ++i) r.push_back(F->random(rng));
        for (std::size_t i = 0; i < n; ++i) s.push_back(F->random(rng));
        // q(r + t s) = q(r) + 2 t B(r,s) + t^2 q(s)
        FieldElement a = q(s), b = bil(r, s), cc = q(r);
        if (a.is_zero()) {
            if (b.is_zero()) continue;
            FieldElement t = -cc / (b + b);
            std::vector<FieldElement> p;
            for (std::size_t i = 0; i < n; ++i) p.push_back(r[i] + t * s[i]);
            return p;
        }
        FieldElement disc = b * b - a * cc;
        auto root = field_sqrt(disc, rng);
        if (!root) continue;
        FieldElement t = (-b + *root) / a;
        std::vector<FieldElement> p;
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            p.push_back(r[i] + t * s[i]);
            nonzero |= !p.back().is_zero();
        }
        if (nonzero) return p;
    }
    return std::nullopt;
}

} // namespace detail

// random points of X_O found on p_W-fiber conics
inline std::vector<ProjPoint> sample_xo_points(const NormalFormModel& m, std::size_t count, std::uint64_t seed,
                                               int budget = 4096) {
    const FieldPtr& F = m.field();
    if (!F->finite()) throw std::domain_error("finite field required for conic point search");
    SplitMix64 rng(seed);
    ScalarMatrix gram = Quadric::from_form(m.omega_o()).gram();
    std::vector<ProjPoint> out;
    while (out.size() < count && budget-- > 0) {
        std::vector<FieldElement> b{F->random(rng), F->random(rng), F->random(rng)};
        if (b[0].is_zero()) continue; // use the generic chart frame
        ScalarMatrix frame = m.fiber_frame(ProjPoint(b));
        ScalarMatrix g = frame * gram * frame.transpose();
        auto p = detail::conic_point(g, rng);
        if (!p) continue;
        std::vector<FieldElement> x(7, F->zero());
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 7; ++j) x[j] = x[j] + (*p)[k] * frame.at(k, j);
        bool nonzero = false;
        for (const auto& c : x) nonzero |= !c.is_zero();
        if (!nonzero) continue;
        ProjPoint pt{std::move(x)};
        if (!m.omega1().evaluate(pt.coords()).is_zero() || !m.omega2().evaluate(pt.coords()).is_zero() ||
            !m.omega_o().evaluate(pt.coords()).is_zero())
            throw std::logic_error("sampled point left X_O");
        out.push_back(std::move(pt));
    }
    if (out.size() < count) throw std::runtime_error("X_O sampling budget exhausted");
    return out;
}

// A bidegree-(2,2) hypersurface of P^2_W x P, stored as a polynomial in
// (y0, y1, y2, z0, z1, z2).
struct VerraSolid {
    MultiPoly form;

    explicit VerraSolid(MultiPoly f) : form(std::move(f)) {
        if (form.is_zero() || form.arity() != 6) throw std::invalid_argument("Verra solid must be a form in 6 variables");
        for (const auto& [e, c] : form.terms()) {
            (void)c;
            if (e[0] + e[1] + e[2] != 2 || e[3] + e[4] + e[5] != 2)
                throw std::invalid_argument("Verra solid must have bidegree (2,2)");
        }
    }

    FieldElement evaluate(const ProjPoint& y, const ProjPoint& z) const {
        std::vector<FieldElement> c = y.coords();
        for (const auto& e : z.coords()) c.push_back(e);
        return form.evaluate(c);
    }
};

// the 36 bidegree-(2,2) monomial exponent vectors, in a fixed order
inline std::vector<Exponents> verra_monomials() {
    std::vector<Exponents> out;
    std::vector<std::array<unsigned, 3>> deg2;
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = i; j < 3; ++j) {
            std::array<unsigned, 3> e{0, 0, 0};
            ++e[i];
            ++e[j];
            deg2.push_back(e);
        }
    for (const auto& ey : deg2)
        for (const auto& ez : deg2) out.push_back({ey[0], ey[1], ey[2], ez[0], ez[1], ez[2]});
    return out;
}

// Implicitization of psi_ell = (p_W, p_ell): the unique bidegree-(2,2) form
// through 40 sampled image points, verified on 200 more.
inline VerraSolid implicitize(const NormalFormModel& m, std::uint64_t seed) {
    const FieldPtr& F = m.field();
    auto image_points = [&](std::size_t n, std::uint64_t s) {
        std::vector<std::pair<ProjPoint, ProjPoint>> pts;
        std::uint64_t bump = 0;
        while (pts.size() < n) {
            for (const auto& x : sample_xo_points(m, n, s + 0x9E37 * ++bump)) {
                try {
                    pts.emplace_back(map_pw(x), map_pell(m, x));
                } catch (const std::invalid_argument&) {
                    continue; // base locus: resample
                }
                if (pts.size() == n) break;
            }
        }
        return pts;
    };
    auto pts = image_points(40, seed);
    std::vector<Exponents> monos = verra_monomials();
    ScalarMatrix eval = scalar_matrix(F, pts.size(), 36);
    for (std::size_t r = 0; r < pts.size(); ++r) {
        std::vector<FieldElement> c = pts[r].first.coords();
        for (const auto& e : pts[r].second.coords()) c.push_back(e);
        for (std::size_t k = 0; k < 36; ++k) {
            FieldElement v = F->one();
            for (unsigned j = 0; j < 6; ++j)
                for (unsigned d = 0; d < monos[k][j]; ++d) v = v * c[j];
            eval.at(r, k) = v;
        }
    }
    auto ker = kernel_solve(eval);
    if (ker.empty()) throw std::runtime_error("implicitization nullity 0: degenerate sample, resample");
    if (ker.size() > 1) throw std::runtime_error("implicitization nullity >= 2: non-generic model, resample");
    std::vector<MultiPoly::Term> terms;
    for (std::size_t k = 0; k < 36; ++k)
        if (!ker[0][k].is_zero()) terms.emplace_back(monos[k], ker[0][k]);
    VerraSolid t{MultiPoly::from_terms(F, 6, std::move(terms))};
    // certificate: 200 fresh image points satisfy F = 0
    for (const auto& [y, z] : image_points(200, seed ^ 0xC0FFEE)) {
        if (!t.evaluate(y, z).is_zero())
            throw std::runtime_error("implicitization failed verification on fresh points");
    }
    return t;
}

// sampled smoothness of T: nonzero gradient at image points
inline bool verra_smooth_sampled(const VerraSolid& t, const NormalFormModel& m, std::size_t samples,
                                 std::uint64_t seed) {
    std::vector<MultiPoly> grad;
    for (unsigned k = 0; k < 6; ++k) grad.push_back(t.form.derivative(k));
    std::size_t checked = 0;
    std::uint64_t bump = 0;
    while (checked < samples) {
        for (const auto& x : sample_xo_points(m, samples, seed + 0xABCD * ++bump)) {
            ProjPoint y({x.coords()[1], x.coords()[3], x.coords()[5]});
            ProjPoint z = [&]() {
                try {
                    return map_pell(m, x);
                } catch (const std::invalid_argument&) {
                    return ProjPoint({m.field()->one(), m.field()->zero(), m.field()->zero()});
                }
            }();
            std::vector<FieldElement> c = y.coords();
            for (const auto& e : z.coords()) c.push_back(e);
            if (!t.form.evaluate(c).is_zero()) continue; // pell fallback missed T
            bool nonzero = false;
            for (const auto& g : grad) nonzero |= !g.evaluate(c).is_zero();
            if (!nonzero) return false;
            if (++checked == samples) break;
        }
    }
    return true;
}

// The two conic-bundle discriminants of T: disc1 = det of the z-Gram (a
// sextic on P^2_W), disc2 = det of the y-Gram (a sextic on P).
inline std::pair<PlaneCurve, PlaneCurve> verra_discriminants(const VerraSolid& t) {
    const FieldPtr& F = t.form.field();
    FieldElement half = F->from_rational(mpq_class(1, 2));
    auto gram_in = [&](bool z_side) {
        // N[k][l] polynomial in the other factor's variables
        PolyMatrix n = poly_matrix(F, 3, 3, 3);
        for (const auto& [e, c] : t.form.terms()) {
            unsigned base = z_side ? 3 : 0, other = z_side ? 0 : 3;
            // quadratic part in the chosen factor
            std::vector<unsigned> idx;
            for (unsigned k = 0; k < 3; ++k)
                for (unsigned d = 0; d < e[base + k]; ++d) idx.push_back(k);
            Exponents rest{e[other], e[other + 1], e[other + 2]};
            MultiPoly mono = MultiPoly::from_terms(F, 3, {{rest, c}});
            if (idx[0] == idx[1]) {
                n.at(idx[0], idx[0]) = n.at(idx[0], idx[0]) + mono;
            } else {
                MultiPoly h = mono.scaled(half);
                n.at(idx[0], idx[1]) = n.at(idx[0], idx[1]) + h;
                n.at(idx[1], idx[0]) = n.at(idx[1], idx[0]) + h;
            }
        }
        return n;
    };
    MultiPoly d1 = bareiss_det(gram_in(true));
    MultiPoly d2 = bareiss_det(gram_in(false));
    if (d1.is_zero() || d2.is_zero()) throw std::runtime_error("degenerate Verra solid: vanishing discriminant");
    return {PlaneCurve(d1), PlaneCurve(d2)};
}

// The normal-form conic bundle discriminant over P^2_W: determinant of
// Omega_O restricted to the homogeneous fiber frames, with the frame content
// stripped.  Cross-checked between two charts.
inline PlaneCurve normal_form_star(const NormalFormModel& m) {
    const FieldPtr& F = m.field();
    ScalarMatrix gram = Quadric::from_form(m.omega_o()).gram();
    auto b = [&](unsigned k) { return MultiPoly::variable(F, 3, k); };
    // homogeneous frames: rows are 7-vectors of polynomials in (b0, b1, b2)
    auto make = [&](std::initializer_list<std::pair<unsigned, MultiPoly>> es) {
        std::vector<MultiPoly> w(7, MultiPoly::zero(F, 3));
        for (const auto& [i, p] : es) w[i] = p;
        return w;
    };
    std::vector<std::pair<std::array<std::vector<MultiPoly>, 3>, MultiPoly>> frames;
    std::vector<MultiPoly> w0 = make({{1, b(0)}, {3, b(1)}, {5, b(2)}});
    frames.push_back({{w0,
                       make({{0, b(1) * b(1) - b(0) * b(2)}, {2, -(b(0) * b(1))}, {4, b(0) * b(0)}}),
                       make({{0, b(1) * b(2)}, {2, -(b(0) * b(2))}, {6, b(0) * b(0)}})},
                      b(0)});
    frames.push_back({{w0,
                       make({{0, b(2) * b(2)}, {4, -(b(0) * b(2))}, {6, b(0) * b(1)}}),
                       make({{2, b(2) * b(2)}, {4, -(b(1) * b(2))}, {6, b(1) * b(1) - b(0) * b(2)}})},
                      b(2)});
    std::vector<MultiPoly> results;
    for (const auto& [frame, content] : frames) {
        PolyMatrix g = poly_matrix(F, 3, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                MultiPoly acc = MultiPoly::zero(F, 3);
                for (std::size_t a = 0; a < 7; ++a)
                    for (std::size_t c = 0; c < 7; ++c) {
                        if (frame[i][a].is_zero() || frame[j][c].is_zero()) continue;
                        acc = acc + (frame[i][a] * frame[j][c]).scaled(gram.at(a, c));
                    }
                g.at(i, j) = acc;
            }
        MultiPoly det = bareiss_det(g);
        // the frame degenerates along content = 0; det = content^4 * star
        for (int k = 0; k < 4; ++k) {
            auto quot = det.divide_exact(content);
            if (!quot) throw std::runtime_error("frame content division failed");
            det = *quot;
        }
        results.push_back(det);
    }
    if (!MultiPoly::proportional(results[0], results[1]))
        throw std::runtime_error("normal-form chart discriminants disagree");
    PlaneCurve curve(results[0]);
    if (curve.degree != 6) throw std::runtime_error("normal-form star does not have degree 6");
    return curve;
}

// The linear identification of the net plane with the p_ell target P:
// z = (l0, -l1, l2).  The target point of p_ell at x is the net member
// containing the plane <ell, x>; writing that containment out for
// z0 Omega_1 + z1 Omega_2 + z2 Omega_O gives the two linear conditions
//   z0 x3 + z1 x1 + z2 lam2 = 0,   z0 x5 + z1 x3 + z2 lam4 = 0,
// whose solution is the cross product
//   (x1 lam4 - x3 lam2, -(x3 lam4 - x5 lam2), x3^2 - x1 x5).
// The p_ell formula used here carries the opposite sign in the middle
// coordinate, so net coordinates and P differ by the involution
// (l0, l1, l2) -> (l0, -l1, l2).  Substituting this identification into a
// curve on P pulls it back to net coordinates; disc2 pulls back to Gamma_6.
inline std::vector<MultiPoly> net_to_p_substitution(const FieldPtr& F) {
    return {MultiPoly::variable(F, 3, 0), -MultiPoly::variable(F, 3, 1), MultiPoly::variable(F, 3, 2)};
}

// the three components of p_ell as polynomials
inline std::vector<MultiPoly> pell_symbolic(const NormalFormModel& m) {
    const FieldPtr& F = m.field();
    auto v = [&](unsigned i) { return MultiPoly::variable(F, 7, i); };
    return {v(1) * m.lam4() - v(3) * m.lam2(), v(3) * m.lam4() - v(5) * m.lam2(), v(3) * v(3) - v(1) * v(5)};
}

struct DelPezzoRecord {
    bool ok = false;
    bool six_simple_roots = false;
    bool roots_match_pi = false;            // restricted disc2 matches Gamma_6 on Gamma_1
    std::vector<std::size_t> fiber_ranks;   // rank of the fiber conic at each root (expect 2)
    std::vector<unsigned> split_degree;     // field degree over GF(p) where the fiber splits into lines
    std::string witness;
};

// The del Pezzo surface over Gamma_1: restrict F to the line z = (s, t, 0);
// its conic-bundle discriminant is a binary sextic whose roots are the
// images of p_1..p_6.
inline DelPezzoRecord delpezzo_over_gamma1(const VerraSolid& t, const NormalFormModel& m, SplitMix64& rng) {
    DelPezzoRecord rec;
    const FieldPtr& F = m.field();
    auto [d1, d2] = verra_discriminants(t);
    (void)d1;
    // fiber Gram in y over z on the line
    MultiPoly s = MultiPoly::variable(F, 2, 0), tt = MultiPoly::variable(F, 2, 1);
    std::vector<MultiPoly> zline{s, tt, MultiPoly::zero(F, 2)};
    // restrict disc2 = det N2(z) to the line
    MultiPoly sextic = d2.poly.substitute(zline);
    if (sextic.is_zero() || sextic.total_degree() != 6) {
        rec.witness = "restricted discriminant is not a sextic";
        return rec;
    }
    {
        MultiPoly ds = sextic.derivative(0), dt = sextic.derivative(1);
        rec.six_simple_roots =
            !ds.is_zero() && !dt.is_zero() && binary_form_gcd(ds, dt, 0, 1).total_degree() == 0;
    }
    // match against Gamma_6 restricted to Gamma_1 under the identification
    // z = (l0, -l1, 0)
    {
        DiscriminantCurves net_disc = discriminant(m.net());
        std::vector<MultiPoly> sub{s, -tt, MultiPoly::zero(F, 2)};
        MultiPoly gamma_restricted = net_disc.sextic.poly.substitute(sub);
        rec.roots_match_pi = MultiPoly::proportional(sextic, gamma_restricted);
    }
    // splitting field of the six roots
    unsigned K = 1;
    {
        unsigned d = sextic.total_degree();
        std::vector<FieldElement> coeffs(d + 1, F->zero());
        for (const auto& [e, c] : sextic.terms()) coeffs[e[0]] = c;
        for (const auto& [fac, mult] : uni_factor(UniPoly(F, coeffs), rng)) {
            (void)mult;
            K = std::lcm(K, static_cast<unsigned>(fac.degree()));
        }
    }
    FieldPtr E = K == 1 ? F : Field::extension_of_degree(F->p(), K);
    MultiPoly sextic_e = sextic.embedded(E);
    // Gram N2 of F in y, entries quadratic in z
    PolyMatrix n2 = poly_matrix(F, 3, 3, 3);
    {
        FieldElement half = F->from_rational(mpq_class(1, 2));
        for (const auto& [e, c] : t.form.terms()) {
            std::vector<unsigned> idx;
            for (unsigned k = 0; k < 3; ++k)
                for (unsigned d = 0; d < e[k]; ++d) idx.push_back(k);
            Exponents rest{e[3], e[4], e[5]};
            MultiPoly mono = MultiPoly::from_terms(F, 3, {{rest, c}});
            if (idx[0] == idx[1]) n2.at(idx[0], idx[0]) = n2.at(idx[0], idx[0]) + mono;
            else {
                MultiPoly h = mono.scaled(half);
                n2.at(idx[0], idx[1]) = n2.at(idx[0], idx[1]) + h;
                n2.at(idx[1], idx[0]) = n2.at(idx[1], idx[0]) + h;
            }
        }
    }
    for (const auto& [rs, rt] : binary_form_roots(sextic_e, 0, 1, rng)) {
        std::vector<FieldElement> z{rs, rt, E->zero()};
        ScalarMatrix conic = scalar_matrix(E, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) conic.at(i, j) = n2.at(i, j).embedded(E).evaluate(z);
        std::size_t r = rank_of(conic);
        rec.fiber_ranks.push_back(r);
        if (r != 2) {
            rec.witness = "reducible fiber has unexpected rank";
            return rec;
        }
        // split the rank-2 conic: 2x2 Gram on a complement of the kernel
        auto ker = kernel_solve(conic);
        ScalarMatrix basis = scalar_matrix(E, 3, 3);
        for (unsigned k = 0; k < 3; ++k) basis.at(0, k) = ker[0][k];
        // complete to a basis with coordinate vectors
        std::size_t row = 1;
        for (unsigned k = 0; k < 3 && row < 3; ++k) {
            basis.at(row, k) = E->one();
            ScalarMatrix probe = basis;
            if (rank_of(probe) == row + 1) ++row;
            else basis.at(row, k) = E->zero();
        }
        FieldElement a = E->zero(), bb = E->zero(), cc = E->zero();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                a = a + basis.at(1, i) * conic.at(i, j) * basis.at(1, j);
                bb = bb + basis.at(2, i) * conic.at(i, j) * basis.at(2, j);
                cc = cc + basis.at(1, i) * conic.at(i, j) * basis.at(2, j);
            }
        FieldElement delta = cc * cc - a * bb;
        unsigned base_deg = E->kind() == FieldKind::Extension ? E->degree() : 1;
        if (field_sqrt(delta, rng)) rec.split_degree.push_back(base_deg);
        else rec.split_degree.push_back(2 * base_deg);
    }
    rec.ok = rec.six_simple_roots && rec.roots_match_pi && rec.fiber_ranks.size() == 6;
    return rec;
}

// A psi_ell image of a line of Q: the parametrized curve
// (sigma, tau) -> (sigma y1 + tau y2, z(sigma, tau)) on T, where each
// component of z is a binary form of degree z_degree() (the minimal exact
// fit: 0 for lines that collapse to a rho_2-fiber point, 1 for sections,
// 2 for bisections of the del Pezzo fibration).
struct ImageLine {
    ProjPoint y1, y2;
    // zc[d] = the 3-vector coefficient of sigma^(D-d) tau^d, D = zc.size()-1
    std::vector<std::vector<FieldElement>> zc;
    ProjPoint source_point, source_dir; // the line in P^3_W it came from (7 coords)
    unsigned z_degree() const { return static_cast<unsigned>(zc.size()) - 1; }
    std::vector<FieldElement> z_at(const FieldElement& s, const FieldElement& t) const {
        const FieldPtr& E = s.field();
        std::vector<FieldElement> out(3, E->zero());
        FieldElement sp = E->one();
        std::vector<FieldElement> spow(zc.size(), E->one()), tpow(zc.size(), E->one());
        for (std::size_t d = 1; d < zc.size(); ++d) spow[d] = spow[d - 1] * s, tpow[d] = tpow[d - 1] * t;
        (void)sp;
        const std::size_t D = zc.size() - 1;
        for (std::size_t d = 0; d < zc.size(); ++d) {
            FieldElement mono = spow[D - d] * tpow[d];
            for (unsigned k = 0; k < 3; ++k) out[k] = out[k] + zc[d][k] * mono;
        }
        return out;
    }
};

struct LineIncidenceRecord {
    bool ok = false;
    std::array<std::array<int, 6>, 6> incidence{}; // [i][j]: image of l_i^- meets image of l_j^+
    std::vector<ImageLine> plus, minus;            // plus: disjoint from ell; minus: meets ell
    // measured p_ell degree of each image curve (the p_W degree is always 1)
    std::array<unsigned, 6> plus_zdeg{}, minus_zdeg{};
    bool images_bidegree_11 = false; // whether every image is bidegree (1,1)
    FieldPtr working_field;
    std::string witness;
};

namespace detail {

// resolved value of psi_ell at a point x0 of Q (where both maps are
// undefined): the limit along the p_W-fiber conic through x0.
inline ProjPoint resolved_pell_at(const NormalFormModel& m, const FieldPtr& E, const ProjPoint& x0,
                                  const ProjPoint& b) {
    ScalarMatrix frame = m.fiber_frame(b);
    // plane coordinates of x0: kernel of the 7x4 matrix [w0 w1 w2 x0]
    ScalarMatrix cols = scalar_matrix(E, 7, 4);
    for (std::size_t j = 0; j < 7; ++j) {
        for (std::size_t k = 0; k < 3; ++k) cols.at(j, k) = frame.at(k, j);
        cols.at(j, 3) = x0.coords()[j];
    }
    auto ker = kernel_solve(cols);
    if (ker.size() != 1 || ker[0][3].is_zero()) throw std::logic_error("point not on its fiber plane");
    std::vector<FieldElement> p(3);
    FieldElement inv = -(ker[0][3].inv());
    for (unsigned k = 0; k < 3; ++k) p[k] = ker[0][k] * inv;
    // conic Gram in plane coordinates
    ScalarMatrix gram7 = scalar_matrix(E, 7, 7);
    {
        ScalarMatrix g0 = Quadric::from_form(m.omega_o()).gram();
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j) gram7.at(i, j) = MultiPoly::convert_coeff(g0.at(i, j), E);
    }
    ScalarMatrix g = frame * gram7 * frame.transpose();
    // direction basis through p: two coordinate vectors completing p
    std::array<std::vector<FieldElement>, 2> u;
    {
        ScalarMatrix probe = scalar_matrix(E, 3, 3);
        for (unsigned k = 0; k < 3; ++k) probe.at(0, k) = p[k];
        std::size_t row = 1;
        std::array<unsigned, 2> picked{0, 0};
        for (unsigned k = 0; k < 3 && row < 3; ++k) {
            probe.at(row, k) = E->one();
            ScalarMatrix copy = probe;
            if (rank_of(copy) == row + 1) picked[row - 1] = k, ++row;
            else probe.at(row, k) = E->zero();
        }
        for (unsigned s = 0; s < 2; ++s) {
            u[s].assign(3, E->zero());
            u[s][picked[s]] = E->one();
        }
    }
    auto bil = [&](const std::vector<FieldElement>& a, const std::vector<FieldElement>& c) {
        FieldElement acc = E->zero();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) acc = acc + g.at(i, j) * a[i] * c[j];
        return acc;
    };
    // the parameter of x0 on the conic parametrization below
    FieldElement bp1 = bil(p, u[0]), bp2 = bil(p, u[1]);
    if (bp1.is_zero() && bp2.is_zero()) throw std::runtime_error("fiber conic singular at the point");
    std::vector<FieldElement> theta_x{bp2, -bp1};
    // conic through p: c(theta) = q(r) p - 2 B(p,r) r, r = th0 u1 + th1 u2
    MultiPoly th0 = MultiPoly::variable(E, 2, 0), th1 = MultiPoly::variable(E, 2, 1);
    MultiPoly qr = (th0 * th0).scaled(bil(u[0], u[0])) + (th0 * th1).scaled(bil(u[0], u[1]) + bil(u[0], u[1])) +
                   (th1 * th1).scaled(bil(u[1], u[1]));
    MultiPoly bpr = th0.scaled(bp1) + th1.scaled(bp2);
    std::vector<MultiPoly> plane_coords(3, MultiPoly::zero(E, 2));
    for (unsigned k = 0; k < 3; ++k) {
        MultiPoly rk = th0.scaled(u[0][k]) + th1.scaled(u[1][k]);
        plane_coords[k] = qr.scaled(p[k]) - (bpr * rk) - (bpr * rk);
    }
    // lift to P^6 and compose with p_ell
    std::vector<MultiPoly> xtheta(7, MultiPoly::zero(E, 2));
    for (std::size_t j = 0; j < 7; ++j)
        for (unsigned k = 0; k < 3; ++k)
            if (!frame.at(k, j).is_zero()) xtheta[j] = xtheta[j] + plane_coords[k].scaled(frame.at(k, j));
    std::vector<MultiPoly> z(3, MultiPoly::zero(E, 2));
    {
        std::vector<MultiPoly> pell = pell_symbolic(m);
        for (unsigned k = 0; k < 3; ++k) z[k] = pell[k].embedded(E).substitute(xtheta);
    }
    // strip the common vanishing locus (the conic crosses the base locus of
    // p_ell where it meets Q) and evaluate at theta_x
    MultiPoly common = MultiPoly::zero(E, 2);
    for (const auto& zk : z) {
        if (zk.is_zero()) continue;
        common = common.is_zero() ? zk : binary_form_gcd(common, zk, 0, 1);
    }
    if (common.is_zero()) throw std::runtime_error("p_ell image of the fiber conic is identically zero");
    std::vector<FieldElement> out;
    bool nonzero = false;
    for (const auto& zk : z) {
        if (zk.is_zero()) {
            out.push_back(E->zero());
            continue;
        }
        auto q = zk.divide_exact(common);
        if (!q) throw std::logic_error("gcd division failed");
        out.push_back(q->evaluate(theta_x));
        nonzero |= !out.back().is_zero();
    }
    if (!nonzero) throw std::runtime_error("resolved p_ell value vanished");
    return ProjPoint(std::move(out));
}

// psi_ell image of a line inside Q, as a bidegree-(1,1) parametrized curve
inline ImageLine line_image(const NormalFormModel& m, const FieldPtr& E, const ProjPoint& src,
                            const ProjPoint& dir) {
    // y(sigma, tau): clear the common factor of the Hankel minors on the line
    MultiPoly sg = MultiPoly::variable(E, 2, 0), ta = MultiPoly::variable(E, 2, 1);
    std::vector<MultiPoly> x(7, MultiPoly::zero(E, 2));
    for (std::size_t j = 0; j < 7; ++j)
        x[j] = sg.scaled(src.coords()[j]) + ta.scaled(dir.coords()[j]);
    std::vector<MultiPoly> yraw{x[2] * x[6] - x[4] * x[4], x[2] * x[4] - x[0] * x[6], x[0] * x[4] - x[2] * x[2]};
    MultiPoly common = MultiPoly::zero(E, 2);
    for (const auto& c : yraw) {
        if (c.is_zero()) continue;
        common = common.is_zero() ? c : binary_form_gcd(common, c, 0, 1);
    }
    if (common.is_zero()) throw std::runtime_error("line maps into the indeterminacy cubic");
    std::vector<MultiPoly> y;
    for (const auto& c : yraw) {
        if (c.is_zero()) {
            y.push_back(c);
            continue;
        }
        auto q = c.divide_exact(common);
        if (!q) throw std::logic_error("gcd division failed");
        y.push_back(*q);
    }
    unsigned ydeg = 0;
    for (const auto& c : y)
        if (!c.is_zero()) ydeg = std::max(ydeg, c.total_degree());
    if (ydeg != 1) throw std::runtime_error("image not bidegree (1,1): p_W degree " + std::to_string(ydeg));
    auto y_at = [&](long s0, long t0) {
        std::vector<FieldElement> v{E->from_int(s0), E->from_int(t0)};
        std::vector<FieldElement> out;
        for (const auto& c : y) out.push_back(c.evaluate(v));
        return ProjPoint(std::move(out));
    };
    ProjPoint y1 = y_at(1, 0), y2 = y_at(0, 1);
    if (y1 == y2) throw std::runtime_error("image not bidegree (1,1): p_W image is a point");
    // z(sigma, tau): the components are binary forms of a common degree D.
    // D is measured, not assumed: resolved values of psi_ell are sampled at
    // generic parameters (avoiding tau = 0, the node end) and the minimal D
    // admitting an exact projective fit is taken.  The fit for each D is the
    // nullspace of the cross-product system
    //   z_k(s_a, t_a) w_a[l] - z_l(s_a, t_a) w_a[k] = 0
    // over all samples a and coordinate pairs (k, l); a unique solution
    // (kernel dimension exactly 1) verified on held-out samples is accepted.
    auto point_at = [&](long s0, long t0) {
        std::vector<FieldElement> v{E->from_int(s0), E->from_int(t0)};
        std::vector<FieldElement> c;
        for (std::size_t j = 0; j < 7; ++j) c.push_back(x[j].evaluate(v));
        return ProjPoint(std::move(c));
    };
    auto z_at = [&](long s0, long t0) {
        std::vector<FieldElement> v{E->from_int(s0), E->from_int(t0)};
        std::vector<FieldElement> bc;
        for (const auto& c : y) bc.push_back(c.evaluate(v));
        return resolved_pell_at(m, E, point_at(s0, t0), ProjPoint(std::move(bc)));
    };
    std::vector<std::pair<std::array<long, 2>, ProjPoint>> samples;
    for (long t0 = 1; t0 <= 12 && samples.size() < 9; ++t0) {
        try {
            samples.push_back({{1, t0}, z_at(1, t0)});
        } catch (const std::runtime_error&) {
            // the resolved limit can degenerate at finitely many parameters
        }
    }
    if (samples.size() < 9) throw std::runtime_error("too few resolvable parameters on the line");
    std::vector<std::vector<FieldElement>> zc;
    for (unsigned D = 0; D <= 3 && zc.empty(); ++D) {
        const std::size_t fit_count = D + 3; // enough samples for an overdetermined system
        const std::size_t ncols = 3 * (D + 1);
        ScalarMatrix rows = scalar_matrix(E, 3 * fit_count, ncols);
        for (std::size_t a = 0; a < fit_count; ++a) {
            FieldElement s0 = E->from_int(samples[a].first[0]), t0 = E->from_int(samples[a].first[1]);
            std::vector<FieldElement> mono(D + 1, E->one());
            for (unsigned d = 0; d <= D; ++d) {
                mono[d] = E->one();
                for (unsigned r = 0; r < D - d; ++r) mono[d] = mono[d] * s0;
                for (unsigned r = 0; r < d; ++r) mono[d] = mono[d] * t0;
            }
            const auto& w = samples[a].second.coords();
            // pairs (0,1), (0,2), (1,2): one row each
            static constexpr std::array<std::array<unsigned, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
            for (std::size_t q = 0; q < 3; ++q) {
                auto [k, l] = std::pair<unsigned, unsigned>{pairs[q][0], pairs[q][1]};
                for (unsigned d = 0; d <= D; ++d) {
                    rows.at(3 * a + q, 3 * d + k) = rows.at(3 * a + q, 3 * d + k) + mono[d] * w[l];
                    rows.at(3 * a + q, 3 * d + l) = rows.at(3 * a + q, 3 * d + l) - mono[d] * w[k];
                }
            }
        }
        auto ker = kernel_solve(rows);
        if (ker.empty()) continue; // degree too small
        if (ker.size() > 1) throw std::runtime_error("z fit is not unique: degenerate sample set");
        std::vector<std::vector<FieldElement>> cand(D + 1, std::vector<FieldElement>(3, E->zero()));
        for (unsigned d = 0; d <= D; ++d)
            for (unsigned k = 0; k < 3; ++k) cand[d][k] = ker[0][3 * d + k];
        // top coefficient must not vanish identically, else D is not minimal
        bool top_nonzero = false;
        for (unsigned k = 0; k < 3; ++k) top_nonzero |= !cand[D][k].is_zero();
        if (D > 0 && !top_nonzero) throw std::runtime_error("z fit degree is not minimal");
        ImageLine probe{ProjPoint(y1.coords()), ProjPoint(y2.coords()), cand, src, dir};
        // held-out verification on the remaining samples
        for (std::size_t a = fit_count; a < samples.size(); ++a) {
            auto val = probe.z_at(E->from_int(samples[a].first[0]), E->from_int(samples[a].first[1]));
            bool nz = false;
            for (const auto& c : val) nz |= !c.is_zero();
            if (!nz || !(ProjPoint(val) == samples[a].second))
                throw std::runtime_error("z parametrization failed verification");
        }
        zc = std::move(cand);
    }
    if (zc.empty()) throw std::runtime_error("p_ell restricted to the line exceeds degree 3");
    return ImageLine{ProjPoint(y1.coords()), ProjPoint(y2.coords()), std::move(zc), src, dir};
}

inline std::vector<FieldElement> cross3(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// do the two parametrized image curves meet on P^2 x P^2?  Both project
// one-to-one onto lines in P^2_W, so any common point lies over the unique
// intersection of those lines; each curve's parameter there is solved
// linearly and the z values are compared.
inline bool image_lines_meet(const ImageLine& a, const ImageLine& b) {
    std::vector<FieldElement> na = cross3(a.y1.coords(), a.y2.coords());
    std::vector<FieldElement> nb = cross3(b.y1.coords(), b.y2.coords());
    std::vector<FieldElement> ystar = cross3(na, nb);
    bool ystar_zero = ystar[0].is_zero() && ystar[1].is_zero() && ystar[2].is_zero();
    if (ystar_zero) throw std::runtime_error("coincident p_W image lines");
    // parameters hitting ystar on each curve: sigma y1 + tau y2 ~ ystar
    auto param_for = [&](const ImageLine& c) {
        // solve cross(sigma y1 + tau y2, ystar) = 0
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j) {
                if (i == j) continue;
                FieldElement cs = c.y1.coords()[i] * ystar[j] - c.y1.coords()[j] * ystar[i];
                FieldElement ct = c.y2.coords()[i] * ystar[j] - c.y2.coords()[j] * ystar[i];
                if (cs.is_zero() && ct.is_zero()) continue;
                return std::pair<FieldElement, FieldElement>{ct, -cs};
            }
        throw std::runtime_error("could not solve for the intersection parameter");
    };
    auto [sa, ta] = param_for(a);
    auto [sb, tb] = param_for(b);
    std::vector<FieldElement> za = a.z_at(sa, ta), zb = b.z_at(sb, tb);
    bool za_zero = za[0].is_zero() && za[1].is_zero() && za[2].is_zero();
    bool zb_zero = zb[0].is_zero() && zb[1].is_zero() && zb[2].is_zero();
    if (za_zero || zb_zero) throw std::runtime_error("degenerate z value at the candidate intersection");
    return ProjPoint(za) == ProjPoint(zb);
}

} // namespace detail

// The incidence structure of the psi_ell images of the twelve ruling lines
// of Q through the six nodes: minus_i meets plus_j exactly when i != j.
inline LineIncidenceRecord line_incidence_check(const VerraSolid& t, const NormalFormModel& m, SplitMix64& rng) {
    LineIncidenceRecord rec;
    const FieldPtr& F = m.field();
    if (!F->finite() || F->kind() != FieldKind::Prime) {
        rec.witness = "finite prime field required";
        return rec;
    }
    MultiPoly sextic = m.node_sextic();
    if (sextic.is_zero() || sextic.total_degree() != 6) {
        rec.witness = "node sextic degenerates";
        return rec;
    }
    {
        MultiPoly ds = sextic.derivative(0), dt = sextic.derivative(1);
        if (ds.is_zero() || dt.is_zero() || binary_form_gcd(ds, dt, 0, 1).total_degree() != 0) {
            rec.witness = "nodes are not distinct";
            return rec;
        }
    }
    unsigned K = 1;
    {
        std::vector<FieldElement> coeffs(7, F->zero());
        for (const auto& [e, c] : sextic.terms()) coeffs[e[0]] = c;
        for (const auto& [fac, mult] : uni_factor(UniPoly(F, coeffs), rng)) {
            (void)mult;
            K = std::lcm(K, static_cast<unsigned>(fac.degree()));
        }
    }
    // Gram of the quadric surface Q = P^3_W cap Omega_O in the coordinates
    // (x0, x2, x4, x6)
    ScalarMatrix q4 = scalar_matrix(F, 4, 4);
    {
        ScalarMatrix g7 = Quadric::from_form(m.omega_o()).gram();
        const std::array<unsigned, 4> idx{0, 2, 4, 6};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) q4.at(i, j) = g7.at(idx[i], idx[j]);
    }
    for (unsigned attempt = 0; attempt < 3; ++attempt, K += K) {
        FieldPtr E = K == 1 ? F : Field::extension_of_degree(F->p(), K);
        ScalarMatrix q4e = scalar_matrix(E, 4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) q4e.at(i, j) = MultiPoly::convert_coeff(q4.at(i, j), E);
        auto roots = binary_form_roots(sextic.embedded(E), 0, 1, rng);
        if (roots.size() != 6) {
            rec.witness = "nodes did not split over the working field";
            return rec;
        }
        // the two tangent lines of Q at each node, in (x0,x2,x4,x6) coords
        bool need_bigger = false;
        std::vector<std::array<std::pair<std::vector<FieldElement>, std::vector<FieldElement>>, 2>> lines;
        std::vector<ProjPoint> nodes;
        for (const auto& [l0, l1] : roots) {
            std::vector<FieldElement> s4{l1 * l1 * l1, -(l0 * l1 * l1), l0 * l0 * l1, -(l0 * l0 * l0)};
            auto bil4 = [&](const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
                FieldElement acc = E->zero();
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = 0; j < 4; ++j) acc = acc + q4e.at(i, j) * a[i] * b[j];
                return acc;
            };
            // tangent hyperplane basis: two directions completing s4, inside
            // {x : B(s4, x) = 0}
            ScalarMatrix polar = scalar_matrix(E, 1, 4);
            for (unsigned k = 0; k < 4; ++k)
                for (unsigned i = 0; i < 4; ++i) polar.at(0, k) = polar.at(0, k) + q4e.at(i, k) * s4[i];
            auto tang = kernel_solve(polar); // 3 vectors, spanning the tangent P^2 (contains s4)
            if (tang.size() != 3) {
                rec.witness = "node is not a smooth point of Q";
                return rec;
            }
            // express the conic Q cap tangent in a basis (s4, t1, t2)
            std::vector<std::vector<FieldElement>> tbasis{s4};
            for (const auto& v : tang) {
                ScalarMatrix probe = scalar_matrix(E, tbasis.size() + 1, 4);
                for (std::size_t r = 0; r < tbasis.size(); ++r)
                    for (unsigned k = 0; k < 4; ++k) probe.at(r, k) = tbasis[r][k];
                for (unsigned k = 0; k < 4; ++k) probe.at(tbasis.size(), k) = v[k];
                if (rank_of(probe) == tbasis.size() + 1) tbasis.push_back(v);
                if (tbasis.size() == 3) break;
            }
            if (tbasis.size() != 3) {
                rec.witness = "tangent basis construction failed";
                return rec;
            }
            // restricted conic: a u^2 + 2c uv + b v^2 (the s4-row vanishes)
            FieldElement a = bil4(tbasis[1], tbasis[1]), b = bil4(tbasis[2], tbasis[2]),
                         c = bil4(tbasis[1], tbasis[2]);
            // roots of a u^2 + 2 c u v + b v^2 give the two line directions
            MultiPoly uq = (MultiPoly::variable(E, 2, 0) * MultiPoly::variable(E, 2, 0)).scaled(a) +
                           (MultiPoly::variable(E, 2, 0) * MultiPoly::variable(E, 2, 1)).scaled(c + c) +
                           (MultiPoly::variable(E, 2, 1) * MultiPoly::variable(E, 2, 1)).scaled(b);
            if (uq.is_zero()) {
                rec.witness = "tangent conic vanishes: Q is singular";
                return rec;
            }
            auto droots = binary_form_roots(uq, 0, 1, rng);
            if (droots.size() != 2) {
                need_bigger = true;
                break;
            }
            if (droots[0].first * droots[1].second == droots[1].first * droots[0].second) {
                rec.witness = "tangent lines coincide: node on the branch locus";
                return rec;
            }
            std::array<std::pair<std::vector<FieldElement>, std::vector<FieldElement>>, 2> pair;
            for (unsigned s = 0; s < 2; ++s) {
                std::vector<FieldElement> dir(4, E->zero());
                for (unsigned k = 0; k < 4; ++k)
                    dir[k] = droots[s].first * tbasis[1][k] + droots[s].second * tbasis[2][k];
                pair[s] = {s4, dir};
            }
            lines.push_back(pair);
            std::vector<FieldElement> s7(7, E->zero());
            s7[0] = s4[0];
            s7[2] = s4[1];
            s7[4] = s4[2];
            s7[6] = s4[3];
            nodes.push_back(ProjPoint(std::move(s7)));
        }
        if (need_bigger) continue;

        // ruling labels, relative to ell = <e2, e4> itself: the plus line at
        // each node is the one disjoint from ell (same ruling as ell), the
        // minus line is the one meeting ell.  In the (x0,x2,x4,x6) chart the
        // points e2, e4 are the coordinate vectors at indices 1 and 2.
        auto disjoint_from_ell = [&](const std::pair<std::vector<FieldElement>, std::vector<FieldElement>>& la) {
            ScalarMatrix mm = scalar_matrix(E, 4, 4);
            for (unsigned k = 0; k < 4; ++k) {
                mm.at(0, k) = la.first[k];
                mm.at(1, k) = la.second[k];
            }
            mm.at(2, 1) = E->one();
            mm.at(3, 2) = E->one();
            return rank_of(mm) == 4;
        };
        std::vector<unsigned> plus_index(6, 0);
        for (std::size_t i = 0; i < 6; ++i) {
            bool d0 = disjoint_from_ell(lines[i][0]);
            bool d1 = disjoint_from_ell(lines[i][1]);
            if (d0 == d1) {
                rec.witness = "ruling classification inconsistent";
                return rec;
            }
            plus_index[i] = d0 ? 0 : 1;
        }
        // psi_ell images
        auto lift = [&](const std::vector<FieldElement>& v4) {
            std::vector<FieldElement> v7(7, E->zero());
            v7[0] = v4[0];
            v7[2] = v4[1];
            v7[4] = v4[2];
            v7[6] = v4[3];
            return ProjPoint(std::move(v7));
        };
        try {
            for (std::size_t i = 0; i < 6; ++i) {
                const auto& lp = lines[i][plus_index[i]];
                const auto& lm = lines[i][1 - plus_index[i]];
                rec.plus.push_back(detail::line_image(m, E, lift(lp.first), lift(lp.second)));
                rec.minus.push_back(detail::line_image(m, E, lift(lm.first), lift(lm.second)));
            }
            rec.working_field = E;
            rec.images_bidegree_11 = true;
            for (std::size_t i = 0; i < 6; ++i) {
                rec.plus_zdeg[i] = rec.plus[i].z_degree();
                rec.minus_zdeg[i] = rec.minus[i].z_degree();
                rec.images_bidegree_11 &= rec.plus_zdeg[i] == 1 && rec.minus_zdeg[i] == 1;
            }
            bool all_ok = true;
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = 0; j < 6; ++j) {
                    bool meet = detail::image_lines_meet(rec.minus[i], rec.plus[j]);
                    rec.incidence[i][j] = meet ? 1 : 0;
                    bool expected = i != j;
                    if (meet != expected) {
                        all_ok = false;
                        if (rec.witness.empty())
                            rec.witness = "incidence mismatch at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                    }
                }
            // the image curves live on T (symbolic check in the parameters)
            for (const auto& il : {rec.plus, rec.minus})
                for (const auto& curve : il) {
                    MultiPoly sg = MultiPoly::variable(E, 2, 0), ta = MultiPoly::variable(E, 2, 1);
                    std::vector<MultiPoly> subs;
                    for (unsigned k = 0; k < 3; ++k)
                        subs.push_back(sg.scaled(curve.y1.coords()[k]) + ta.scaled(curve.y2.coords()[k]));
                    const unsigned D = curve.z_degree();
                    for (unsigned k = 0; k < 3; ++k) {
                        MultiPoly zk = MultiPoly::zero(E, 2);
                        for (unsigned d = 0; d <= D; ++d) {
                            MultiPoly mono = MultiPoly::constant(E, 2, curve.zc[d][k]);
                            for (unsigned r = 0; r < D - d; ++r) mono = mono * sg;
                            for (unsigned r = 0; r < d; ++r) mono = mono * ta;
                            zk = zk + mono;
                        }
                        subs.push_back(zk);
                    }
                    if (!t.form.embedded(E).substitute(subs).is_zero()) {
                        rec.witness = "image curve leaves the Verra solid";
                        return rec;
                    }
                }
            rec.ok = all_ok;
            return rec;
        } catch (const std::runtime_error& e) {
            rec.witness = e.what();
            return rec;
        }
    }
    if (rec.witness.empty()) rec.witness = "line splitting field growth exhausted";
    return rec;
}

} // namespace fano10
