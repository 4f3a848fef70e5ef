#include <doctest.h>

#include "fano10/verra.hpp"

using namespace fano10;

namespace {

const FieldPtr& F() {
    static FieldPtr f = Field::prime(10007);
    return f;
}

const NormalFormModel& model() {
    static NormalFormModel m = NormalFormModel::build(F(), 42);
    return m;
}

const VerraSolid& solid() {
    static VerraSolid t = implicitize(model(), 42);
    return t;
}

// substitute a parametrized linear subspace (rows span) into a form
MultiPoly restrict_to_span(const MultiPoly& form, const std::vector<std::vector<FieldElement>>& span) {
    const FieldPtr& f = form.field();
    unsigned k = static_cast<unsigned>(span.size());
    std::vector<MultiPoly> subs(form.arity(), MultiPoly::zero(f, k));
    for (unsigned r = 0; r < k; ++r)
        for (std::size_t j = 0; j < form.arity(); ++j)
            if (!span[r][j].is_zero())
                subs[j] = subs[j] + MultiPoly::variable(f, k, r).scaled(span[r][j]);
    return form.substitute(subs);
}

std::vector<FieldElement> unit7(unsigned i) {
    std::vector<FieldElement> v(7, F()->zero());
    v[i] = F()->one();
    return v;
}

} // namespace

TEST_CASE("normal form: pencil quadrics have rank 6 with the stated vertices") {
    const auto& m = model();
    for (const auto& [form, vertex] : {std::pair{m.omega1(), 6u}, std::pair{m.omega2(), 0u}}) {
        ScalarMatrix g = Quadric::from_form(form).gram();
        CHECK(rank_of(g) == 6);
        auto ker = kernel_solve(g);
        REQUIRE(ker.size() == 1);
        CHECK(ProjPoint(ker[0]) == ProjPoint(unit7(vertex)));
    }
}

TEST_CASE("normal form: P^3_W lies on both pencil quadrics, ell on all three") {
    const auto& m = model();
    std::vector<std::vector<FieldElement>> p3w{unit7(0), unit7(2), unit7(4), unit7(6)};
    CHECK(restrict_to_span(m.omega1(), p3w).is_zero());
    CHECK(restrict_to_span(m.omega2(), p3w).is_zero());
    std::vector<std::vector<FieldElement>> ell{unit7(2), unit7(4)};
    CHECK(restrict_to_span(m.omega1(), ell).is_zero());
    CHECK(restrict_to_span(m.omega2(), ell).is_zero());
    CHECK(restrict_to_span(m.omega_o(), ell).is_zero());
}

TEST_CASE("normal form: Omega_O has the stated shape") {
    const auto& m = model();
    // Omega_O = x2 lam2 + x4 lam4 + q with lam2, lam4, q free of x2, x4:
    // every monomial has combined (x2, x4)-degree at most 1
    for (const auto& [e, c] : m.omega_o().terms()) {
        (void)c;
        CHECK(e[2] + e[4] <= 1);
    }
    auto x = [&](unsigned i) { return MultiPoly::variable(F(), 7, i); };
    CHECK(m.omega_o() == x(2) * m.lam2() + x(4) * m.lam4() + m.qform());
    for (const auto& part : {m.lam2(), m.lam4(), m.qform()})
        for (const auto& [e, c] : part.terms()) {
            (void)c;
            CHECK(e[2] + e[4] == 0);
        }
}

TEST_CASE("pencil vertices: singular point of the member, rank 6, node sextic") {
    const auto& m = model();
    SplitMix64 rng(0xA1);
    for (int trial = 0; trial < 10; ++trial) {
        FieldElement l0 = F()->random(rng), l1 = F()->random(rng);
        if (l0.is_zero() || l1.is_zero()) continue;
        MultiPoly member = m.omega1().scaled(l0) + m.omega2().scaled(l1);
        ProjPoint v = m.pencil_vertex(l0, l1);
        for (unsigned k = 0; k < 7; ++k)
            CHECK(member.derivative(k).evaluate(v.coords()).is_zero());
        CHECK(rank_of(Quadric::from_form(member).gram()) == 6);
        // node sextic agrees with Omega_O on the vertex cubic
        std::vector<FieldElement> lam{l0, l1};
        CHECK(m.node_sextic().evaluate(lam) == m.omega_o().evaluate(v.coords()));
    }
    CHECK(m.node_sextic().total_degree() == 6);
}

TEST_CASE("map_pw: formula and base locus") {
    CHECK(map_pw(ProjPoint({F()->zero(), F()->one(), F()->zero(), F()->from_int(2), F()->zero(),
                            F()->from_int(3), F()->zero()})) ==
          ProjPoint({F()->one(), F()->from_int(2), F()->from_int(3)}));
    CHECK_THROWS_AS(map_pw(ProjPoint(unit7(0))), std::invalid_argument);
}

TEST_CASE("map_pell: base locus contains ell; third coordinate tracks x3^2 - x1 x5") {
    const auto& m = model();
    // points of ell have x' = 0 and x1 = x3 = x5 = 0: all coordinates vanish
    std::vector<FieldElement> p(7, F()->zero());
    p[2] = F()->one();
    p[4] = F()->from_int(5);
    CHECK_THROWS_AS(map_pell(m, ProjPoint(p)), std::invalid_argument);
    for (const auto& x : sample_xo_points(m, 25, 0xBEEF)) {
        ProjPoint z = map_pell(m, x);
        const auto& c = x.coords();
        FieldElement h = c[3] * c[3] - c[1] * c[5];
        CHECK(z.coords()[2].is_zero() == h.is_zero());
        // the image is the net member through <ell, x>, up to the sign
        // involution in the middle coordinate: check the two containment
        // conditions z0 x3 + z1 x1 + z2 lam2 = 0 and z0 x5 + z1 x3 + z2 lam4
        // after flipping z1
        FieldElement l2 = m.lam2().evaluate(c), l4 = m.lam4().evaluate(c);
        FieldElement z0 = z.coords()[0], z1 = -z.coords()[1], z2 = z.coords()[2];
        CHECK((z0 * c[3] + z1 * c[1] + z2 * l2).is_zero());
        CHECK((z0 * c[5] + z1 * c[3] + z2 * l4).is_zero());
    }
}

TEST_CASE("pell_symbolic agrees with map_pell on samples") {
    const auto& m = model();
    auto sym = pell_symbolic(m);
    for (const auto& x : sample_xo_points(m, 10, 0xCAFE)) {
        std::vector<FieldElement> vals;
        for (const auto& comp : sym) vals.push_back(comp.evaluate(x.coords()));
        CHECK(ProjPoint(vals) == map_pell(m, x));
    }
}

TEST_CASE("sample_xo_points: on X_O, and each fiber conic meets Q in two points") {
    const auto& m = model();
    auto pts = sample_xo_points(m, 30, 0xD00D);
    for (const auto& x : pts) {
        CHECK(m.omega1().evaluate(x.coords()).is_zero());
        CHECK(m.omega2().evaluate(x.coords()).is_zero());
        CHECK(m.omega_o().evaluate(x.coords()).is_zero());
    }
    // fiber conics over random b: the fiber plane meets P^3_W in the line
    // spanned by the second and third frame rows; the restricted binary
    // quadric has two distinct roots over the algebraic closure
    SplitMix64 rng(0xD11D);
    ScalarMatrix gram = Quadric::from_form(m.omega_o()).gram();
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 10; ++trial) {
        std::vector<FieldElement> b{F()->random(rng), F()->random(rng), F()->random(rng)};
        if (b[0].is_zero()) continue;
        ScalarMatrix frame = m.fiber_frame(ProjPoint(b));
        ScalarMatrix g = frame * gram * frame.transpose();
        FieldElement a = g.at(1, 1), c = g.at(1, 2), d = g.at(2, 2);
        FieldElement disc = c * c - a * d;
        if (a.is_zero() && c.is_zero() && d.is_zero()) continue; // line inside Q: skip
        CHECK(!disc.is_zero()); // two distinct intersection points
        ++checked;
    }
    CHECK(checked == 10);
}

TEST_CASE("implicitization: 40-point evaluation matrix has rank 35") {
    const auto& m = model();
    // independent oracle for the nullity-1 claim: rebuild the evaluation
    // matrix from fresh samples and check its rank directly
    auto monos = verra_monomials();
    REQUIRE(monos.size() == 36);
    std::vector<std::pair<ProjPoint, ProjPoint>> pts;
    std::uint64_t bump = 0;
    while (pts.size() < 40) {
        for (const auto& x : sample_xo_points(m, 40, 0xAB + 17 * ++bump)) {
            try {
                pts.emplace_back(map_pw(x), map_pell(m, x));
            } catch (const std::invalid_argument&) {
                continue;
            }
            if (pts.size() == 40) break;
        }
    }
    ScalarMatrix eval = scalar_matrix(F(), 40, 36);
    for (std::size_t r = 0; r < 40; ++r) {
        std::vector<FieldElement> c = pts[r].first.coords();
        for (const auto& e : pts[r].second.coords()) c.push_back(e);
        for (std::size_t k = 0; k < 36; ++k) {
            FieldElement v = F()->one();
            for (unsigned j = 0; j < 6; ++j)
                for (unsigned d = 0; d < monos[k][j]; ++d) v = v * c[j];
            eval.at(r, k) = v;
        }
    }
    CHECK(rank_of(eval) == 35);
}

TEST_CASE("implicitization: bidegree (2,2), fresh points vanish, seed independence") {
    const auto& m = model();
    const auto& t = solid();
    for (const auto& [e, c] : t.form.terms()) {
        (void)c;
        CHECK(e[0] + e[1] + e[2] == 2);
        CHECK(e[3] + e[4] + e[5] == 2);
    }
    std::size_t got = 0;
    for (const auto& x : sample_xo_points(m, 60, 0xFEED)) {
        try {
            CHECK(t.evaluate(map_pw(x), map_pell(m, x)).is_zero());
            ++got;
        } catch (const std::invalid_argument&) {
        }
    }
    CHECK(got >= 50);
    VerraSolid other = implicitize(m, 4242);
    CHECK(MultiPoly::proportional(t.form, other.form));
}

TEST_CASE("sampled smoothness of T") {
    CHECK(verra_smooth_sampled(solid(), model(), 100, 0x5EED));
}

TEST_CASE("p_W fibers map onto conics in P") {
    const auto& m = model();
    SplitMix64 rng(0x71);
    ScalarMatrix gram = Quadric::from_form(m.omega_o()).gram();
    // fix a fiber, gather 8 distinct points on its conic, and find the
    // degree-2 curve through their p_ell images by nullspace on 6 monomials
    std::vector<FieldElement> b{F()->from_int(3), F()->from_int(1), F()->from_int(4)};
    ScalarMatrix frame = m.fiber_frame(ProjPoint(b));
    ScalarMatrix g = frame * gram * frame.transpose();
    std::vector<ProjPoint> images;
    int guard = 200;
    while (images.size() < 8 && guard-- > 0) {
        auto p = detail::conic_point(g, rng);
        if (!p) continue;
        std::vector<FieldElement> x(7, F()->zero());
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 7; ++j) x[j] = x[j] + (*p)[k] * frame.at(k, j);
        ProjPoint pt{x};
        ProjPoint z = [&]() -> ProjPoint {
            try {
                return map_pell(m, pt);
            } catch (const std::invalid_argument&) {
                return ProjPoint({F()->one(), F()->zero(), F()->zero()});
            }
        }();
        bool fresh = true;
        for (const auto& known : images) fresh &= !(known == z);
        if (fresh) images.push_back(z);
    }
    REQUIRE(images.size() == 8);
    ScalarMatrix eval = scalar_matrix(F(), 8, 6);
    std::size_t col = 0;
    std::vector<std::array<unsigned, 2>> quad;
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = i; j < 3; ++j) quad.push_back({i, j});
    for (std::size_t r = 0; r < 8; ++r) {
        col = 0;
        for (const auto& [i, j] : quad)
            eval.at(r, col++) = images[r].coords()[i] * images[r].coords()[j];
    }
    auto ker = kernel_solve(eval);
    CHECK(ker.size() == 1); // the images satisfy exactly one conic equation
}

TEST_CASE("discriminants: degree 6, smooth, matching the net data") {
    const auto& m = model();
    auto [d1, d2] = verra_discriminants(solid());
    CHECK(d1.degree == 6);
    CHECK(d2.degree == 6);
    SplitMix64 rng(0x99);
    CHECK(plane_curve_smooth(d1.poly, rng));
    CHECK(plane_curve_smooth(d2.poly, rng));
    // disc1 is the conic-bundle discriminant over P^2_W computed directly
    // from Omega_O on the fiber frames
    PlaneCurve star = normal_form_star(m);
    CHECK(MultiPoly::proportional(d1.poly, star.poly));
    // disc2 pulls back to Gamma_6 under the net identification
    DiscriminantCurves net_disc = discriminant(m.net());
    MultiPoly pulled = d2.poly.substitute(net_to_p_substitution(F()));
    CHECK(MultiPoly::proportional(pulled, net_disc.sextic.poly));
}

TEST_CASE("del Pezzo surface over Gamma_1") {
    const auto& m = model();
    SplitMix64 rng(0x5A5A);
    auto rec = delpezzo_over_gamma1(solid(), m, rng);
    CHECK(rec.ok);
    CHECK(rec.six_simple_roots);
    CHECK(rec.roots_match_pi);
    REQUIRE(rec.fiber_ranks.size() == 6);
    for (auto r : rec.fiber_ranks) CHECK(r == 2);
    REQUIRE(rec.split_degree.size() == 6);
    // each reducible fiber splits into two lines over a finite extension
    for (auto d : rec.split_degree) CHECK(d >= 1);
}

TEST_CASE("line incidence: the twelve node lines and the J - I matrix") {
    const auto& m = model();
    const auto& t = solid();
    SplitMix64 rng(0x1D1D);
    auto rec = line_incidence_check(t, m, rng);
    REQUIRE_MESSAGE(rec.ok, rec.witness);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(rec.incidence[i][j] == (i != j ? 1 : 0));
    REQUIRE(rec.plus.size() == 6);
    REQUIRE(rec.minus.size() == 6);

    // Measured image structure.  The images are NOT all bidegree (1,1):
    // lines meeting ell collapse to single rho_2-fibers (z constant), lines
    // disjoint from ell are bisections of the del Pezzo fibration (z of
    // degree 2).  Both projections still map every image curve onto a line.
    CHECK_FALSE(rec.images_bidegree_11);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(rec.minus_zdeg[i] == 0);
        CHECK(rec.plus_zdeg[i] == 2);
    }

    const FieldPtr& E = rec.working_field;
    REQUIRE(E);
    // the constant z of each minus image lies on Gamma_1 and is a root of
    // the del Pezzo discriminant sextic (a reducible-fiber point), and the
    // six roots are pairwise distinct
    auto [d1, d2] = verra_discriminants(t);
    (void)d1;
    MultiPoly d2e = d2.poly.embedded(E);
    std::vector<ProjPoint> fiber_points;
    for (std::size_t i = 0; i < 6; ++i) {
        auto z = rec.minus[i].zc[0];
        CHECK(z[2].is_zero());
        CHECK(d2e.evaluate(z).is_zero());
        fiber_points.emplace_back(z);
    }
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) CHECK_FALSE(fiber_points[i] == fiber_points[j]);

    // oracle for the z-degrees: on ruling coordinates of Q the composed map
    // restricted to a plus image's parameter line satisfies the fitted
    // quadratic exactly at extra parameters (done inside line_image), and a
    // plus image really is a bisection: its two z-values over a random point
    // of Gamma_1 are distinct for at least one sample
    {
        const auto& il = rec.plus[0];
        FieldElement s1 = E->from_int(5), t1 = E->from_int(1);
        FieldElement s2 = E->from_int(1), t2 = E->from_int(9);
        auto za = il.z_at(s1, t1);
        auto zb = il.z_at(s2, t2);
        CHECK_FALSE(ProjPoint(za) == ProjPoint(zb)); // z is non-constant on plus lines
    }
}
