#include "doctest.h"

#include "fano10/grassw.hpp"

using namespace fano10;
using namespace fano10::wcoord;

namespace {

ProjPoint unit_point(const FieldPtr& f, std::size_t n, std::size_t i) {
    std::vector<FieldElement> c(n, f->zero());
    c[i] = f->one();
    return ProjPoint(std::move(c));
}

} // namespace

TEST_CASE("W builds over the rationals and over GF(10007)") {
    CHECK_NOTHROW(WModel::build(Field::rationals()));
    CHECK_NOTHROW(WModel::build(Field::prime(10007)));
}

TEST_CASE("orbit parametrization hits the advertised points") {
    FieldPtr f = Field::prime(10007);
    WModel w = WModel::build(f);
    // (0,0,0,0) -> [e45]
    ProjPoint O = w.orbit4_param(f->zero(), f->zero(), f->zero(), f->zero());
    CHECK(O == unit_point(f, 10, p9_x45));
    // (1,0,0,0) -> (0,1,0,1,0,0,0,-1,0,1)
    ProjPoint p = w.orbit4_param(f->one(), f->zero(), f->zero(), f->zero());
    ProjPoint expected(std::vector<FieldElement>{f->zero(), f->one(), f->zero(), f->one(), f->zero(),
                                                 f->zero(), f->zero(), -f->one(), f->zero(), f->one()});
    CHECK(p == expected);
    CHECK(w.on_w(p));
    // random parameters stay on W
    SplitMix64 rng(7);
    for (int t = 0; t < 20; ++t)
        CHECK(w.on_w(w.orbit4_param(f->random(rng), f->random(rng), f->random(rng), f->random(rng))));
}

TEST_CASE("orbit classification on the four representatives") {
    FieldPtr f = Field::prime(10007);
    WModel w = WModel::build(f);
    CHECK(w.orbit_classify(unit_point(f, 10, p9_x12)) == WOrbit::O1);
    std::vector<FieldElement> c(10, f->zero());
    c[p9_x12] = f->one();
    c[p9_x13] = f->one();
    CHECK(w.orbit_classify(ProjPoint(c)) == WOrbit::O2);
    CHECK(w.orbit_classify(unit_point(f, 10, p9_x24)) == WOrbit::O3);
    CHECK(w.orbit_classify(unit_point(f, 10, p9_x45)) == WOrbit::O4);
    // generic dense-orbit points classify as O4
    SplitMix64 rng(11);
    for (int t = 0; t < 10; ++t) {
        ProjPoint p = w.orbit4_param(f->random(rng), f->random(rng), f->random(rng), f->random(rng));
        CHECK(w.orbit_classify(p) == WOrbit::O4);
    }
    // off-W points are rejected
    CHECK_THROWS(w.orbit_classify(unit_point(f, 10, p9_x14)));
}

TEST_CASE("tangent spaces on the dense orbit") {
    FieldPtr f = Field::prime(10007);
    WModel w = WModel::build(f);
    SplitMix64 rng(13);
    for (int t = 0; t < 5; ++t) {
        ProjPoint p = w.orbit4_param(f->random(rng), f->random(rng), f->random(rng), f->random(rng));
        LinSubspace ts = w.tangent_space(p);
        CHECK(ts.proj_dim() == 4);
        CHECK(ts.contains_point(p));
    }
    // outside O4 the operation is refused
    CHECK_THROWS(w.tangent_space(unit_point(f, 10, p9_x24)));
}

TEST_CASE("gamma_w sends e5 and e4 to the pencil quadrics") {
    FieldPtr f = Field::prime(10007);
    WModel w = WModel::build(f);
    auto v = [&](unsigned i) { return MultiPoly::variable(f, 8, i); };
    MultiPoly q1 = v(p7_x12) * v(p7_x34) - v(p7_x13) * v(p7_x24) + v(p7_x14) * v(p7_x23);
    MultiPoly q2 = v(p7_x12) * v(p7_x35) + v(p7_x13) * v(p7_x14) - v(p7_x34) * v(p7_x23);
    CHECK(MultiPoly::proportional(w.gamma_w(unit_point(f, 5, 4)).form(), q1));
    CHECK(MultiPoly::proportional(w.gamma_w(unit_point(f, 5, 3)).form(), q2));
}

TEST_CASE("gamma_w is linear in the direction") {
    FieldPtr f = Field::prime(10007);
    WModel w = WModel::build(f);
    SplitMix64 rng(17);
    for (int t = 0; t < 5; ++t) {
        std::vector<FieldElement> a, b;
        for (int i = 0; i < 5; ++i) {
            a.push_back(f->random(rng));
            b.push_back(f->random(rng));
        }
        FieldElement s = f->random(rng);
        std::vector<FieldElement> comb;
        for (int i = 0; i < 5; ++i) comb.push_back(a[i] + s * b[i]);
        ScalarMatrix expect =
            w.gamma_w(ProjPoint(a)).gram() + [&] {
                ScalarMatrix g = w.gamma_w(ProjPoint(b)).gram();
                ScalarMatrix out = g;
                for (std::size_t i = 0; i < 8; ++i)
                    for (std::size_t j = 0; j < 8; ++j) out.at(i, j) = g.at(i, j) * s;
                return out;
            }();
        CHECK(w.gamma_w(ProjPoint(comb)).gram() == expect);
    }
}

TEST_CASE("gamma_w rank drops exactly on the conic c_U") {
    FieldPtr f = Field::prime(10007);
    WModel w = WModel::build(f);
    SplitMix64 rng(19);
    // points of c_U: (x1,x2,x3) = (st, s^2, -t^2), x4 = x5 = 0
    for (int t = 0; t < 10; ++t) {
        FieldElement s = f->random(rng), tt = f->random(rng);
        if (s.is_zero() && tt.is_zero()) continue;
        std::vector<FieldElement> pt{s * tt, s * s, -(tt * tt), f->zero(), f->zero()};
        CHECK(w.conic_cu().evaluate(pt).is_zero());
        auto [rank, vertex] = rank_vertex(w.gamma_w(ProjPoint(pt)));
        CHECK(rank < 6);
    }
    // points off c_U give rank 6
    int checked = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> pt{f->random(rng), f->random(rng), f->random(rng), f->random(rng), f->random(rng)};
        bool zero = true;
        for (const auto& c : pt) zero &= c.is_zero();
        if (zero || w.conic_cu().evaluate(pt).is_zero()) continue;
        auto [rank, vertex] = rank_vertex(w.gamma_w(ProjPoint(pt)));
        CHECK(rank == 6);
        ++checked;
    }
    CHECK(checked >= 10);
    // directions in V_O = <e4, e5> give quadrics singular at the image of O
    std::vector<FieldElement> o7(8, f->zero());
    o7[p7_x45] = f->one();
    for (unsigned i : {3u, 4u}) {
        Quadric q = w.gamma_w(unit_point(f, 5, i));
        auto [rank, vertex] = rank_vertex(q);
        CHECK(rank == 6);
        CHECK(vertex.contains_point(ProjPoint(o7)));
    }
}

TEST_CASE("projection from the node yields the pencil model") {
    FieldPtr f = Field::prime(10007);
    WModel w = WModel::build(f);
    WOModel wo = w.project_from_node();
    auto v = [&](unsigned i) { return MultiPoly::variable(f, 7, i); };
    CHECK(wo.quadric1() == v(p6_x12) * v(p6_x34) - v(p6_x13) * v(p6_x24) + v(p6_x14) * v(p6_x23));
    CHECK(wo.quadric2() == v(p6_x12) * v(p6_x35) + v(p6_x13) * v(p6_x14) - v(p6_x34) * v(p6_x23));
    CHECK(wo.p3w().proj_dim() == 3);
    // projected parametrization points satisfy the pencil
    SplitMix64 rng(23);
    for (int t = 0; t < 10; ++t) {
        ProjPoint p9 = w.orbit4_param(f->random(rng), f->random(rng), f->random(rng), f->random(rng));
        const auto& c = p9.coords();
        ProjPoint p6(std::vector<FieldElement>{c[p9_x12], c[p9_x13], c[p9_x14], c[p9_x23], c[p9_x24], c[p9_x34],
                                               c[p9_x35]});
        CHECK(wo.on_wo(p6));
    }
}

TEST_CASE("pencil vertices sweep out the twisted cubic injectively") {
    FieldPtr f = Field::prime(10007);
    WOModel wo = WModel::build(f).project_from_node();
    SplitMix64 rng(29);
    std::vector<ProjPoint> seen;
    int distinct_lambda = 0;
    for (int t = 0; t < 60 && distinct_lambda < 50; ++t) {
        FieldElement l0 = f->random(rng), l1 = f->random(rng);
        if (l0.is_zero() && l1.is_zero()) continue;
        ++distinct_lambda;
        ProjPoint vx = wo.pencil_vertex(l0, l1);
        CHECK(wo.on_co(vx));
        for (const auto& old : seen) CHECK(old != vx);
        seen.push_back(vx);
    }
    CHECK(distinct_lambda >= 50);
    // C_O parametrization points are vertices-compatible: they lie on C_O
    for (int t = 0; t < 10; ++t) {
        FieldElement s = f->random(rng), tt = f->random(rng);
        if (s.is_zero() && tt.is_zero()) continue;
        CHECK(wo.on_co(wo.co_param(s, tt)));
        CHECK(wo.on_wo(wo.co_param(s, tt)));
    }
}

TEST_CASE("bundle rank certificate holds globally") {
    FieldPtr f = Field::prime(10007);
    WOModel wo = WModel::build(f).project_from_node();
    SplitMix64 rng(31);
    BundleRankRecord rec = wo.bundle_rank_check(200, rng);
    CHECK(rec.ok);
    CHECK(rec.minors5_vanish);
    CHECK(rec.minor_certificate);
    CHECK(rec.exhaustive_ok);
    CHECK(rec.samples == 200);
    CHECK(rec.witness.empty());
}

TEST_CASE("explicit fiber at a = (1:0:0)") {
    FieldPtr f = Field::prime(10007);
    WOModel wo = WModel::build(f).project_from_node();
    LinSubspace fiber = wo.bundle_fiber(unit_point(f, 3, 0));
    CHECK(fiber.proj_dim() == 2);
    // {x13 = x23 = x34 = x35 = 0}: spanned by the x12, x14, x24 axes
    CHECK(fiber.contains_point(unit_point(f, 7, p6_x12)));
    CHECK(fiber.contains_point(unit_point(f, 7, p6_x14)));
    CHECK(fiber.contains_point(unit_point(f, 7, p6_x24)));
}

TEST_CASE("fibers over the line a12 = 0 still have dimension 2") {
    FieldPtr f = Field::prime(10007);
    WOModel wo = WModel::build(f).project_from_node();
    SplitMix64 rng(37);
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> a{f->zero(), f->random(rng), f->random(rng)};
        if (a[1].is_zero() && a[2].is_zero()) a[1] = f->one();
        CHECK(wo.bundle_fiber(ProjPoint(a)).proj_dim() == 2);
    }
}

TEST_CASE("restriction over the strict transform of P3_W gives lines") {
    FieldPtr f = Field::prime(10007);
    WOModel wo = WModel::build(f).project_from_node();
    SplitMix64 rng(41);
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> a{f->random(rng), f->random(rng), f->random(rng)};
        bool zero = true;
        for (const auto& c : a) zero &= c.is_zero();
        if (zero) a[0] = f->one();
        LinSubspace fiber = wo.bundle_fiber(ProjPoint(a));
        CHECK(fiber.intersect(wo.p3w()).proj_dim() == 1);
    }
}

TEST_CASE("M_V4 fibers coincide with bundle fibers under b -> (b3,-b2,b1)") {
    FieldPtr f = Field::prime(10007);
    WOModel wo = WModel::build(f).project_from_node();
    // b = (0,0,1) matches the a = (1,0,0) fiber
    LinSubspace mv = wo.mv4_fiber(unit_point(f, 3, 2));
    CHECK(mv.same_as(wo.bundle_fiber(unit_point(f, 3, 0))));
    // b = (1,0,0) matches the a = (0,0,1) fiber
    CHECK(wo.mv4_fiber(unit_point(f, 3, 0)).same_as(wo.bundle_fiber(unit_point(f, 3, 2))));
    // seeded b
    SplitMix64 rng(43);
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> b{f->random(rng), f->random(rng), f->random(rng)};
        bool zero = true;
        for (const auto& c : b) zero &= c.is_zero();
        if (zero) b[2] = f->one();
        std::vector<FieldElement> a{b[2], -b[1], b[0]};
        CHECK(wo.mv4_fiber(ProjPoint(b)).same_as(wo.bundle_fiber(ProjPoint(a))));
    }
}
