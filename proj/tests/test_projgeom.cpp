#include "doctest.h"

#include "fano10/projgeom.hpp"

using namespace fano10;

namespace {

FieldPtr F() { return Field::prime(10007); }

ProjPoint unit_point(const FieldPtr& f, std::size_t n, std::size_t i) {
    std::vector<FieldElement> c(n, f->zero());
    c[i] = f->one();
    return ProjPoint(std::move(c));
}

// the split quadric x0*x1 + x2*x3 + x4*x5 in P^6, rank 6 with vertex e6
Quadric split_quadric(const FieldPtr& f) {
    ScalarMatrix a = scalar_matrix(f, 7, 7);
    FieldElement half = f->from_int(2).inv();
    for (std::size_t k = 0; k < 3; ++k) {
        a.at(2 * k, 2 * k + 1) = half;
        a.at(2 * k + 1, 2 * k) = half;
    }
    return Quadric(a);
}

LinSubspace coordinate_plane(const FieldPtr& f, std::initializer_list<std::size_t> idx) {
    ScalarMatrix rows = scalar_matrix(f, idx.size(), 7);
    std::size_t r = 0;
    for (std::size_t i : idx) rows.at(r++, i) = f->one();
    return LinSubspace::from_rows(std::move(rows));
}

// reflection in an anisotropic vector v: x -> x - (B(x,v)/Q(v)) v.
// It preserves the quadric, fixes the vertex, and lies in O \ SO.
LinSubspace reflect(const Quadric& q, const LinSubspace& plane, const std::vector<FieldElement>& v) {
    const FieldPtr& f = q.field();
    FieldElement qv = q.bilinear(v, v);
    REQUIRE_FALSE(qv.is_zero());
    ScalarMatrix out = scalar_matrix(f, plane.basis().rows(), 7);
    for (std::size_t r = 0; r < plane.basis().rows(); ++r) {
        std::vector<FieldElement> x;
        for (std::size_t j = 0; j < 7; ++j) x.push_back(plane.basis().at(r, j));
        FieldElement c = f->from_int(2) * q.bilinear(x, v) / qv;
        for (std::size_t j = 0; j < 7; ++j) out.at(r, j) = x[j] - c * v[j];
    }
    return LinSubspace::from_rows(std::move(out));
}

} // namespace

TEST_CASE("projective point equality is scale invariant") {
    FieldPtr f = F();
    ProjPoint p(std::vector<FieldElement>{f->one(), f->from_int(2), f->zero()});
    ProjPoint q(std::vector<FieldElement>{f->from_int(3), f->from_int(6), f->zero()});
    ProjPoint r(std::vector<FieldElement>{f->one(), f->from_int(3), f->zero()});
    CHECK(p == q);
    CHECK(p != r);
    CHECK_THROWS(ProjPoint(std::vector<FieldElement>{f->zero(), f->zero()}));
}

TEST_CASE("subspace dimensions, membership, and joins") {
    FieldPtr f = F();
    LinSubspace line = coordinate_plane(f, {0, 1});
    CHECK(line.proj_dim() == 1);
    CHECK(line.contains_point(unit_point(f, 7, 0)));
    CHECK_FALSE(line.contains_point(unit_point(f, 7, 2)));
    LinSubspace plane = line.joined_with(unit_point(f, 7, 2));
    CHECK(plane.proj_dim() == 2);
    // joining a contained point does not grow the space
    CHECK(line.joined_with(unit_point(f, 7, 1)).proj_dim() == 1);
    CHECK_THROWS(LinSubspace::from_rows([&] {
        ScalarMatrix rows = scalar_matrix(f, 2, 7);
        rows.at(0, 0) = f->one();
        rows.at(1, 0) = f->from_int(2);
        return rows;
    }()));
}

TEST_CASE("zassenhaus intersection has the right dimension") {
    FieldPtr f = F();
    LinSubspace a = coordinate_plane(f, {0, 1, 2});
    LinSubspace b = coordinate_plane(f, {2, 3, 4});
    LinSubspace c = a.intersect(b);
    CHECK(c.proj_dim() == 0);
    CHECK(c.contains_point(unit_point(f, 7, 2)));
    LinSubspace d = coordinate_plane(f, {5, 6});
    CHECK(a.intersect(d).proj_dim() == -1);
    CHECK(a.intersect(a).same_as(a));
    // random-slant intersection check: dim(A)+dim(B) = dim(A+B)+dim(A^B)
    SplitMix64 rng(97);
    for (int t = 0; t < 10; ++t) {
        ScalarMatrix ra = scalar_matrix(f, 3, 7), rb = scalar_matrix(f, 4, 7);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 7; ++j) ra.at(i, j) = f->random(rng);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 7; ++j) rb.at(i, j) = f->random(rng);
        LinSubspace sa = LinSubspace::span_of(ra), sb = LinSubspace::span_of(rb);
        ScalarMatrix stacked = scalar_matrix(f, 7, 7);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 7; ++j) stacked.at(i, j) = ra.at(i, j);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 7; ++j) stacked.at(3 + i, j) = rb.at(i, j);
        int join_dim = static_cast<int>(rank_of(stacked)) - 1;
        CHECK(sa.proj_dim() + sb.proj_dim() == join_dim + sa.intersect(sb).proj_dim());
    }
}

TEST_CASE("quadric gram/form round trip and evaluation") {
    FieldPtr f = F();
    Quadric q = split_quadric(f);
    MultiPoly form = q.form();
    CHECK(Quadric::from_form(form).gram() == q.gram());
    // e0 is on the quadric, e0+e1 is not
    CHECK(q.evaluate(unit_point(f, 7, 0)).is_zero());
    std::vector<FieldElement> v(7, f->zero());
    v[0] = f->one();
    v[1] = f->one();
    CHECK_FALSE(q.evaluate(ProjPoint(v)).is_zero());
    CHECK_THROWS(Quadric::from_form(MultiPoly::variable(f, 7, 0))); // not quadratic
}

TEST_CASE("rank and vertex of the split quadric") {
    FieldPtr f = F();
    auto [rank, vertex] = rank_vertex(split_quadric(f));
    CHECK(rank == 6);
    CHECK(vertex.proj_dim() == 0);
    CHECK(vertex.contains_point(unit_point(f, 7, 6)));
}

TEST_CASE("isotropy test for subspaces") {
    FieldPtr f = F();
    Quadric q = split_quadric(f);
    CHECK(contains(q, coordinate_plane(f, {0, 2, 4, 6})));
    CHECK_FALSE(contains(q, coordinate_plane(f, {0, 1, 2, 6})));
}

TEST_CASE("parity rule on explicit coordinate planes") {
    FieldPtr f = F();
    Quadric q = split_quadric(f);
    LinSubspace base = coordinate_plane(f, {0, 2, 4, 6});
    // swapping one hyperbolic pair flips the family, two swaps restore it
    CHECK_FALSE(same_ruling(q, base, coordinate_plane(f, {1, 2, 4, 6})));
    CHECK(same_ruling(q, base, coordinate_plane(f, {1, 3, 4, 6})));
    CHECK_FALSE(same_ruling(q, base, coordinate_plane(f, {1, 3, 5, 6})));
    CHECK(same_ruling(q, base, base));
}

TEST_CASE("parity rule preconditions produce errors") {
    FieldPtr f = F();
    Quadric q = split_quadric(f);
    LinSubspace good = coordinate_plane(f, {0, 2, 4, 6});
    // not isotropic
    CHECK_THROWS_AS(same_ruling(q, good, coordinate_plane(f, {0, 1, 2, 6})), RulingError);
    // misses the vertex
    CHECK_THROWS_AS(same_ruling(q, good, coordinate_plane(f, {0, 2, 4, 5})), RulingError);
    // wrong dimension
    CHECK_THROWS_AS(same_ruling(q, good, coordinate_plane(f, {0, 2, 6})), RulingError);
    // wrong rank: x0*x1 + x2*x3 only
    ScalarMatrix a = scalar_matrix(f, 7, 7);
    FieldElement half = f->from_int(2).inv();
    a.at(0, 1) = half; a.at(1, 0) = half;
    a.at(2, 3) = half; a.at(3, 2) = half;
    CHECK_THROWS_AS(same_ruling(Quadric(a), good, good), RulingError);
}

TEST_CASE("sampled isotropic 3-planes satisfy all invariants") {
    FieldPtr f = F();
    Quadric q = split_quadric(f);
    SplitMix64 rng(101);
    for (int t = 0; t < 10; ++t) {
        auto plane = sample_isotropic_3plane(q, rng);
        REQUIRE(plane.has_value());
        CHECK(plane->proj_dim() == 3);
        CHECK(plane->contains_point(unit_point(f, 7, 6)));
        CHECK(contains(q, *plane));
    }
}

// Independent certification of the parity rule.  The two families of maximal
// isotropic subspaces are the orbits of the special orthogonal group, and any
// reflection exchanges them.  So the rule is correct iff the parity predicate
// is (a) an equivalence-like two-class relation on samples, (b) preserved by
// products of two reflections, and (c) flipped by a single reflection.
TEST_CASE("parity rule matches the orthogonal-group family oracle") {
    FieldPtr f = F();
    Quadric q = split_quadric(f);
    SplitMix64 rng(103);
    std::vector<LinSubspace> planes;
    for (int t = 0; t < 8; ++t) {
        auto p = sample_isotropic_3plane(q, rng);
        REQUIRE(p.has_value());
        planes.push_back(*p);
    }
    // (a) two-class consistency on all triples
    for (std::size_t i = 0; i < planes.size(); ++i)
        for (std::size_t j = i + 1; j < planes.size(); ++j)
            for (std::size_t k = j + 1; k < planes.size(); ++k) {
                bool sij = same_ruling(q, planes[i], planes[j]);
                bool sjk = same_ruling(q, planes[j], planes[k]);
                bool sik = same_ruling(q, planes[i], planes[k]);
                CHECK(sik == (sij == sjk));
            }
    // symmetric relation
    CHECK(same_ruling(q, planes[0], planes[1]) == same_ruling(q, planes[1], planes[0]));
    // both classes occur among random samples
    bool saw_same = false, saw_diff = false;
    for (std::size_t j = 1; j < planes.size(); ++j)
        (same_ruling(q, planes[0], planes[j]) ? saw_same : saw_diff) = true;
    CHECK(saw_same);
    CHECK(saw_diff);
    // (b), (c): reflections flip the class, rotations preserve it
    for (const auto& plane : planes) {
        std::vector<FieldElement> v1, v2;
        do {
            v1.assign(7, f->zero());
            for (auto& c : v1) c = f->random(rng);
        } while (q.bilinear(v1, v1).is_zero());
        do {
            v2.assign(7, f->zero());
            for (auto& c : v2) c = f->random(rng);
        } while (q.bilinear(v2, v2).is_zero());
        LinSubspace flipped = reflect(q, plane, v1);
        CHECK(contains(q, flipped));
        CHECK_FALSE(same_ruling(q, plane, flipped));
        LinSubspace rotated = reflect(q, flipped, v2);
        CHECK(same_ruling(q, plane, rotated));
    }
}

TEST_CASE("jacobian rank at smooth and singular points") {
    FieldPtr f = F();
    MultiPoly x = MultiPoly::variable(f, 3, 0);
    MultiPoly y = MultiPoly::variable(f, 3, 1);
    MultiPoly z = MultiPoly::variable(f, 3, 2);
    MultiPoly nodal = y * y * z - x * x * x - x * x * z;
    // singular at (0:0:1): jacobian rank 0
    CHECK(jacobian_rank({nodal}, unit_point(f, 3, 2)) == 0);
    // smooth elsewhere, e.g. x = -1, y = 0, z = 1 lies on the curve
    ProjPoint p(std::vector<FieldElement>{-f->one(), f->zero(), f->one()});
    CHECK(jacobian_rank({nodal}, p) == 1);
    CHECK_THROWS(jacobian_rank({nodal}, unit_point(f, 3, 0)));
}
