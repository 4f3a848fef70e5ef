#include "doctest.h"

#include "fano10/field.hpp"
#include "fano10/matrix.hpp"
#include "fano10/pit.hpp"
#include "fano10/poly.hpp"
#include "fano10/resultant.hpp"
#include "fano10/rng.hpp"
#include "fano10/serialize.hpp"
#include "fano10/unipoly.hpp"

using namespace fano10;

namespace {

// independent determinant oracle: cofactor expansion along the first row
MultiPoly cofactor_det(const PolyMatrix& m) {
    const FieldPtr f = m.at(0, 0).field();
    unsigned arity = m.at(0, 0).arity();
    std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    MultiPoly acc = MultiPoly::zero(f, arity);
    for (std::size_t j = 0; j < n; ++j) {
        MultiPoly term = m.at(0, j) * cofactor_det(poly_minor(m, 0, j));
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

MultiPoly random_poly(const FieldPtr& f, unsigned arity, unsigned deg, SplitMix64& rng) {
    std::vector<MultiPoly::Term> terms;
    for (int t = 0; t < 6; ++t) {
        Exponents e(arity, 0);
        unsigned budget = deg;
        for (unsigned k = 0; k < arity; ++k) {
            unsigned v = static_cast<unsigned>(rng.below(budget + 1));
            e[k] = v;
            budget -= v;
        }
        terms.emplace_back(std::move(e), f->random(rng));
    }
    return MultiPoly::from_terms(f, arity, std::move(terms));
}

} // namespace

TEST_CASE("splitmix64 reproduces the reference stream") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFULL);
    CHECK(g.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(g.next() == 0x06C45D188009454FULL);
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("splitmix64 bounded draws are in range") {
    SplitMix64 g(7);
    for (int i = 0; i < 1000; ++i) CHECK(g.below(17) < 17);
}

TEST_CASE("prime field arithmetic matches brute force over GF(17)") {
    FieldPtr f = Field::prime(17);
    for (long a = 1; a < 17; ++a) {
        FieldElement x = f->from_int(a);
        CHECK((x * x.inv()).is_one());
        for (long b = 0; b < 17; ++b) {
            FieldElement y = f->from_int(b);
            CHECK((x + y) == f->from_int((a + b) % 17));
            CHECK((x * y) == f->from_int((a * b) % 17));
        }
    }
}

TEST_CASE("field constructors reject bad characteristics") {
    CHECK_THROWS(Field::prime(4));
    CHECK_THROWS(Field::prime(2));
    CHECK_THROWS(Field::prime(3)); // symmetrization needs 1/2, orbits need 1/3
    CHECK_THROWS(Field::prime(9)); // not prime
    CHECK_THROWS(Field::prime(1ULL << 32));
    CHECK_NOTHROW(Field::prime(5)); // auxiliary certificate field
    CHECK_NOTHROW(Field::prime(10007));
}

TEST_CASE("extension field has the right multiplicative order") {
    FieldPtr f = Field::extension_of_degree(17, 3);
    REQUIRE(f->order() == mpz_class(17 * 17 * 17));
    SplitMix64 rng(5);
    for (int i = 0; i < 20; ++i) {
        FieldElement a = f->random(rng);
        if (a.is_zero()) continue;
        CHECK(a.pow(f->order() - 1).is_one());
        CHECK((a * a.inv()).is_one());
    }
    FieldElement g = f->ext_generator();
    // the generator satisfies its modulus
    const auto& m = f->modulus();
    FieldElement acc = f->zero();
    for (std::size_t i = 0; i < m.size(); ++i)
        acc = acc + f->from_int(static_cast<long>(m[i])) * g.pow(static_cast<unsigned long>(i));
    CHECK(acc.is_zero());
}

TEST_CASE("extension rejects reducible moduli") {
    // x^2 - 1 = (x-1)(x+1) over GF(17)
    CHECK_THROWS(Field::extension(17, {16, 0, 1}));
    // x^2 - 3 is irreducible over GF(17) (3 is not a QR mod 17)
    CHECK_NOTHROW(Field::extension(17, {14, 0, 1}));
}

TEST_CASE("rational arithmetic is exact") {
    FieldPtr q = Field::rationals();
    FieldElement a = q->from_rational(mpq_class(1, 3));
    FieldElement b = q->from_rational(mpq_class(1, 6));
    CHECK((a + b) == q->from_rational(mpq_class(1, 2)));
    CHECK((a / b) == q->from_int(2));
}

TEST_CASE("polynomial ring identities hold") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(11);
    for (int t = 0; t < 10; ++t) {
        MultiPoly a = random_poly(f, 3, 3, rng);
        MultiPoly b = random_poly(f, 3, 3, rng);
        MultiPoly c = random_poly(f, 3, 3, rng);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("exact division inverts multiplication") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(13);
    for (int t = 0; t < 10; ++t) {
        MultiPoly a = random_poly(f, 3, 3, rng);
        MultiPoly b = random_poly(f, 3, 3, rng);
        if (a.is_zero() || b.is_zero()) continue;
        auto q = (a * b).divide_exact(b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
        // a*b + 1 is not divisible by b unless b is constant
        if (!b.is_constant()) {
            MultiPoly one = MultiPoly::constant(f, 3, f->one());
            CHECK_FALSE((a * b + one).divide_exact(b).has_value());
        }
    }
}

TEST_CASE("homogeneity certificate tracks operations") {
    FieldPtr f = Field::prime(10007);
    MultiPoly x = MultiPoly::variable(f, 3, 0);
    MultiPoly y = MultiPoly::variable(f, 3, 1);
    MultiPoly q = x * x + y * y;
    REQUIRE(q.homogeneous_degree().has_value());
    CHECK(*q.homogeneous_degree() == 2);
    MultiPoly mixed = q + x;
    CHECK_FALSE(mixed.homogeneous_degree().has_value());
    CHECK(*(q * q).homogeneous_degree() == 4);
}

TEST_CASE("evaluation and substitution agree") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(17);
    MultiPoly p = random_poly(f, 3, 4, rng);
    std::vector<FieldElement> pt{f->random(rng), f->random(rng), f->random(rng)};
    std::vector<MultiPoly> consts;
    for (const auto& v : pt) consts.push_back(MultiPoly::constant(f, 1, v));
    MultiPoly evaluated = p.substitute(consts);
    REQUIRE(evaluated.is_constant());
    CHECK(evaluated.constant_value() == p.evaluate(pt));
}

TEST_CASE("bareiss determinant matches cofactor expansion") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(19);
    for (std::size_t n = 2; n <= 4; ++n) {
        PolyMatrix m = poly_matrix(f, 2, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = random_poly(f, 2, 2, rng);
        CHECK(bareiss_det(m) == cofactor_det(m));
    }
}

TEST_CASE("interpolated determinant agrees with bareiss") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(23);
    for (int t = 0; t < 3; ++t) {
        PolyMatrix m = poly_matrix(f, 3, 5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                std::vector<MultiPoly::Term> terms;
                for (unsigned k = 0; k < 3; ++k) {
                    Exponents e(3, 0);
                    e[k] = 1;
                    terms.emplace_back(std::move(e), f->random(rng));
                }
                m.at(i, j) = MultiPoly::from_terms(f, 3, std::move(terms));
            }
        CHECK(det_interpolate(m, rng) == bareiss_det(m));
    }
}

TEST_CASE("adjugate identity m*adj = det*I") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(29);
    PolyMatrix m = poly_matrix(f, 2, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m.at(i, j) = random_poly(f, 2, 1, rng);
    auto [det, adj] = det_adjugate(m);
    PolyMatrix prod = m * adj;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) CHECK(prod.at(i, j) == det);
            else CHECK(prod.at(i, j).is_zero());
        }
}

TEST_CASE("rref rank and kernel dimensions are consistent") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(31);
    for (int t = 0; t < 10; ++t) {
        ScalarMatrix m = scalar_matrix(f, 4, 6);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                m.at(i, j) = f->random(rng);
        std::size_t r = rank_of(m);
        auto ker = kernel_solve(m);
        CHECK(r + ker.size() == 6);
        for (const auto& v : ker)
            for (std::size_t i = 0; i < 4; ++i) {
                FieldElement acc = f->zero();
                for (std::size_t j = 0; j < 6; ++j) acc = acc + m.at(i, j) * v[j];
                CHECK(acc.is_zero());
            }
    }
}

TEST_CASE("univariate roots match exhaustive search over GF(17)") {
    FieldPtr f = Field::prime(17);
    SplitMix64 rng(37);
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> coeffs;
        for (int i = 0; i < 6; ++i) coeffs.push_back(f->random(rng));
        UniPoly p(f, coeffs);
        if (p.degree() < 1) continue;
        std::vector<FieldElement> expected;
        for (long a = 0; a < 17; ++a) {
            FieldElement x = f->from_int(a);
            if (p.evaluate(x).is_zero()) expected.push_back(x);
        }
        auto roots = uni_roots(p, rng);
        // compare as sets (uni_roots repeats with multiplicity)
        for (const auto& r : expected) {
            bool found = false;
            for (const auto& s : roots) found |= (s == r);
            CHECK(found);
        }
        for (const auto& s : roots) CHECK(p.evaluate(s).is_zero());
    }
}

TEST_CASE("factorization reproduces the input") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(41);
    for (int t = 0; t < 10; ++t) {
        std::vector<FieldElement> coeffs;
        for (int i = 0; i < 8; ++i) coeffs.push_back(f->random(rng));
        UniPoly p(f, coeffs);
        if (p.degree() < 1) continue;
        UniPoly prod = UniPoly::constant(f, p.lc());
        for (const auto& [g, mult] : uni_factor(p, rng)) {
            REQUIRE(g.lc().is_one());
            for (unsigned i = 0; i < mult; ++i) prod = prod * g;
        }
        CHECK(prod == p);
    }
}

TEST_CASE("factorization handles repeated factors") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(43);
    UniPoly x = UniPoly::x(f);
    UniPoly a = x - UniPoly::constant(f, f->from_int(3));
    UniPoly b = x - UniPoly::constant(f, f->from_int(5));
    UniPoly p = a * a * a * b;
    auto factors = uni_factor(p, rng);
    REQUIRE(factors.size() == 2);
    unsigned mults = 0;
    for (const auto& [g, m] : factors) {
        CHECK(g.degree() == 1);
        mults += m;
    }
    CHECK(mults == 4);
}

TEST_CASE("square roots verify by squaring") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(47);
    int squares = 0, nonsquares = 0;
    for (int t = 0; t < 30; ++t) {
        FieldElement a = f->random(rng);
        auto r = field_sqrt(a, rng);
        if (r) {
            ++squares;
            CHECK((*r) * (*r) == a);
        } else {
            ++nonsquares;
            // oracle: a^((p-1)/2) must be -1 for a non-square
            CHECK(a.pow(mpz_class((10007 - 1) / 2)) == -f->one());
        }
    }
    CHECK(squares > 0);
    CHECK(nonsquares > 0);
}

TEST_CASE("binary form roots recover constructed linear factors") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(53);
    // (s - 2t)(s - 3t)(t) in variables (s, t) = (x0, x1)
    MultiPoly s = MultiPoly::variable(f, 2, 0);
    MultiPoly t = MultiPoly::variable(f, 2, 1);
    MultiPoly form = (s - t.scaled(f->from_int(2))) * (s - t.scaled(f->from_int(3))) * t;
    auto roots = binary_form_roots(form, 0, 1, rng);
    REQUIRE(roots.size() == 3);
    bool has2 = false, has3 = false, hasinf = false;
    for (const auto& [rs, rt] : roots) {
        if (rt.is_zero()) hasinf = true;
        else if (rs / rt == f->from_int(2)) has2 = true;
        else if (rs / rt == f->from_int(3)) has3 = true;
    }
    CHECK(has2);
    CHECK(has3);
    CHECK(hasinf);
}

TEST_CASE("resultant detects common roots") {
    FieldPtr f = Field::prime(10007);
    MultiPoly x = MultiPoly::variable(f, 2, 0);
    MultiPoly y = MultiPoly::variable(f, 2, 1);
    // f1 = x^2 - y^2 = (x-y)(x+y), f2 = x - y share the root x = y
    MultiPoly f1 = x * x - y * y;
    MultiPoly f2 = x - y;
    CHECK(resultant_uni(f1, f2, 0).is_zero());
    // f3 = x - 2y shares no root with f2 generically
    MultiPoly f3 = x - y.scaled(f->from_int(2));
    MultiPoly r = resultant_uni(f2, f3, 0);
    CHECK_FALSE(r.is_zero());
    // Res over x of (x-y) and (x-2y) is y evaluated at the root: -y up to sign
    CHECK(MultiPoly::proportional(r, y));
}

TEST_CASE("resultant multiplicativity spot check") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(59);
    MultiPoly x = MultiPoly::variable(f, 2, 0);
    MultiPoly y = MultiPoly::variable(f, 2, 1);
    MultiPoly a = x - y.scaled(f->from_int(4));
    MultiPoly b = x - y.scaled(f->from_int(7));
    MultiPoly g = x * x + y * y.scaled(f->from_int(3));
    MultiPoly lhs = resultant_uni(a * b, g, 0);
    MultiPoly rhs = resultant_uni(a, g, 0) * resultant_uni(b, g, 0);
    CHECK(lhs == rhs);
}

TEST_CASE("fermat cubic is smooth, nodal cubic is not") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(61);
    MultiPoly x = MultiPoly::variable(f, 3, 0);
    MultiPoly y = MultiPoly::variable(f, 3, 1);
    MultiPoly z = MultiPoly::variable(f, 3, 2);
    MultiPoly fermat = x.pow(3) + y.pow(3) + z.pow(3);
    CHECK(plane_curve_smooth(fermat, rng));
    MultiPoly nodal = y * y * z - x.pow(3) - x * x * z;
    auto witness = plane_curve_singularity(nodal, rng);
    CHECK(witness.has_value());
    // cuspidal cubic: singular as well
    MultiPoly cusp = y * y * z - x.pow(3);
    CHECK_FALSE(plane_curve_smooth(cusp, rng));
}

TEST_CASE("smooth conic and singular conic pair") {
    FieldPtr f = Field::prime(10007);
    SplitMix64 rng(67);
    MultiPoly x = MultiPoly::variable(f, 3, 0);
    MultiPoly y = MultiPoly::variable(f, 3, 1);
    MultiPoly z = MultiPoly::variable(f, 3, 2);
    CHECK(plane_curve_smooth(x * z - y * y, rng));
    CHECK_FALSE(plane_curve_smooth(x * y, rng)); // line pair, singular at (0:0:1)
}

TEST_CASE("smoothness check requires a finite field") {
    FieldPtr q = Field::rationals();
    SplitMix64 rng(71);
    MultiPoly x = MultiPoly::variable(q, 3, 0);
    CHECK_THROWS_AS(plane_curve_smooth(x * x, rng), std::domain_error);
}

TEST_CASE("pit gives exact verdicts") {
    FieldPtr f = Field::prime(10007);
    MultiPoly x = MultiPoly::variable(f, 2, 0);
    MultiPoly y = MultiPoly::variable(f, 2, 1);
    MultiPoly zero_poly = (x + y) * (x - y) - (x * x - y * y);
    auto v1 = pit_zero(zero_poly, 5, 123);
    CHECK(v1.zero);
    CHECK(v1.certain);
    auto v2 = pit_zero(x * y, 5, 123);
    CHECK_FALSE(v2.zero);
}

TEST_CASE("polynomial text serialization round trips") {
    SplitMix64 rng(73);
    for (FieldPtr f : {Field::prime(10007), Field::rationals(), Field::extension_of_degree(10007, 2)}) {
        MultiPoly p = random_poly(f, 4, 3, rng);
        std::string text = poly_to_text(p);
        MultiPoly q = poly_from_text(f, text);
        CHECK(p == q);
    }
    // canonical formatting example
    FieldPtr f = Field::prime(10007);
    MultiPoly x = MultiPoly::variable(f, 2, 0);
    MultiPoly y = MultiPoly::variable(f, 2, 1);
    CHECK(poly_to_text(x * x + y.scaled(f->from_int(3))) == "2; [2 0 : 1 mod 10007] [0 1 : 3 mod 10007]");
}

TEST_CASE("serialization is deterministic across term orderings") {
    FieldPtr f = Field::prime(10007);
    std::vector<MultiPoly::Term> t1, t2;
    Exponents e1{1, 0}, e2{0, 1};
    t1.emplace_back(e1, f->one());
    t1.emplace_back(e2, f->from_int(2));
    t2.emplace_back(e2, f->from_int(2));
    t2.emplace_back(e1, f->one());
    CHECK(poly_to_text(MultiPoly::from_terms(f, 2, t1)) == poly_to_text(MultiPoly::from_terms(f, 2, t2)));
}
