#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fano10/matrix.hpp"
#include "fano10/unipoly.hpp"

namespace fano10 {

// Sylvester-determinant resultant eliminating `var`.  Sign convention:
// Res(f,g) = lc(f)^deg(g) * prod g(roots of f).
inline MultiPoly resultant_uni(const MultiPoly& f, const MultiPoly& g, unsigned var) {
    unsigned df = f.degree_in(var), dg = g.degree_in(var);
    if (df == 0 && dg == 0)
        throw std::invalid_argument("both inputs constant in the eliminated variable");
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("resultant of the zero polynomial");
    const FieldPtr& F = f.field();
    unsigned arity = f.arity();
    std::size_t n = df + dg;
    PolyMatrix syl = poly_matrix(F, arity, n, n);
    // rows 0..dg-1 carry f, rows dg..dg+df-1 carry g
    for (unsigned r = 0; r < dg; ++r)
        for (unsigned k = 0; k <= df; ++k)
            syl.at(r, r + k) = f.coeff_of(var, df - k);
    for (unsigned r = 0; r < df; ++r)
        for (unsigned k = 0; k <= dg; ++k)
            syl.at(dg + r, r + k) = g.coeff_of(var, dg - k);
    if (n == 0) return MultiPoly::constant(F, arity, F->one());
    return bareiss_det(std::move(syl));
}

// gcd of two homogeneous binary forms in variables (var_s, var_t)
inline MultiPoly binary_form_gcd(const MultiPoly& a, const MultiPoly& b, unsigned var_s, unsigned var_t) {
    const FieldPtr& F = a.field();
    auto split = [&](const MultiPoly& f) {
        unsigned d = f.total_degree();
        std::vector<FieldElement> coeffs(d + 1, F->zero());
        for (const auto& [e, c] : f.terms()) coeffs[e[var_s]] = c;
        UniPoly u(F, coeffs);
        unsigned t_mult = d - static_cast<unsigned>(u.degree());
        return std::make_pair(u, t_mult);
    };
    auto [ua, ta] = split(a);
    auto [ub, tb] = split(b);
    UniPoly g = UniPoly::gcd(ua, ub);
    unsigned t_mult = std::min(ta, tb);
    MultiPoly r = g.to_multipoly(a.arity(), var_s);
    // reinstate homogeneity: each s^k coefficient picks up t^(deg g - k),
    // then multiply by the shared power of t
    std::vector<MultiPoly::Term> terms;
    unsigned dg = static_cast<unsigned>(g.degree());
    for (const auto& [e, c] : r.terms()) {
        Exponents ne = e;
        ne[var_t] = dg - e[var_s] + t_mult;
        terms.emplace_back(std::move(ne), c);
    }
    return MultiPoly::from_terms(F, a.arity(), std::move(terms));
}

struct SingularWitness {
    std::string description;
};

namespace detail {

// For a projective root (s0:t0) of an irreducible binary factor, returns the
// point over the smallest field containing it together with that field.
struct BinaryRoot {
    FieldPtr field;
    FieldElement s, t;
};

inline std::vector<BinaryRoot> binary_form_points(const MultiPoly& form, unsigned var_s, unsigned var_t,
                                                  SplitMix64& rng) {
    const FieldPtr& F = form.field();
    std::vector<BinaryRoot> out;
    unsigned d = form.total_degree();
    std::vector<FieldElement> coeffs(d + 1, F->zero());
    for (const auto& [e, c] : form.terms()) coeffs[e[var_s]] = c;
    UniPoly u(F, coeffs);
    if (static_cast<unsigned>(u.degree()) < d)
        out.push_back({F, F->one(), F->zero()});
    for (const auto& [fac, mult] : uni_factor(u, rng)) {
        (void)mult;
        if (fac.degree() == 1) {
            out.push_back({F, -fac.coeffs()[0], F->one()});
        } else {
            unsigned k = static_cast<unsigned>(fac.degree());
            unsigned base_deg = F->kind() == FieldKind::Extension ? F->degree() : 1;
            if (F->kind() == FieldKind::Extension)
                throw std::domain_error("nested extension roots unsupported here");
            FieldPtr E = Field::extension_of_degree(F->p(), k * base_deg);
            // root of the factor inside E
            UniPoly fe(E);
            std::vector<FieldElement> fc;
            for (const auto& c : fac.coeffs()) fc.push_back(MultiPoly::convert_coeff(c, E));
            fe = UniPoly(E, fc);
            auto roots = uni_roots(fe, rng);
            if (roots.empty()) throw std::logic_error("irreducible factor has no root in its splitting field");
            out.push_back({E, roots[0], E->one()});
        }
    }
    return out;
}

} // namespace detail

// Smoothness certificate for a plane projective curve over a finite prime
// field: the three partials have no common projective zero.  Candidate
// (y:z) values come from resultants eliminating x; each candidate is then
// checked over its splitting field.  Returns a witness when singular.
inline std::optional<SingularWitness> plane_curve_singularity(const MultiPoly& curve, SplitMix64& rng) {
    const FieldPtr& F = curve.field();
    if (!F->finite()) throw std::domain_error("finite field required");
    if (curve.arity() != 3) throw std::invalid_argument("plane curve must be trivariate");
    std::vector<MultiPoly> parts{curve.derivative(0), curve.derivative(1), curve.derivative(2)};
    for (const auto& p : parts)
        if (p.is_zero())
            return SingularWitness{"a partial derivative vanishes identically"};

    // the one point not covered by (y:z) candidates
    std::vector<FieldElement> e0{F->one(), F->zero(), F->zero()};
    if (parts[0].evaluate(e0).is_zero() && parts[1].evaluate(e0).is_zero() && parts[2].evaluate(e0).is_zero())
        return SingularWitness{"singular at (1:0:0)"};

    // candidate constraint in (y,z)
    std::optional<MultiPoly> candidate;
    auto meet = [&](const MultiPoly& c) {
        if (c.is_zero()) return;
        if (!candidate) candidate = c;
        else *candidate = binary_form_gcd(*candidate, c, 1, 2);
    };
    std::vector<const MultiPoly*> with_x, without_x;
    for (const auto& p : parts)
        (p.degree_in(0) > 0 ? with_x : without_x).push_back(&p);
    for (const auto* p : without_x) meet(*p);
    for (std::size_t i = 0; i < with_x.size(); ++i)
        for (std::size_t j = i + 1; j < with_x.size(); ++j)
            meet(resultant_uni(*with_x[i], *with_x[j], 0));
    if (!candidate)
        return SingularWitness{"no usable elimination constraint (degenerate input)"};
    if (candidate->is_constant())
        return std::nullopt; // no candidate (y:z), hence smooth

    for (const auto& root : detail::binary_form_points(*candidate, 1, 2, rng)) {
        const FieldPtr& E = root.field;
        MultiPoly X = MultiPoly::variable(E, 1, 0);
        MultiPoly S = MultiPoly::constant(E, 1, root.s);
        MultiPoly T = MultiPoly::constant(E, 1, root.t);
        UniPoly common;
        bool first = true;
        bool all_zero = true;
        for (const auto& p : parts) {
            MultiPoly restricted = p.embedded(E).substitute({X, S, T});
            UniPoly u = UniPoly::from_multipoly(restricted, 0);
            if (!u.is_zero()) all_zero = false;
            if (first) { common = u; first = false; }
            else common = u.is_zero() ? common : (common.is_zero() ? u : UniPoly::gcd(common, u));
        }
        if (all_zero || common.degree() > 0)
            return SingularWitness{"common partial zero above (y:z) candidate"};
    }
    return std::nullopt;
}

inline bool plane_curve_smooth(const MultiPoly& curve, SplitMix64& rng) {
    return !plane_curve_singularity(curve, rng).has_value();
}

} // namespace fano10
