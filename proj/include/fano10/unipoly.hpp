#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fano10/poly.hpp"

namespace fano10 {

// Dense univariate polynomial, low-degree-first, no trailing zeros.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(FieldPtr f) : field_(std::move(f)) {}
    UniPoly(FieldPtr f, std::vector<FieldElement> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

    static UniPoly zero(FieldPtr f) { return UniPoly(std::move(f)); }
    static UniPoly constant(FieldPtr f, const FieldElement& v) {
        UniPoly p(f);
        if (!v.is_zero()) p.c_.push_back(v);
        return p;
    }
    static UniPoly x(FieldPtr f) {
        UniPoly p(f);
        p.c_ = {f->zero(), f->one()};
        return p;
    }

    // extract a univariate polynomial in `var` from a MultiPoly that uses no
    // other variable
    static UniPoly from_multipoly(const MultiPoly& m, unsigned var) {
        UniPoly p(m.field());
        for (const auto& [e, c] : m.terms()) {
            for (unsigned k = 0; k < m.arity(); ++k)
                if (k != var && e[k])
                    throw std::invalid_argument("polynomial is not univariate in the requested variable");
            if (p.c_.size() <= e[var]) p.c_.resize(e[var] + 1, m.field()->zero());
            p.c_[e[var]] = c;
        }
        p.trim();
        return p;
    }

    MultiPoly to_multipoly(unsigned arity, unsigned var) const {
        std::vector<MultiPoly::Term> terms;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            Exponents e(arity, 0);
            e[var] = static_cast<unsigned>(i);
            terms.emplace_back(std::move(e), c_[i]);
        }
        return MultiPoly::from_terms(field_, arity, std::move(terms));
    }

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_->zero(); }
    const FieldElement& lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero");
        return c_.back();
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        UniPoly r(a.field_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.field_->zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = a.coeff(i) + b.coeff(i);
        r.trim();
        return r;
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
        UniPoly r(a.field_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.field_->zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }

    UniPoly scaled(const FieldElement& s) const {
        UniPoly r = *this;
        for (auto& v : r.c_) v = v * s;
        r.trim();
        return r;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(lc().inv());
    }

    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        UniPoly q(field_), r = *this;
        if (r.c_.size() >= d.c_.size())
            q.c_.assign(r.c_.size() - d.c_.size() + 1, field_->zero());
        FieldElement inv = d.lc().inv();
        while (!r.is_zero() && r.c_.size() >= d.c_.size()) {
            std::size_t shift = r.c_.size() - d.c_.size();
            FieldElement f = r.c_.back() * inv;
            q.c_[shift] = f;
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                r.c_[shift + i] = r.c_[shift + i] - f * d.c_[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    UniPoly mod(const UniPoly& d) const { return divmod(d).second; }

    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a.mod(b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    UniPoly derivative() const {
        UniPoly r(field_);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_.push_back(c_[i] * field_->from_int(static_cast<long>(i)));
        r.trim();
        return r;
    }

    FieldElement evaluate(const FieldElement& x) const {
        FieldElement acc = field_->zero();
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    UniPoly powmod(mpz_class e, const UniPoly& m) const {
        UniPoly base = mod(m);
        UniPoly acc = constant(field_, field_->one());
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) acc = (acc * base).mod(m);
            base = (base * base).mod(m);
            e >>= 1;
        }
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldPtr field_;
    std::vector<FieldElement> c_;
};

using UniFactor = std::pair<UniPoly, unsigned>; // monic irreducible, multiplicity

namespace detail {

// squarefree decomposition over a finite field whose characteristic exceeds
// the degrees in play (enforced upstream: p > 13 and all degrees <= 12)
inline std::vector<UniFactor> squarefree_decompose(UniPoly f) {
    std::vector<UniFactor> out;
    f = f.monic();
    unsigned mult = 1;
    while (f.degree() > 0) {
        UniPoly d = f.derivative();
        if (d.is_zero())
            throw std::domain_error("vanishing derivative: degree >= characteristic is unsupported");
        UniPoly g = UniPoly::gcd(f, d);           // product of repeated parts
        UniPoly sq = f.divmod(g).first;            // squarefree part
        // factors appearing at exactly this multiplicity
        UniPoly next = UniPoly::gcd(sq, g);
        UniPoly exact = sq.divmod(next).first;
        if (exact.degree() > 0) out.emplace_back(exact.monic(), mult);
        f = g;
        ++mult;
    }
    return out;
}

inline std::vector<UniPoly> distinct_degree(UniPoly f, std::vector<unsigned>& degrees) {
    // f monic squarefree; returns products of irreducibles grouped by degree
    std::vector<UniPoly> out;
    const FieldPtr& F = f.field();
    mpz_class q = F->order();
    UniPoly h = UniPoly::x(F);
    unsigned d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * static_cast<int>(d) > f.degree()) {
            out.push_back(f);
            degrees.push_back(static_cast<unsigned>(f.degree()));
            break;
        }
        h = h.powmod(q, f);
        UniPoly g = UniPoly::gcd(h - UniPoly::x(F), f);
        if (g.degree() > 0) {
            out.push_back(g);
            degrees.push_back(d);
            f = f.divmod(g).first;
            h = h.mod(f);
        }
    }
    return out;
}

// Cantor-Zassenhaus equal-degree splitting for odd q
inline void equal_degree(const UniPoly& f, unsigned d, SplitMix64& rng, std::vector<UniPoly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    const FieldPtr& F = f.field();
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), F->order().get_mpz_t(), d);
    mpz_class e = (qd - 1) / 2;
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<FieldElement> coeffs;
        for (int i = 0; i < f.degree(); ++i) coeffs.push_back(F->random(rng));
        UniPoly a(F, std::move(coeffs));
        if (a.is_zero()) continue;
        UniPoly g = UniPoly::gcd(a, f);
        if (g.degree() == 0) {
            UniPoly b = a.powmod(e, f) - UniPoly::constant(F, F->one());
            g = UniPoly::gcd(b, f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f.divmod(g).first, d, rng, out);
            return;
        }
    }
}

} // namespace detail

// Full factorization over GF(p) or GF(p^k): squarefree decomposition, then
// distinct-degree and Cantor-Zassenhaus equal-degree splitting.  The product
// of the factors with multiplicities reproduces the input up to its leading
// coefficient.
inline std::vector<UniFactor> uni_factor(const UniPoly& f, SplitMix64& rng) {
    if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    if (!f.field()->finite()) throw std::domain_error("finite field required");
    std::vector<UniFactor> out;
    if (f.degree() < 1) return out;
    for (const auto& [sq, mult] : detail::squarefree_decompose(f)) {
        std::vector<unsigned> degrees;
        std::vector<UniPoly> groups = detail::distinct_degree(sq, degrees);
        for (std::size_t i = 0; i < groups.size(); ++i) {
            std::vector<UniPoly> irreds;
            detail::equal_degree(groups[i], degrees[i], rng, irreds);
            std::sort(irreds.begin(), irreds.end(), [](const UniPoly& a, const UniPoly& b) {
                if (a.degree() != b.degree()) return a.degree() < b.degree();
                for (int k = a.degree(); k >= 0; --k) {
                    const FieldElement &ca = a.coeffs()[k], &cb = b.coeffs()[k];
                    if (ca != cb) return ca.less(cb);
                }
                return false;
            });
            for (auto& g : irreds) out.emplace_back(std::move(g), mult);
        }
    }
    return out;
}

// spec entry point on MultiPoly values
inline std::vector<std::pair<MultiPoly, unsigned>> uni_factor(const MultiPoly& f, unsigned var, SplitMix64& rng) {
    auto factors = uni_factor(UniPoly::from_multipoly(f, var), rng);
    std::vector<std::pair<MultiPoly, unsigned>> out;
    for (auto& [g, m] : factors)
        out.emplace_back(g.to_multipoly(f.arity(), var), m);
    return out;
}

// roots in the coefficient field, repeated with multiplicity
inline std::vector<FieldElement> uni_roots(const UniPoly& f, SplitMix64& rng) {
    std::vector<FieldElement> roots;
    for (const auto& [g, mult] : uni_factor(f, rng)) {
        if (g.degree() != 1) continue;
        FieldElement r = -g.coeffs()[0];
        for (unsigned i = 0; i < mult; ++i) roots.push_back(r);
    }
    return roots;
}

// square root in a finite field, if one exists (via factorization of t^2 - a)
inline std::optional<FieldElement> field_sqrt(const FieldElement& a, SplitMix64& rng) {
    const FieldPtr& F = a.field();
    if (!F->finite()) throw std::domain_error("finite field required");
    if (a.is_zero()) return F->zero();
    UniPoly t2(F, {-a, F->zero(), F->one()});
    auto roots = uni_roots(t2, rng);
    if (roots.empty()) return std::nullopt;
    return roots[0];
}

// Projective roots (s:t) of a homogeneous binary form in variables (var_s, var_t).
// Returns one representative per root, repeated with multiplicity.
inline std::vector<std::pair<FieldElement, FieldElement>>
binary_form_roots(const MultiPoly& form, unsigned var_s, unsigned var_t, SplitMix64& rng) {
    const FieldPtr& F = form.field();
    if (form.is_zero()) throw std::invalid_argument("zero binary form");
    unsigned d = form.total_degree();
    std::vector<std::pair<FieldElement, FieldElement>> out;
    // dehomogenize at t = 1; a drop in degree means a root at (1:0)
    std::vector<MultiPoly::Term> terms;
    std::vector<FieldElement> coeffs(d + 1, F->zero());
    for (const auto& [e, c] : form.terms()) coeffs[e[var_s]] = c;
    UniPoly uni(F, coeffs);
    unsigned at_infinity = d - static_cast<unsigned>(uni.degree());
    for (unsigned i = 0; i < at_infinity; ++i) out.emplace_back(F->one(), F->zero());
    for (const auto& r : uni_roots(uni, rng)) out.emplace_back(r, F->one());
    return out;
}

} // namespace fano10
