#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fano10/field.hpp"

namespace fano10 {

using Exponents = std::vector<unsigned>;

inline unsigned exp_total(const Exponents& e) {
    unsigned t = 0;
    for (unsigned v : e) t += v;
    return t;
}

// graded lexicographic order
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned ta = exp_total(a), tb = exp_total(b);
        if (ta != tb) return ta < tb;
        return a < b;
    }
};

// Sparse multivariate polynomial with exact coefficients.  Terms are kept
// sorted in descending grlex order with no zero coefficients and at most one
// term per exponent vector.  An optional homogeneity certificate records the
// common total degree when known; it is propagated through operations that
// preserve it.
class MultiPoly {
public:
    using Term = std::pair<Exponents, FieldElement>;

    MultiPoly() = default;

    static MultiPoly zero(FieldPtr f, unsigned arity) {
        MultiPoly p;
        p.field_ = std::move(f);
        p.arity_ = arity;
        return p;
    }

    static MultiPoly constant(FieldPtr f, unsigned arity, const FieldElement& c) {
        MultiPoly p = zero(std::move(f), arity);
        if (!c.is_zero()) p.terms_.emplace_back(Exponents(arity, 0), c);
        p.homog_ = 0;
        if (c.is_zero()) p.homog_.reset();
        return p;
    }

    static MultiPoly variable(FieldPtr f, unsigned arity, unsigned idx) {
        if (idx >= arity) throw std::invalid_argument("variable index out of range");
        MultiPoly p = zero(f, arity);
        Exponents e(arity, 0);
        e[idx] = 1;
        p.terms_.emplace_back(std::move(e), f->one());
        p.homog_ = 1;
        return p;
    }

    static MultiPoly from_terms(FieldPtr f, unsigned arity, std::vector<Term> terms) {
        std::map<Exponents, FieldElement, GrlexLess> acc;
        for (auto& [e, c] : terms) {
            if (e.size() != arity) throw std::invalid_argument("exponent arity mismatch");
            auto it = acc.find(e);
            if (it == acc.end()) acc.emplace(e, c);
            else it->second = it->second + c;
        }
        MultiPoly p = zero(std::move(f), arity);
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (!it->second.is_zero()) p.terms_.emplace_back(it->first, it->second);
        p.recertify();
        return p;
    }

    const FieldPtr& field() const { return field_; }
    unsigned arity() const { return arity_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<unsigned> homogeneous_degree() const { return homog_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && exp_total(terms_[0].first) == 0);
    }

    FieldElement constant_value() const {
        if (terms_.empty()) return field_->zero();
        return terms_[0].second;
    }

    unsigned total_degree() const {
        // zero polynomial reports 0
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, exp_total(e));
        return d;
    }

    unsigned degree_in(unsigned var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero");
        return terms_.front();
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
                return false;
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly r = zero(a.field_, a.arity_);
        GrlexLess less;
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && less(b.terms_[j].first, a.terms_[i].first))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || less(a.terms_[i].first, b.terms_[j].first)) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                FieldElement c = a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(a.terms_[i].first, c);
                ++i; ++j;
            }
        }
        if (!r.is_zero()) {
            if (a.is_zero()) r.homog_ = b.homog_;
            else if (b.is_zero()) r.homog_ = a.homog_;
            else if (a.homog_ && b.homog_ && *a.homog_ == *b.homog_) r.homog_ = a.homog_;
        }
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        std::map<Exponents, FieldElement, GrlexLess> acc;
        Exponents e(a.arity_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (unsigned k = 0; k < a.arity_; ++k) e[k] = ea[k] + eb[k];
                FieldElement c = ca * cb;
                auto it = acc.find(e);
                if (it == acc.end()) acc.emplace(e, c);
                else it->second = it->second + c;
            }
        }
        MultiPoly r = zero(a.field_, a.arity_);
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (!it->second.is_zero()) r.terms_.emplace_back(it->first, it->second);
        if (a.homog_ && b.homog_ && !r.is_zero()) r.homog_ = *a.homog_ + *b.homog_;
        return r;
    }

    MultiPoly scaled(const FieldElement& c) const {
        if (c.is_zero()) return zero(field_, arity_);
        MultiPoly r = *this;
        for (auto& [e, coeff] : r.terms_) coeff = coeff * c;
        return r;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly acc = constant(field_, arity_, field_->one());
        MultiPoly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            if (e >>= 1) base = base * base;
        }
        return acc;
    }

    FieldElement evaluate(const std::vector<FieldElement>& point) const {
        if (point.size() != arity_) throw std::invalid_argument("evaluation point arity mismatch");
        FieldElement acc = field_->zero();
        for (const auto& [e, c] : terms_) {
            FieldElement m = c;
            for (unsigned k = 0; k < arity_; ++k)
                if (e[k]) m = m * point[k].pow(static_cast<unsigned long>(e[k]));
            acc = acc + m;
        }
        return acc;
    }

    // full substitution x_i -> subs[i]; all subs share arity and field
    MultiPoly substitute(const std::vector<MultiPoly>& subs) const {
        if (subs.size() != arity_) throw std::invalid_argument("substitution arity mismatch");
        unsigned out_arity = subs.empty() ? 0 : subs[0].arity_;
        FieldPtr out_field = subs.empty() ? field_ : subs[0].field_;
        // cache powers of each substituted polynomial
        std::vector<std::vector<MultiPoly>> powers(arity_);
        for (unsigned k = 0; k < arity_; ++k)
            powers[k].push_back(constant(out_field, out_arity, out_field->one()));
        MultiPoly acc = zero(out_field, out_arity);
        for (const auto& [e, c] : terms_) {
            MultiPoly m = constant(out_field, out_arity, convert_coeff(c, out_field));
            for (unsigned k = 0; k < arity_; ++k) {
                while (powers[k].size() <= e[k])
                    powers[k].push_back(powers[k].back() * subs[k]);
                if (e[k]) m = m * powers[k][e[k]];
            }
            acc = acc + m;
        }
        return acc;
    }

    MultiPoly derivative(unsigned var) const {
        if (var >= arity_) throw std::invalid_argument("variable index out of range");
        std::vector<Term> out;
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents ne = e;
            ne[var] -= 1;
            out.emplace_back(std::move(ne), c * field_->from_int(static_cast<long>(e[var])));
        }
        return from_terms(field_, arity_, std::move(out));
    }

    // coefficient of var^k as a polynomial in the same arity (var suppressed to 0)
    MultiPoly coeff_of(unsigned var, unsigned k) const {
        std::vector<Term> out;
        for (const auto& [e, c] : terms_) {
            if (e[var] != k) continue;
            Exponents ne = e;
            ne[var] = 0;
            out.emplace_back(std::move(ne), c);
        }
        return from_terms(field_, arity_, std::move(out));
    }

    // exact multivariate trial division; nullopt if b does not divide *this
    std::optional<MultiPoly> divide_exact(const MultiPoly& b) const {
        check_compatible(b);
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        MultiPoly rem = *this;
        MultiPoly quot = zero(field_, arity_);
        const Exponents& lb = b.terms_.front().first;
        const FieldElement& cb = b.terms_.front().second;
        FieldElement cb_inv = cb.inv();
        while (!rem.is_zero()) {
            const Exponents& lr = rem.terms_.front().first;
            Exponents q(arity_);
            for (unsigned k = 0; k < arity_; ++k) {
                if (lr[k] < lb[k]) return std::nullopt;
                q[k] = lr[k] - lb[k];
            }
            FieldElement qc = rem.terms_.front().second * cb_inv;
            MultiPoly qt = zero(field_, arity_);
            qt.terms_.emplace_back(q, qc);
            quot = quot + qt;
            rem = rem - qt * b;
        }
        quot.recertify();
        return quot;
    }

    bool divides(const MultiPoly& dividend) const { return dividend.divide_exact(*this).has_value(); }

    // insert a fresh variable at position pos and homogenize to degree d
    MultiPoly homogenized(unsigned pos, unsigned d) const {
        if (total_degree() > d) throw std::invalid_argument("homogenization degree too small");
        std::vector<Term> out;
        for (const auto& [e, c] : terms_) {
            Exponents ne;
            ne.reserve(arity_ + 1);
            unsigned t = exp_total(e);
            for (unsigned k = 0; k <= arity_; ++k) {
                if (k == pos) ne.push_back(d - t);
                if (k < arity_) ne.push_back(e[k]);
            }
            out.emplace_back(std::move(ne), c);
        }
        MultiPoly r = from_terms(field_, arity_ + 1, std::move(out));
        return r;
    }

    // set variable var to 1 and drop it
    MultiPoly dehomogenized(unsigned var) const {
        std::vector<Term> out;
        for (const auto& [e, c] : terms_) {
            Exponents ne;
            ne.reserve(arity_ - 1);
            for (unsigned k = 0; k < arity_; ++k)
                if (k != var) ne.push_back(e[k]);
            out.emplace_back(std::move(ne), c);
        }
        return from_terms(field_, arity_ - 1, std::move(out));
    }

    // coefficient embedding into a field of the same characteristic (or from Q)
    MultiPoly embedded(const FieldPtr& target) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_)
            out.emplace_back(e, convert_coeff(c, target));
        return from_terms(target, arity_, std::move(out));
    }

    // divide by the leading coefficient
    MultiPoly monic() const {
        if (is_zero()) return *this;
        return scaled(terms_.front().second.inv());
    }

    // true when a and b agree up to a nonzero scalar
    static bool proportional(const MultiPoly& a, const MultiPoly& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        if (a.terms_.size() != b.terms_.size()) return false;
        FieldElement ratio = a.terms_.front().second / b.terms_.front().second;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].first != b.terms_[i].first) return false;
            if (a.terms_[i].second != b.terms_[i].second * ratio) return false;
        }
        return true;
    }

    static FieldElement convert_coeff(const FieldElement& c, const FieldPtr& target) {
        if (c.field()->same(*target)) return c;
        if (c.field()->kind() == FieldKind::Rational)
            return target->from_rational(c.rational_value());
        if (c.field()->kind() == FieldKind::Prime && target->kind() == FieldKind::Extension &&
            c.field()->p() == target->p())
            return target->from_int(static_cast<long>(c.prime_value()));
        throw std::invalid_argument("no coefficient embedding between these fields");
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.to_string() << ")";
            for (unsigned k = 0; k < arity_; ++k) {
                if (!e[k]) continue;
                os << "*";
                if (k < names.size()) os << names[k];
                else os << "x" << k;
                if (e[k] > 1) os << "^" << e[k];
            }
        }
        return os.str();
    }

private:
    void check_compatible(const MultiPoly& b) const {
        if (arity_ != b.arity_) throw std::invalid_argument("polynomial arity mismatch");
        if (!field_->same(*b.field_)) throw std::invalid_argument("field mismatch");
    }

    void recertify() {
        homog_.reset();
        if (terms_.empty()) return;
        unsigned d = exp_total(terms_.front().first);
        for (const auto& [e, c] : terms_)
            if (exp_total(e) != d) return;
        homog_ = d;
    }

    FieldPtr field_;
    unsigned arity_ = 0;
    std::vector<Term> terms_;
    std::optional<unsigned> homog_;
};

} // namespace fano10
