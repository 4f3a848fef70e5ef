#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "fano10/rng.hpp"

namespace fano10 {

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

// Dense polynomial helpers over Z/p, used for extension-field moduli.
// Coefficient vectors are low-degree-first with no trailing zeros.
using ZpPoly = std::vector<std::uint64_t>;

inline std::uint64_t zp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a * b) % p; // p < 2^31, so no overflow
}

inline std::uint64_t zp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = zp_mul(r, a, p);
        a = zp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t zp_inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("inverse of zero");
    // extended Euclid
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

inline void zp_trim(ZpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ZpPoly zp_poly_mul(const ZpPoly& a, const ZpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    zp_trim(c);
    return c;
}

// remainder of a modulo monic f
inline ZpPoly zp_poly_mod(ZpPoly a, const ZpPoly& f, std::uint64_t p) {
    zp_trim(a);
    std::size_t df = f.size() - 1;
    while (a.size() > df) {
        std::uint64_t lead = a.back();
        std::size_t shift = a.size() - 1 - df;
        if (lead) {
            for (std::size_t i = 0; i < df; ++i)
                a[shift + i] = (a[shift + i] + p * p - lead * f[i] % p) % p;
        }
        a.pop_back();
        zp_trim(a);
        if (a.size() <= df) break;
    }
    return a;
}

inline ZpPoly zp_poly_gcd(ZpPoly a, ZpPoly b, std::uint64_t p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        // make b monic for the mod step
        std::uint64_t inv = zp_inv(b.back(), p);
        ZpPoly bm = b;
        for (auto& c : bm) c = zp_mul(c, inv, p);
        ZpPoly r = zp_poly_mod(a, bm, p);
        a = b;
        b = r;
    }
    return a;
}

inline ZpPoly zp_poly_powmod_x(std::uint64_t e_base, unsigned e_exp, const ZpPoly& f, std::uint64_t p) {
    // computes x^(e_base^e_exp) mod f via repeated e_base-th powers
    ZpPoly r = {0, 1};
    r = zp_poly_mod(r, f, p);
    for (unsigned step = 0; step < e_exp; ++step) {
        // r <- r^e_base mod f
        ZpPoly acc = {1};
        ZpPoly base = r;
        std::uint64_t e = e_base;
        while (e) {
            if (e & 1) acc = zp_poly_mod(zp_poly_mul(acc, base, p), f, p);
            base = zp_poly_mod(zp_poly_mul(base, base, p), f, p);
            e >>= 1;
        }
        r = acc;
    }
    return r;
}

// Rabin irreducibility test for a monic degree-k polynomial over GF(p).
inline bool zp_poly_irreducible(const ZpPoly& f, std::uint64_t p) {
    std::size_t k = f.size() - 1;
    if (k == 0) return false;
    // x^(p^k) == x mod f
    ZpPoly xpk = zp_poly_powmod_x(p, static_cast<unsigned>(k), f, p);
    ZpPoly x = zp_poly_mod({0, 1}, f, p);
    if (xpk != x) return false;
    // for each prime divisor l of k: gcd(x^(p^(k/l)) - x, f) == 1
    std::vector<std::size_t> prime_divs;
    std::size_t m = k;
    for (std::size_t l = 2; l * l <= m; ++l) {
        if (m % l) continue;
        prime_divs.push_back(l);
        while (m % l == 0) m /= l;
    }
    if (m > 1) prime_divs.push_back(m);
    for (std::size_t l : prime_divs) {
        ZpPoly g = zp_poly_powmod_x(p, static_cast<unsigned>(k / l), f, p);
        // g - x
        ZpPoly d = g;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        zp_trim(d);
        ZpPoly gg = zp_poly_gcd(f, d, p);
        if (gg.size() != 1) return false;
    }
    return true;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % d == 0) return n == d;
    }
    // deterministic Miller-Rabin for 64-bit with the standard witness set
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

enum class FieldKind { Rational, Prime, Extension };

// Shared coefficient-field context.  Elements hold a pointer to their field;
// mixing elements of different fields is an error.  Characteristics 2 and 3
// are rejected: Gram symmetrization divides by 2 and the orbit equations
// involve small integer coefficients, so tiny characteristics break the
// setup.  Auxiliary exhaustive certificates run over GF(5) and GF(101);
// the command-line front end enforces the stricter working bound p > 13 on
// user-selected fields.
class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr rationals() {
        return FieldPtr(new Field(FieldKind::Rational, 0, {}));
    }

    static FieldPtr prime(std::uint64_t p) {
        check_prime(p);
        return FieldPtr(new Field(FieldKind::Prime, p, {}));
    }

    // GF(p^k) with an explicit monic irreducible modulus (low-degree-first,
    // length k+1).  Irreducibility is checked here, once.
    static FieldPtr extension(std::uint64_t p, const std::vector<std::uint64_t>& modulus) {
        check_prime(p);
        if (modulus.size() < 3) throw std::invalid_argument("extension modulus must have degree >= 2");
        if (modulus.back() % p != 1) throw std::invalid_argument("extension modulus must be monic");
        std::vector<std::uint64_t> m = modulus;
        for (auto& c : m) c %= p;
        if (!detail::zp_poly_irreducible(m, p))
            throw std::invalid_argument("extension modulus is reducible");
        return FieldPtr(new Field(FieldKind::Extension, p, m));
    }

    // GF(p^k) with a deterministically searched irreducible modulus.
    static FieldPtr extension_of_degree(std::uint64_t p, unsigned k, std::uint64_t seed = 0x5eedULL) {
        check_prime(p);
        if (k < 2) throw std::invalid_argument("extension degree must be >= 2");
        SplitMix64 rng(seed ^ (p * 0x100000001b3ULL) ^ k);
        for (int tries = 0; tries < 10000; ++tries) {
            std::vector<std::uint64_t> m(k + 1);
            for (unsigned i = 0; i < k; ++i) m[i] = rng.below(p);
            m[k] = 1;
            if (detail::zp_poly_irreducible(m, p))
                return FieldPtr(new Field(FieldKind::Extension, p, m));
        }
        throw std::runtime_error("no irreducible modulus found");
    }

    FieldKind kind() const { return kind_; }
    std::uint64_t characteristic() const { return kind_ == FieldKind::Rational ? 0 : p_; }
    std::uint64_t p() const { return p_; }
    unsigned degree() const { return kind_ == FieldKind::Extension ? static_cast<unsigned>(modulus_.size() - 1) : 1; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    bool finite() const { return kind_ != FieldKind::Rational; }

    // field cardinality, for finite fields
    mpz_class order() const {
        if (!finite()) throw std::domain_error("infinite field");
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p_), degree());
        return q;
    }

    bool same(const Field& other) const {
        return kind_ == other.kind_ && p_ == other.p_ && modulus_ == other.modulus_;
    }

    std::string describe() const {
        switch (kind_) {
        case FieldKind::Rational: return "Q";
        case FieldKind::Prime: return "GF(" + std::to_string(p_) + ")";
        default: {
            std::ostringstream os;
            os << "GF(" << p_ << "^" << degree() << "; mod=";
            for (std::size_t i = 0; i < modulus_.size(); ++i) {
                if (i) os << ",";
                os << modulus_[i];
            }
            os << ")";
            return os.str();
        }
        }
    }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long v) const;
    FieldElement from_rational(const mpq_class& v) const;
    // generator x of GF(p^k) as an element
    FieldElement ext_generator() const;
    FieldElement random(SplitMix64& rng) const;
    FieldElement parse(const std::string& text) const;

private:
    Field(FieldKind k, std::uint64_t p, std::vector<std::uint64_t> modulus)
        : kind_(k), p_(p), modulus_(std::move(modulus)) {}

    static void check_prime(std::uint64_t p) {
        if (p <= 3) throw std::invalid_argument("field characteristic must exceed 3");
        if (p >= (1ULL << 31)) throw std::invalid_argument("prime too large");
        if (!detail::is_prime_u64(p)) throw std::invalid_argument("modulus is not prime");
    }

    FieldKind kind_;
    std::uint64_t p_;
    std::vector<std::uint64_t> modulus_;
};

class FieldElement {
public:
    FieldElement() = default;

    const FieldPtr& field() const { return field_; }

    bool is_zero() const {
        switch (field_->kind()) {
        case FieldKind::Rational: return rat_ == 0;
        case FieldKind::Prime: return val_ == 0;
        default:
            for (auto c : ext_) if (c) return false;
            return true;
        }
    }

    bool is_one() const { return *this == field_->one(); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        switch (a.field_->kind()) {
        case FieldKind::Rational: return a.rat_ == b.rat_;
        case FieldKind::Prime: return a.val_ == b.val_;
        default: return a.ext_ == b.ext_;
        }
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    // total order used only for canonical sorting/serialization
    bool less(const FieldElement& b) const {
        check_same(b);
        switch (field_->kind()) {
        case FieldKind::Rational: return rat_ < b.rat_;
        case FieldKind::Prime: return val_ < b.val_;
        default: return ext_ < b.ext_;
        }
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        FieldElement r(a.field_);
        switch (a.field_->kind()) {
        case FieldKind::Rational: r.rat_ = a.rat_ + b.rat_; break;
        case FieldKind::Prime: r.val_ = (a.val_ + b.val_) % a.p(); break;
        default:
            r.ext_ = a.ext_;
            for (std::size_t i = 0; i < r.ext_.size(); ++i)
                r.ext_[i] = (r.ext_[i] + b.ext_[i]) % a.p();
        }
        return r;
    }

    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

    FieldElement operator-() const {
        FieldElement r(field_);
        switch (field_->kind()) {
        case FieldKind::Rational: r.rat_ = -rat_; break;
        case FieldKind::Prime: r.val_ = (p() - val_) % p(); break;
        default:
            r.ext_ = ext_;
            for (auto& c : r.ext_) c = (p() - c) % p();
        }
        return r;
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        FieldElement r(a.field_);
        switch (a.field_->kind()) {
        case FieldKind::Rational: r.rat_ = a.rat_ * b.rat_; r.rat_.canonicalize(); break;
        case FieldKind::Prime: r.val_ = detail::zp_mul(a.val_, b.val_, a.p()); break;
        default: {
            const auto& m = a.field_->modulus();
            detail::ZpPoly prod = detail::zp_poly_mul(a.ext_, b.ext_, a.p());
            prod = detail::zp_poly_mod(prod, m, a.p());
            prod.resize(m.size() - 1, 0);
            r.ext_ = prod;
        }
        }
        return r;
    }

    FieldElement inv() const {
        if (is_zero()) throw std::domain_error("division by zero");
        FieldElement r(field_);
        switch (field_->kind()) {
        case FieldKind::Rational: r.rat_ = 1 / rat_; break;
        case FieldKind::Prime: r.val_ = detail::zp_inv(val_, p()); break;
        default: {
            // extended Euclid in GF(p)[x] against the modulus
            const auto& m = field_->modulus();
            std::uint64_t p = this->p();
            detail::ZpPoly r0 = m, r1 = ext_;
            detail::zp_trim(r1);
            detail::ZpPoly t0 = {}, t1 = {1};
            while (!r1.empty()) {
                // divide r0 by r1
                detail::ZpPoly q;
                detail::ZpPoly rem = r0;
                std::uint64_t lead_inv = detail::zp_inv(r1.back(), p);
                if (rem.size() >= r1.size()) q.resize(rem.size() - r1.size() + 1, 0);
                while (rem.size() >= r1.size() && !rem.empty()) {
                    std::uint64_t c = detail::zp_mul(rem.back(), lead_inv, p);
                    std::size_t shift = rem.size() - r1.size();
                    q[shift] = c;
                    for (std::size_t i = 0; i < r1.size(); ++i)
                        rem[shift + i] = (rem[shift + i] + p * p - c * r1[i] % p) % p;
                    detail::zp_trim(rem);
                    if (rem.size() < r1.size()) break;
                }
                detail::zp_trim(q);
                // (r0,r1) <- (r1, rem); (t0,t1) <- (t1, t0 - q t1)
                detail::ZpPoly qt = detail::zp_poly_mul(q, t1, p);
                detail::ZpPoly nt = t0;
                if (nt.size() < qt.size()) nt.resize(qt.size(), 0);
                for (std::size_t i = 0; i < qt.size(); ++i)
                    nt[i] = (nt[i] + p - qt[i]) % p;
                detail::zp_trim(nt);
                t0 = t1; t1 = nt;
                r0 = r1; r1 = rem;
            }
            // r0 = gcd, a unit since modulus is irreducible and *this != 0
            std::uint64_t u = detail::zp_inv(r0.back(), p);
            for (auto& c : t0) c = detail::zp_mul(c, u, p);
            t0.resize(m.size() - 1, 0);
            r.ext_ = t0;
        }
        }
        return r;
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }

    FieldElement pow(const mpz_class& e) const {
        if (e < 0) return inv().pow(-e);
        FieldElement base = *this;
        FieldElement acc = field_->one();
        mpz_class n = e;
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }
    FieldElement pow(unsigned long e) const { return pow(mpz_class(e)); }

    // accessors used by serialization
    const mpq_class& rational_value() const { return rat_; }
    std::uint64_t prime_value() const { return val_; }
    const std::vector<std::uint64_t>& ext_coeffs() const { return ext_; }

    std::string to_string() const {
        std::ostringstream os;
        switch (field_->kind()) {
        case FieldKind::Rational:
            os << rat_;
            break;
        case FieldKind::Prime:
            os << val_ << " mod " << p();
            break;
        default: {
            for (std::size_t i = 0; i < ext_.size(); ++i) {
                if (i) os << ",";
                os << ext_[i];
            }
            os << " mod " << p() << "^" << field_->degree();
        }
        }
        return os.str();
    }

private:
    friend class Field;

    explicit FieldElement(FieldPtr f) : field_(std::move(f)) {
        if (field_->kind() == FieldKind::Extension)
            ext_.assign(field_->degree(), 0);
    }

    void check_same(const FieldElement& b) const {
        if (field_.get() == b.field_.get()) return;
        if (!field_ || !b.field_ || !field_->same(*b.field_))
            throw std::invalid_argument("field mismatch");
    }

    std::uint64_t p() const { return field_->p(); }

    FieldPtr field_;
    mpq_class rat_;
    std::uint64_t val_ = 0;
    std::vector<std::uint64_t> ext_;
};

inline FieldElement Field::zero() const { return FieldElement(shared_from_this()); }

inline FieldElement Field::one() const { return from_int(1); }

inline FieldElement Field::from_int(long v) const {
    FieldElement r(shared_from_this());
    switch (kind_) {
    case FieldKind::Rational: r.rat_ = v; break;
    case FieldKind::Prime: {
        long m = v % static_cast<long>(p_);
        if (m < 0) m += static_cast<long>(p_);
        r.val_ = static_cast<std::uint64_t>(m);
        break;
    }
    default: {
        long m = v % static_cast<long>(p_);
        if (m < 0) m += static_cast<long>(p_);
        r.ext_[0] = static_cast<std::uint64_t>(m);
    }
    }
    return r;
}

inline FieldElement Field::from_rational(const mpq_class& v) const {
    FieldElement r(shared_from_this());
    switch (kind_) {
    case FieldKind::Rational:
        r.rat_ = v;
        r.rat_.canonicalize();
        break;
    default: {
        mpz_class num = v.get_num(), den = v.get_den();
        mpz_class pz(static_cast<unsigned long>(p_));
        mpz_class nm = num % pz, dm = den % pz;
        if (nm < 0) nm += pz;
        if (dm < 0) dm += pz;
        if (dm == 0) throw std::domain_error("denominator divisible by characteristic");
        std::uint64_t n = nm.get_ui();
        std::uint64_t d = dm.get_ui();
        std::uint64_t val = detail::zp_mul(n, detail::zp_inv(d, p_), p_);
        if (kind_ == FieldKind::Prime) r.val_ = val;
        else r.ext_[0] = val;
    }
    }
    return r;
}

inline FieldElement Field::ext_generator() const {
    if (kind_ != FieldKind::Extension) throw std::domain_error("not an extension field");
    FieldElement r(shared_from_this());
    r.ext_[1] = 1;
    return r;
}

inline FieldElement Field::random(SplitMix64& rng) const {
    FieldElement r(shared_from_this());
    switch (kind_) {
    case FieldKind::Rational:
        r.rat_ = mpq_class(static_cast<long>(rng.below(201)) - 100);
        break;
    case FieldKind::Prime:
        r.val_ = rng.below(p_);
        break;
    default:
        for (auto& c : r.ext_) c = rng.below(p_);
    }
    return r;
}

inline FieldElement Field::parse(const std::string& text) const {
    // accepts the to_string() forms plus bare integers/fractions
    std::string body = text;
    auto mod_pos = body.find(" mod ");
    if (mod_pos != std::string::npos) body = body.substr(0, mod_pos);
    FieldElement r(shared_from_this());
    switch (kind_) {
    case FieldKind::Rational: {
        r.rat_ = mpq_class(body);
        r.rat_.canonicalize();
        break;
    }
    case FieldKind::Prime: {
        if (body.find('/') != std::string::npos) return from_rational(mpq_class(body));
        mpz_class v(body);
        mpz_class pz(static_cast<unsigned long>(p_));
        v %= pz;
        if (v < 0) v += pz;
        r.val_ = v.get_ui();
        break;
    }
    default: {
        std::vector<std::uint64_t> coeffs;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ','))
            coeffs.push_back(std::stoull(item) % p_);
        if (coeffs.size() > degree()) throw std::invalid_argument("too many extension coefficients");
        coeffs.resize(degree(), 0);
        r.ext_ = coeffs;
    }
    }
    return r;
}

} // namespace fano10
