#ifndef NCRK_BIPOLY_HPP
#define NCRK_BIPOLY_HPP

/*
 * Sparse bivariate polynomials R[X,Y] over an arbitrary commutative
 * coefficient ring R, plus formal fractions. Terms live in an ordered map
 * keyed by (deg_X, deg_Y) so iteration order is deterministic; zero
 * coefficients are never stored. Fractions are kept unreduced (R need not be
 * a domain); division is only permitted when the divisor is certified a
 * non-zerodivisor coefficient-wise.
 */

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ncrk {

template <class R>
struct BiPolyRing {
    using Coeff = typename R::Elem;
    using Key = std::pair<unsigned, unsigned>; // (deg_X, deg_Y)

    struct Elem {
        std::map<Key, Coeff> t;
    };

    static constexpr bool is_field = false;

    R coeff;

    BiPolyRing() = default;
    explicit BiPolyRing(const R& r) : coeff(r) {}

    Elem zero() const { return {}; }
    Elem one() const { return from_coeff(coeff.one()); }
    Elem from_coeff(const Coeff& c) const {
        Elem p;
        if (!coeff.is_zero(c)) p.t.emplace(Key{0, 0}, c);
        return p;
    }
    Elem monomial(unsigned dx, unsigned dy, const Coeff& c) const {
        Elem p;
        if (!coeff.is_zero(c)) p.t.emplace(Key{dx, dy}, c);
        return p;
    }
    Elem var_x() const { return monomial(1, 0, coeff.one()); }
    Elem var_y() const { return monomial(0, 1, coeff.one()); }

    bool is_zero(const Elem& a) const { return a.t.empty(); }
    bool equal(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }

    Elem add(const Elem& a, const Elem& b) const {
        Elem c = a;
        for (const auto& [k, v] : b.t) add_term(c, k, v);
        return c;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem c = a;
        for (const auto& [k, v] : b.t) add_term(c, k, coeff.neg(v));
        return c;
    }
    Elem neg(const Elem& a) const {
        Elem c;
        for (const auto& [k, v] : a.t) c.t.emplace(k, coeff.neg(v));
        return c;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem c;
        for (const auto& [ka, va] : a.t)
            for (const auto& [kb, vb] : b.t)
                add_term(c, Key{ka.first + kb.first, ka.second + kb.second}, coeff.mul(va, vb));
        return c;
    }
    Elem mul_coeff(const Elem& a, const Coeff& s) const {
        Elem c;
        if (coeff.is_zero(s)) return c;
        for (const auto& [k, v] : a.t) {
            Coeff w = coeff.mul(v, s);
            if (!coeff.is_zero(w)) c.t.emplace(k, w);
        }
        return c;
    }
    Elem div(const Elem&, const Elem&) const {
        fail(errc::unsupported_op, "polynomial ring has no division");
    }

    unsigned deg_x(const Elem& a) const {
        unsigned d = 0;
        for (const auto& [k, v] : a.t) d = std::max(d, k.first);
        return d;
    }
    unsigned deg_y(const Elem& a) const {
        unsigned d = 0;
        for (const auto& [k, v] : a.t) d = std::max(d, k.second);
        return d;
    }
    unsigned total_deg(const Elem& a) const {
        unsigned d = 0;
        for (const auto& [k, v] : a.t) d = std::max(d, k.first + k.second);
        return d;
    }

    bool is_constant(const Elem& a) const {
        return a.t.empty() || (a.t.size() == 1 && a.t.begin()->first == Key{0, 0});
    }
    Coeff constant_coeff(const Elem& a) const {
        auto it = a.t.find(Key{0, 0});
        return it == a.t.end() ? coeff.zero() : it->second;
    }

    Coeff eval(const Elem& a, const Coeff& x0, const Coeff& y0) const {
        std::vector<Coeff> xp{coeff.one()}, yp{coeff.one()};
        Coeff acc = coeff.zero();
        for (const auto& [k, v] : a.t) {
            while (xp.size() <= k.first) xp.push_back(coeff.mul(xp.back(), x0));
            while (yp.size() <= k.second) yp.push_back(coeff.mul(yp.back(), y0));
            acc = coeff.add(acc, coeff.mul(v, coeff.mul(xp[k.first], yp[k.second])));
        }
        return acc;
    }

    // Non-zerodivisor test. Over a field coefficient ring a nonzero polynomial
    // cannot annihilate anything; over a unity ring the polynomial is a
    // zerodivisor exactly when some component kills every coefficient, which
    // the joint annihilator of the coefficients detects.
    bool is_nonzerodivisor(const Elem& a) const {
        if (is_zero(a)) return false;
        if constexpr (R::is_field) {
            return true;
        } else {
            std::vector<Coeff> cs;
            cs.reserve(a.t.size());
            for (const auto& [k, v] : a.t) cs.push_back(v);
            return static_cast<int>(coeff.common_annihilator(cs).size()) - 1 == 0;
        }
    }

    std::string to_string(const Elem& a) const {
        if (a.t.empty()) return "0";
        std::string s;
        for (const auto& [k, v] : a.t) {
            if (!s.empty()) s += " + ";
            s += "(" + coeff.to_string(v) + ")";
            if (k.first) s += "*X^" + std::to_string(k.first);
            if (k.second) s += "*Y^" + std::to_string(k.second);
        }
        return s;
    }

private:
    void add_term(Elem& c, const Key& k, const Coeff& v) const {
        auto [it, fresh] = c.t.try_emplace(k, v);
        if (!fresh) {
            it->second = coeff.add(it->second, v);
            if (coeff.is_zero(it->second)) c.t.erase(it);
        } else if (coeff.is_zero(it->second)) {
            c.t.erase(it);
        }
    }
};

// Formal fractions num/den over R[X,Y]; den is always a non-zerodivisor.
// No gcd reduction is attempted (R need not be a domain), so degrees grow;
// all pipeline uses keep them small.
template <class R>
struct BiRatRing {
    using Poly = typename BiPolyRing<R>::Elem;

    struct Elem {
        Poly num, den; // invariant: den != 0
    };

    static constexpr bool is_field = false;

    BiPolyRing<R> poly;

    BiRatRing() = default;
    explicit BiRatRing(const R& r) : poly(r) {}

    Elem zero() const { return {poly.zero(), poly.one()}; }
    Elem one() const { return {poly.one(), poly.one()}; }
    Elem from_poly(const Poly& p) const { return {p, poly.one()}; }
    Elem from_coeff(const typename R::Elem& c) const { return {poly.from_coeff(c), poly.one()}; }

    bool is_zero(const Elem& a) const { return poly.is_zero(a.num); }
    bool equal(const Elem& a, const Elem& b) const {
        return poly.is_zero(poly.sub(poly.mul(a.num, b.den), poly.mul(b.num, a.den)));
    }

    Elem add(const Elem& a, const Elem& b) const {
        return normalized(poly.add(poly.mul(a.num, b.den), poly.mul(b.num, a.den)),
                          poly.mul(a.den, b.den));
    }
    Elem sub(const Elem& a, const Elem& b) const {
        return normalized(poly.sub(poly.mul(a.num, b.den), poly.mul(b.num, a.den)),
                          poly.mul(a.den, b.den));
    }
    Elem neg(const Elem& a) const { return {poly.neg(a.num), a.den}; }
    Elem mul(const Elem& a, const Elem& b) const {
        return normalized(poly.mul(a.num, b.num), poly.mul(a.den, b.den));
    }
    // Division by a fraction whose numerator is a certified non-zerodivisor.
    Elem div(const Elem& a, const Elem& b) const {
        require(poly.is_nonzerodivisor(b.num), errc::division_by_zero,
                "fraction division by a zero or zerodivisor numerator");
        return normalized(poly.mul(a.num, b.den), poly.mul(a.den, b.num));
    }

    bool is_poly(const Elem& a) const { return poly.is_constant(a.den); }

    std::string to_string(const Elem& a) const {
        return "(" + poly.to_string(a.num) + ") / (" + poly.to_string(a.den) + ")";
    }

private:
    Elem normalized(Poly n, Poly d) const {
        if (poly.is_zero(n)) return zero(); // collapse 0/d to the canonical zero
        return {std::move(n), std::move(d)};
    }
};

// Common-denominator form of a fraction list: lambda_i = u_i / q with
// q = prod of all denominators. Turns fraction pipelines into polynomial
// ones; q is a non-zerodivisor whenever every denominator is.
template <class R>
std::pair<std::vector<typename BiPolyRing<R>::Elem>, typename BiPolyRing<R>::Elem>
common_denominator(const BiRatRing<R>& rat, const std::vector<typename BiRatRing<R>::Elem>& fracs) {
    const auto& P = rat.poly;
    const std::size_t n = fracs.size();
    std::vector<typename BiPolyRing<R>::Elem> prefix(n + 1, P.one());
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = P.mul(prefix[i], fracs[i].den);
    std::vector<typename BiPolyRing<R>::Elem> u(n);
    auto suffix = P.one();
    for (std::size_t i = n; i-- > 0;) {
        u[i] = P.mul(P.mul(prefix[i], suffix), fracs[i].num);
        suffix = P.mul(suffix, fracs[i].den);
    }
    return {std::move(u), prefix[n]};
}

} // namespace ncrk

#endif
