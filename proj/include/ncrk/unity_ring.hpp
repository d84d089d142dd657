#ifndef NCRK_UNITY_RING_HPP
#define NCRK_UNITY_RING_HPP

/*
 * UnityRing<F>: the quotient F[x]/(g) that adjoins a simulated primitive d-th
 * root of unity zeta without factoring anything. g is computed as the gcd over
 * proper divisors e | d of (x^d - 1)/(x^e - 1); each quotient is expanded as a
 * geometric sum, so only monic gcds are needed. The result has degree phi(d)
 * and splits into isomorphic field components over a splitting field; an
 * element is zero iff it is zero in every component, which the canonical
 * reduced representative detects directly.
 *
 * Division is deliberately unsupported: downstream algorithms are arranged to
 * be division-free, and a non-zerodivisor test (gcd of the lift with g) covers
 * the places where invertibility must be certified.
 */

#include <string>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"

namespace ncrk {

// Dense univariate polynomials over a field, coefficients low to high,
// no trailing zero coefficients (zero polynomial = empty vector).
template <class F>
using UPoly = std::vector<typename F::Elem>;

template <class F>
void upoly_trim(const F& K, UPoly<F>& a) {
    while (!a.empty() && K.is_zero(a.back())) a.pop_back();
}

template <class F>
int upoly_deg(const UPoly<F>& a) {
    return static_cast<int>(a.size()) - 1;
}

template <class F>
UPoly<F> upoly_mul(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
    if (a.empty() || b.empty()) return {};
    UPoly<F> c(a.size() + b.size() - 1, K.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = K.add(c[i + j], K.mul(a[i], b[j]));
    upoly_trim(K, c);
    return c;
}

// Remainder of a modulo b; b need not be monic (leading coefficient inverted).
template <class F>
UPoly<F> upoly_rem(const F& K, UPoly<F> a, const UPoly<F>& b) {
    require(!b.empty(), errc::division_by_zero, "polynomial remainder by zero");
    const auto lead_inv = K.inv(b.back());
    while (static_cast<int>(a.size()) >= static_cast<int>(b.size())) {
        const auto q = K.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = K.sub(a[shift + i], K.mul(q, b[i]));
        upoly_trim(K, a); // removes the cancelled top term, possibly more
    }
    return a;
}

// Monic gcd by plain Euclid.
template <class F>
UPoly<F> upoly_gcd(const F& K, UPoly<F> a, UPoly<F> b) {
    upoly_trim(K, a);
    upoly_trim(K, b);
    while (!b.empty()) {
        UPoly<F> r = upoly_rem(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const auto inv = K.inv(a.back());
        for (auto& c : a) c = K.mul(c, inv);
    }
    return a;
}

template <class F>
typename F::Elem upoly_eval(const F& K, const UPoly<F>& a, const typename F::Elem& x) {
    auto acc = K.zero();
    for (std::size_t i = a.size(); i-- > 0;) acc = K.add(K.mul(acc, x), a[i]);
    return acc;
}

inline unsigned euler_phi(unsigned d) {
    unsigned result = d;
    for (unsigned q = 2; q * q <= d; ++q) {
        if (d % q == 0) {
            result -= result / q;
            while (d % q == 0) d /= q;
        }
    }
    if (d > 1) result -= result / d;
    return result;
}

template <class F>
struct UnityRing {
    using Elem = std::vector<typename F::Elem>; // fixed length deg(g), low to high
    static constexpr bool is_field = false;

    F base;
    unsigned d = 1;
    UPoly<F> modulus; // monic, degree phi(d)

    UnityRing() = default;

    UnityRing(const F& K, unsigned order) : base(K), d(order) {
        require(order >= 1, errc::invalid_input, "root-of-unity order must be positive");
        const auto ch = K.characteristic();
        require(ch == 0 || order % ch != 0, errc::unsupported_char,
                "characteristic " + std::to_string(ch) + " divides root-of-unity order " +
                    std::to_string(order));
        if (order == 1) {
            modulus = {K.neg(K.one()), K.one()}; // x - 1
        } else {
            UPoly<F> g; // gcd of (x^d-1)/(x^e-1) over proper divisors e | d
            for (unsigned e = 1; e < order; ++e) {
                if (order % e != 0) continue;
                UPoly<F> h(order - e + 1, K.zero()); // sum of x^{ke}, k = 0..d/e-1
                for (unsigned k = 0; k * e <= order - e; ++k) h[k * e] = K.one();
                g = g.empty() ? h : upoly_gcd(K, g, h);
            }
            modulus = g;
        }
        require(static_cast<unsigned>(upoly_deg<F>(modulus)) == euler_phi(order), errc::internal,
                "unity ring modulus has unexpected degree");
    }

    std::size_t width() const { return modulus.size() - 1; }

    Elem reduce(UPoly<F> a) const {
        a = upoly_rem(base, std::move(a), modulus);
        a.resize(width(), base.zero());
        return a;
    }

    Elem zero() const { return Elem(width(), base.zero()); }
    Elem one() const { return from_base(base.one()); }
    Elem from_base(const typename F::Elem& c) const {
        UPoly<F> a{c};
        return reduce(std::move(a));
    }
    // Image of x: the simulated primitive d-th root of unity.
    Elem zeta() const {
        UPoly<F> x{base.zero(), base.one()};
        return reduce(std::move(x));
    }
    Elem zeta_pow(unsigned k) const {
        Elem r = one(), z = zeta();
        for (unsigned i = 0; i < k % d; ++i) r = mul(r, z);
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!base.is_zero(c)) return false;
        return true;
    }
    bool equal(const Elem& a, const Elem& b) const {
        for (std::size_t i = 0; i < width(); ++i)
            if (!base.equal(a[i], b[i])) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem c(width(), base.zero());
        for (std::size_t i = 0; i < width(); ++i) c[i] = base.add(a[i], b[i]);
        return c;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem c(width(), base.zero());
        for (std::size_t i = 0; i < width(); ++i) c[i] = base.sub(a[i], b[i]);
        return c;
    }
    Elem neg(const Elem& a) const {
        Elem c(width(), base.zero());
        for (std::size_t i = 0; i < width(); ++i) c[i] = base.neg(a[i]);
        return c;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        UPoly<F> pa(a), pb(b);
        upoly_trim(base, pa);
        upoly_trim(base, pb);
        return reduce(upoly_mul(base, pa, pb));
    }
    Elem div(const Elem&, const Elem&) const {
        fail(errc::unsupported_op, "division requested in unity ring");
    }

    // Units and non-zerodivisors coincide here; both mean "nonzero in every
    // component", i.e. the lift shares no factor with the modulus.
    bool is_nonzerodivisor(const Elem& a) const {
        UPoly<F> lift(a);
        upoly_trim(base, lift);
        if (lift.empty()) return false;
        return upoly_deg<F>(upoly_gcd(base, modulus, lift)) == 0;
    }

    // Monic gcd of the modulus with the lifts of all given elements. Its
    // nontrivial factors are exactly the components where every element
    // vanishes; degree 0 means the collection is jointly a non-zerodivisor.
    UPoly<F> common_annihilator(const std::vector<Elem>& elems) const {
        UPoly<F> g = modulus;
        for (const auto& e : elems) {
            if (upoly_deg<F>(g) == 0) break;
            UPoly<F> lift(e);
            upoly_trim(base, lift);
            g = upoly_gcd(base, g, lift);
        }
        return g;
    }

    std::uint64_t characteristic() const { return base.characteristic(); }

    std::string to_string(const Elem& a) const {
        std::string s = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ",";
            s += base.to_string(a[i]);
        }
        return s + "]";
    }
};

} // namespace ncrk

#endif
