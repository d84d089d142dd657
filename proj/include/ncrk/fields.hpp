#ifndef NCRK_FIELDS_HPP
#define NCRK_FIELDS_HPP

/*
 * Exact base fields: prime fields F_p (p < 2^62, checked prime) and the
 * rationals backed by GMP. Rings are lightweight context objects; elements
 * are plain values and all arithmetic goes through the context, so the same
 * templated algorithms run over every ring in the library.
 */

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace ncrk {

// -------------------------------------------------------------- utilities --

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness set.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x <= 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1 && composite; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

// ------------------------------------------------------------ prime field --

struct Fp {
    using Elem = std::uint64_t;
    static constexpr bool is_field = true;

    std::uint64_t p = 2;

    Fp() = default;
    explicit Fp(std::uint64_t prime) : p(prime) {
        require(prime >= 2 && prime < (1ULL << 62), errc::invalid_input,
                "field modulus out of range: " + std::to_string(prime));
        require(is_prime_u64(prime), errc::invalid_input,
                "field modulus is not prime: " + std::to_string(prime));
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    bool is_zero(Elem a) const { return a == 0; }
    bool equal(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p ? s - p : s;
    }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return mulmod_u64(a, b, p); }

    Elem inv(Elem a) const {
        require(a != 0, errc::division_by_zero, "inverse of zero in F_p");
        // extended Euclid on (a, p); p prime so gcd is 1
        std::int64_t t = 0, nt = 1;
        std::uint64_t r = p, nr = a;
        while (nr != 0) {
            std::uint64_t q = r / nr;
            std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
            t = nt; nt = tmp;
            std::uint64_t tmr = r - q * nr;
            r = nr; nr = tmr;
        }
        return t < 0 ? static_cast<Elem>(t + static_cast<std::int64_t>(p)) : static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p);
        if (m < 0) m += static_cast<long long>(p);
        return static_cast<Elem>(m);
    }

    std::uint64_t characteristic() const { return p; }
    std::string to_string(Elem a) const { return std::to_string(a); }
};

// -------------------------------------------------------------- rationals --

struct Rationals {
    using Elem = mpq_class;
    static constexpr bool is_field = true;

    Elem zero() const { return mpq_class(0); }
    Elem one() const { return mpq_class(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool equal(const Elem& a, const Elem& b) const { return cmp(a, b) == 0; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        require(sgn(a) != 0, errc::division_by_zero, "inverse of zero rational");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const {
        require(sgn(b) != 0, errc::division_by_zero, "rational division by zero");
        return a / b;
    }

    Elem from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
    // Canonical reduced form: gcd(num, den) = 1, den > 0 (GMP canonical form).
    Elem from_pair(long long num, long long den) const {
        require(den != 0, errc::invalid_input, "rational with zero denominator");
        mpq_class q(static_cast<long>(num), static_cast<long>(den));
        q.canonicalize();
        return q;
    }

    std::uint64_t characteristic() const { return 0; }
    std::string to_string(const Elem& a) const { return a.get_str(); }
};

// -------------------------------------------------- element serialization --

// Instance entries are decimal integers or "p/q" strings.
inline Fp::Elem parse_elem(const Fp& F, const std::string& s) {
    require(!s.empty(), errc::invalid_input, "empty field element");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class z(s);
            mpz_class m = mpz_class(static_cast<unsigned long>(F.p));
            mpz_class r = z % m;
            if (r < 0) r += m;
            return r.get_ui();
        }
        mpz_class num(s.substr(0, slash)), den(s.substr(slash + 1));
        mpz_class m = mpz_class(static_cast<unsigned long>(F.p));
        mpz_class rn = num % m, rd = den % m;
        if (rn < 0) rn += m;
        if (rd < 0) rd += m;
        require(rd != 0, errc::invalid_input, "denominator vanishes in F_p: " + s);
        return F.div(rn.get_ui(), rd.get_ui());
    } catch (const std::invalid_argument&) {
        fail(errc::invalid_input, "malformed field element: " + s);
    }
}

inline Rationals::Elem parse_elem(const Rationals&, const std::string& s) {
    require(!s.empty(), errc::invalid_input, "empty field element");
    try {
        mpq_class q(s);
        // mpq_set_str accepts "1/0"; reject it before it reaches arithmetic.
        require(sgn(q.get_den()) != 0, errc::division_by_zero,
                "rational with zero denominator: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(errc::invalid_input, "malformed rational: " + s);
    }
}

// ------------------------------------------------------------ sample sets --

// First k elements in the fixed enumeration 0, 1, 2, ... of the field.
// Errors out when the field cannot supply k distinct elements.
template <class F>
std::vector<typename F::Elem> sample_set(const F& K, std::size_t k, bool exclude_zero = false) {
    std::vector<typename F::Elem> out;
    out.reserve(k);
    if constexpr (std::is_same_v<F, Fp>) {
        std::uint64_t avail = K.p - (exclude_zero ? 1 : 0);
        require(k <= avail, errc::field_too_small,
                "sample set of size " + std::to_string(k) + " requested but F_" +
                    std::to_string(K.p) + " has only " + std::to_string(avail) +
                    (exclude_zero ? " nonzero elements" : " elements"));
    }
    std::uint64_t v = exclude_zero ? 1 : 0;
    for (std::size_t i = 0; i < k; ++i) out.push_back(K.from_int(static_cast<long long>(v + i)));
    return out;
}

// Stateless pseudorandom field element for specialization point idx of a
// seeded stream. Same (seed, idx) always yields the same element.
inline Fp::Elem sample_at(const Fp& F, std::uint64_t seed, std::uint64_t idx) {
    return splitmix64(seed ^ (0x517cc1b727220a95ULL * (idx + 1))) % F.p;
}

inline Rationals::Elem sample_at(const Rationals&, std::uint64_t seed, std::uint64_t idx,
                                 std::uint64_t bound = 1 << 20) {
    return mpq_class(static_cast<unsigned long>(
        splitmix64(seed ^ (0x517cc1b727220a95ULL * (idx + 1))) % bound));
}

// ------------------------------------------------------- field descriptor --

// Textual field descriptors: "Q" or "Fp:<prime>".
struct FieldDesc {
    bool rational = true;
    std::uint64_t p = 0;

    static FieldDesc parse(const std::string& s) {
        if (s == "Q") return {true, 0};
        if (s.rfind("Fp:", 0) == 0) {
            const std::string body = s.substr(3);
            require(!body.empty() && body.find_first_not_of("0123456789") == std::string::npos,
                    errc::invalid_input, "malformed field descriptor: " + s);
            errno = 0;
            char* end = nullptr;
            std::uint64_t v = std::strtoull(body.c_str(), &end, 10);
            require(errno == 0 && end && *end == '\0', errc::invalid_input,
                    "malformed field descriptor: " + s);
            return {false, v}; // primality is checked by the Fp constructor
        }
        fail(errc::invalid_input, "unknown field descriptor: " + s);
    }

    std::string str() const { return rational ? "Q" : "Fp:" + std::to_string(p); }
};

} // namespace ncrk

#endif
