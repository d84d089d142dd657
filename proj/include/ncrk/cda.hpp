#ifndef NCRK_CDA_HPP
#define NCRK_CDA_HPP

/*
 * Cyclic division algebra over the function field, presented by the regular
 * action of its twisted basis on the degree-d Kummer extension L = F'(X)(Y1),
 * Y1^d = X, with sigma(Y1) = zeta Y1 for the simulated root of unity zeta.
 *
 *   M_k  : left multiplication by Y1^{k}, k = 0..d-1
 *          (M_k)_{a,b} = [a == b+k mod d] * (X if b+k >= d else 1)
 *   N_l  : Y^l * sigma^l as a matrix, for the Kummer case Y^l * diag(zeta^{lb})
 *   Gamma_{(k,l)} = M_k * N_l, indexed k*d + l
 *
 * Elements sum lambda_{kl} Gamma_{(k,l)} with scalars in F'(X,Y) represent a
 * division algebra; full matrices over it have rank divisible by d, which is
 * what the round-up step exploits. A general structure-constant path exists
 * behind a flag; the closed-form expansion (per column-offset class, Lagrange
 * interpolation at the nodes zeta^b Y, whose differences are units times
 * powers of Y) is only available for the Kummer tables.
 */

#include <vector>

#include "bipoly.hpp"
#include "errors.hpp"
#include "funcfield_rank.hpp"
#include "matrix.hpp"
#include "unity_ring.hpp"

namespace ncrk {

template <class F>
struct CyclicExtension {
    using R = UnityRing<F>;
    using P = BiPolyRing<R>;

    R ring;
    unsigned d = 1;
    bool kummer = false;
    // gamma[(k*d + i)*d + j]: coefficient of A_j in A_k * A_i (all 0-indexed)
    std::vector<typename P::Elem> gamma;
    Mat<P> sigma; // sigma(A_b) = sum_a sigma[a][b] A_a
};

template <class F>
CyclicExtension<F> kummer_extension(const UnityRing<F>& R) {
    CyclicExtension<F> ext;
    ext.ring = R;
    ext.d = R.d;
    ext.kummer = true;
    typename CyclicExtension<F>::P poly(R);
    const unsigned d = ext.d;
    ext.gamma.assign(static_cast<std::size_t>(d) * d * d, poly.zero());
    for (unsigned k = 0; k < d; ++k)
        for (unsigned i = 0; i < d; ++i) {
            const unsigned s = k + i;
            if (s < d)
                ext.gamma[(k * d + i) * d + s] = poly.one();
            else
                ext.gamma[(k * d + i) * d + (s - d)] = poly.var_x();
        }
    ext.sigma = make_mat(poly, d, d);
    for (unsigned b = 0; b < d; ++b) ext.sigma.at(b, b) = poly.from_coeff(R.zeta_pow(b));
    return ext;
}

// General structure-constant constructor (flagged non-Kummer).
template <class F>
CyclicExtension<F> cyclic_extension(const UnityRing<F>& R,
                                    std::vector<typename CyclicExtension<F>::P::Elem> gamma,
                                    Mat<typename CyclicExtension<F>::P> sigma) {
    CyclicExtension<F> ext;
    ext.ring = R;
    ext.d = R.d;
    ext.kummer = false;
    require(gamma.size() == static_cast<std::size_t>(R.d) * R.d * R.d, errc::invalid_input,
            "structure constant table has wrong size");
    require(sigma.rows == R.d && sigma.cols == R.d, errc::invalid_input,
            "sigma matrix has wrong shape");
    ext.gamma = std::move(gamma);
    ext.sigma = std::move(sigma);
    return ext;
}

template <class F>
struct DivisionAlgebraBasis {
    using R = UnityRing<F>;
    using P = BiPolyRing<R>;

    R ring;
    unsigned d = 1;
    bool kummer = false;
    std::vector<Mat<P>> gamma; // d^2 matrices, index k*d + l
    unsigned delta = 0;        // max total degree over all entries
};

// The twisted basis Gamma = { M_k N_l }, spanning the algebra's regular
// representation over F'(X,Y).
template <class F>
DivisionAlgebraBasis<F> cyclic_algebra_basis(const CyclicExtension<F>& ext) {
    using P = typename CyclicExtension<F>::P;
    P poly(ext.ring);
    const unsigned d = ext.d;

    std::vector<Mat<P>> mult(d); // M_k with (M_k)_{a,b} = gamma[k][b][a]
    for (unsigned k = 0; k < d; ++k) {
        mult[k] = make_mat(poly, d, d);
        for (unsigned b = 0; b < d; ++b)
            for (unsigned a = 0; a < d; ++a) mult[k].at(a, b) = ext.gamma[(k * d + b) * d + a];
    }

    DivisionAlgebraBasis<F> dab;
    dab.ring = ext.ring;
    dab.d = d;
    dab.kummer = ext.kummer;
    Mat<P> twist = identity(poly, d); // Y^l sigma^l, built incrementally
    const auto y = poly.var_y();
    std::vector<Mat<P>> ns(d);
    for (unsigned l = 0; l < d; ++l) {
        ns[l] = twist;
        if (l + 1 < d) {
            twist = mat_mul(poly, ext.sigma, twist);
            for (auto& e : twist.a) e = poly.mul(e, y);
        }
    }
    dab.gamma.reserve(static_cast<std::size_t>(d) * d);
    for (unsigned k = 0; k < d; ++k)
        for (unsigned l = 0; l < d; ++l) {
            Mat<P> g = mat_mul(poly, mult[k], ns[l]);
            for (const auto& e : g.a) dab.delta = std::max(dab.delta, poly.total_deg(e));
            dab.gamma.push_back(std::move(g));
        }
    return dab;
}

// Coefficients lambda (index k*d + l) with T = sum lambda_{kl} Gamma_{(k,l)},
// for a d x d matrix T over fractions. Kummer only: the system decouples by
// column offset class k, where the class entries are w_{k,b} L_k(zeta^b Y)
// with w in {1, X}, and L_k is recovered by Lagrange interpolation at the
// nodes zeta^b Y (node differences are units times Y, hence invertible).
template <class F>
std::vector<typename BiRatRing<UnityRing<F>>::Elem> expand_in_basis(
    const DivisionAlgebraBasis<F>& dab, const Mat<BiRatRing<UnityRing<F>>>& T) {
    require(dab.kummer, errc::unsupported_op,
            "basis expansion is only available for the Kummer closed form");
    const unsigned d = dab.d;
    require(T.rows == d && T.cols == d, errc::invalid_input, "expansion input must be d x d");
    const auto& R = dab.ring;
    BiRatRing<UnityRing<F>> rat(R);
    const auto& poly = rat.poly;

    std::vector<typename BiRatRing<UnityRing<F>>::Elem> lambda(static_cast<std::size_t>(d) * d,
                                                               rat.zero());
    for (unsigned k = 0; k < d; ++k) {
        // Values v_b = T[(b+k) mod d][b] / w_{k,b} at nodes z_b = zeta^b Y.
        std::vector<typename BiRatRing<UnityRing<F>>::Elem> nodes(d), values(d);
        for (unsigned b = 0; b < d; ++b) {
            nodes[b] = rat.from_poly(poly.monomial(0, 1, R.zeta_pow(b)));
            auto v = T.at((b + k) % d, b);
            if (b + k >= d) v = rat.div(v, rat.from_poly(poly.var_x()));
            values[b] = v;
        }
        // Lagrange: accumulate v_b * prod_{b' != b} (z - z_{b'}) / (z_b - z_{b'})
        // as a coefficient vector in z of length d.
        for (unsigned b = 0; b < d; ++b) {
            std::vector<typename BiRatRing<UnityRing<F>>::Elem> num{rat.one()};
            auto den = rat.one();
            for (unsigned bp = 0; bp < d; ++bp) {
                if (bp == b) continue;
                // num *= (z - z_bp)
                std::vector<typename BiRatRing<UnityRing<F>>::Elem> nn(num.size() + 1, rat.zero());
                for (std::size_t t = 0; t < num.size(); ++t) {
                    nn[t + 1] = rat.add(nn[t + 1], num[t]);
                    nn[t] = rat.sub(nn[t], rat.mul(num[t], nodes[bp]));
                }
                num = std::move(nn);
                den = rat.mul(den, rat.sub(nodes[b], nodes[bp]));
            }
            const auto scale = rat.div(values[b], den);
            for (std::size_t t = 0; t < num.size(); ++t)
                lambda[k * d + t] = rat.add(lambda[k * d + t], rat.mul(scale, num[t]));
        }
    }
    return lambda;
}

// Embedding of a base-field matrix into the bivariate polynomial ring over
// the unity ring.
template <class F>
Mat<BiPolyRing<UnityRing<F>>> embed_mat(const BiPolyRing<UnityRing<F>>& P, const Mat<F>& B) {
    return map_mat<BiPolyRing<UnityRing<F>>>(
        B, [&](const typename F::Elem& e) { return P.from_coeff(P.coeff.from_base(e)); });
}

// sum_i u_i * G_i over a polynomial matrix list.
template <class R>
Mat<BiPolyRing<R>> poly_combine(const BiPolyRing<R>& P,
                                const std::vector<Mat<BiPolyRing<R>>>& G,
                                const std::vector<typename BiPolyRing<R>::Elem>& u) {
    require(!G.empty() && G.size() == u.size(), errc::invalid_input,
            "coefficient count mismatch in polynomial combination");
    Mat<BiPolyRing<R>> acc = make_mat(P, G.front().rows, G.front().cols);
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (P.is_zero(u[i])) continue;
        for (std::size_t t = 0; t < acc.a.size(); ++t)
            acc.a[t] = P.add(acc.a[t], P.mul(u[i], G[i].a[t]));
    }
    return acc;
}

// Builds sum_{i,j} lambda_{ij} B_i (x) Gamma_j and reports whether its
// function-field rank is divisible by d. Fractions are first put over a
// common denominator (a non-zerodivisor), which preserves every component
// rank, so the test runs on a purely polynomial matrix.
template <class F>
bool algebra_membership_rank_check(const F& K, const std::vector<Mat<F>>& base,
                                   const DivisionAlgebraBasis<F>& dab,
                                   const std::vector<typename BiRatRing<UnityRing<F>>::Elem>& lambda,
                                   const SpecCfg& cfg, std::size_t* rank_out = nullptr) {
    (void)K;
    const unsigned d = dab.d;
    require(!base.empty(), errc::invalid_input, "empty base matrix list");
    require(lambda.size() == base.size() * d * d, errc::invalid_input,
            "coefficient count mismatch in membership check");
    BiRatRing<UnityRing<F>> rat(dab.ring);
    const auto& P = rat.poly;

    std::vector<Mat<BiPolyRing<UnityRing<F>>>> G;
    G.reserve(lambda.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto eb = embed_mat(P, base[i]);
        for (unsigned g = 0; g < d * d; ++g) G.push_back(kron(P, eb, dab.gamma[g]));
    }
    auto [u, q] = common_denominator(rat, lambda);
    require(P.is_nonzerodivisor(q), errc::internal, "common denominator is a zerodivisor");
    const std::size_t r = function_field_rank(P, poly_combine(P, G, u), cfg);
    if (rank_out) *rank_out = r;
    return r % d == 0;
}

} // namespace ncrk

#endif
