#ifndef NCRK_ROUNDUP_HPP
#define NCRK_ROUNDUP_HPP

/*
 * Rank round-up inside a blow-up space (x) M(d): an element whose rank is
 * not a multiple of d is replaced by one of rank at least the next multiple.
 *
 * Route: express the element in the twisted division-algebra basis
 * { B_i (x) Gamma_j } over F'(X,Y), reduce every coefficient into the sample
 * set S one position at a time while preserving a rank floor (a univariate
 * degree argument guarantees a good value exists whenever |S| > floor); the
 * resulting element lies in M(n,F) (x) D', so its rank in every component is
 * divisible by d and therefore jumps past the floor to the next multiple.
 * Re-expanding in { B_i (x) E_{jk} } (a direct sum, no solving) and reducing
 * again lands back in the F-span with the improved rank.
 *
 * All coefficient states are kept in common-denominator polynomial form, so
 * the reduction loop never performs fraction arithmetic.
 */

#include <vector>

#include "cda.hpp"
#include "errors.hpp"
#include "funcfield_rank.hpp"
#include "matrix.hpp"
#include "matrix_space.hpp"

namespace ncrk {

// One-at-a-time coefficient reduction into S, preserving rank >= floor.
// State: coefficients are u_i / q (q a fixed non-zerodivisor), the current
// combination is sum u_i G_i; replacing coefficient i by s in S turns it
// into the polynomial update + (s q - u_i) G_i. Returns the reduced
// base-field coefficients in position order (skipping positions already in S).
template <class C, class BF>
std::vector<typename BF::Elem> data_reduce(const BiPolyRing<C>& P,
                                           const std::vector<Mat<BiPolyRing<C>>>& G,
                                           std::vector<typename BiPolyRing<C>::Elem> u,
                                           const typename BiPolyRing<C>::Elem& q,
                                           std::size_t floor, const BF& base,
                                           const std::vector<typename BF::Elem>& S,
                                           const SpecCfg& cfg) {
    require(G.size() == u.size(), errc::invalid_input, "coefficient count mismatch in reduction");
    require(S.size() >= floor + 1, errc::field_too_small,
            "sample set must exceed the rank floor: need " + std::to_string(floor + 1) +
                ", have " + std::to_string(S.size()));
    require(P.is_nonzerodivisor(q), errc::invalid_input, "denominator must be a non-zerodivisor");

    auto embed_scalar = [&](const typename BF::Elem& s) {
        if constexpr (C::is_field)
            return P.from_coeff(s);
        else
            return P.from_coeff(P.coeff.from_base(s));
    };

    Mat<BiPolyRing<C>> cur = poly_combine(P, G, u);
    std::vector<typename BF::Elem> out;
    out.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        // Skip when u_i / q already equals some s in S.
        bool kept = false;
        for (const auto& s : S) {
            if (P.is_zero(P.sub(u[i], P.mul(embed_scalar(s), q)))) {
                out.push_back(s);
                kept = true;
                break;
            }
        }
        if (kept) continue;

        bool placed = false;
        for (const auto& s : S) {
            const auto delta = P.sub(P.mul(embed_scalar(s), q), u[i]);
            Mat<BiPolyRing<C>> cand = cur;
            for (std::size_t t = 0; t < cand.a.size(); ++t)
                cand.a[t] = P.add(cand.a[t], P.mul(delta, G[i].a[t]));
            if (rank_at_least(P, cand, floor, cfg)) {
                cur = std::move(cand);
                u[i] = P.mul(embed_scalar(s), q);
                out.push_back(s);
                placed = true;
                break;
            }
        }
        require(placed, errc::field_too_small,
                "sample set exhausted during data reduction at position " + std::to_string(i));
    }
    return out;
}

// Round the rank of a blow-up element up to the next multiple of d.
// Degenerate cases (d = 1 or rank already a multiple) return A unchanged.
template <class F>
Mat<F> round_up_rank(const F& K, const BlowUp<F>& bu, const Mat<F>& A,
                     const std::vector<typename F::Elem>& S, const SpecCfg& cfg) {
    const std::size_t d = bu.d, n = bu.base.n, m = bu.base.basis.size();
    require(A.rows == n * d && A.cols == n * d, errc::invalid_input,
            "element does not match the blow-up dimensions");
    const std::size_t rank_A = rank(K, A);
    if (d == 1 || rank_A % d == 0) return A;
    const std::size_t target = rank_A + (d - rank_A % d);

    const auto nu = blowup_coeffs(K, bu, A);
    require(nu.has_value(), errc::invalid_input, "element is not in the blow-up span");

    const UnityRing<F> R(K, static_cast<unsigned>(d));
    const auto dab = cyclic_algebra_basis(kummer_extension(R));
    BiRatRing<UnityRing<F>> rat(R);
    const auto& P = rat.poly;

    // Stage 1: reduce the twisted-basis coefficients, floor = rk(A).
    std::vector<Mat<BiPolyRing<UnityRing<F>>>> G1;
    G1.reserve(m * d * d);
    for (std::size_t i = 0; i < m; ++i) {
        const auto eb = embed_mat(P, bu.base.basis[i]);
        for (std::size_t g = 0; g < d * d; ++g) G1.push_back(kron(P, eb, dab.gamma[g]));
    }
    std::vector<typename BiRatRing<UnityRing<F>>::Elem> lambda;
    lambda.reserve(m * d * d);
    for (std::size_t i = 0; i < m; ++i) {
        Mat<BiRatRing<UnityRing<F>>> T = make_mat(rat, d, d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                T.at(j, k) = rat.from_poly(P.from_coeff(R.from_base((*nu)[(i * d + j) * d + k])));
        auto li = expand_in_basis(dab, T);
        for (auto& x : li) lambda.push_back(std::move(x));
    }
    auto [u1, q1] = common_denominator(rat, lambda);
    const auto mu = data_reduce(P, G1, std::move(u1), q1, rank_A, K, S, cfg);

    // Stage 2: re-expand in { B_i (x) E_{jk} } (direct sum over the Gamma
    // entries) and reduce to the next multiple.
    std::vector<Mat<BiPolyRing<UnityRing<F>>>> G2;
    G2.reserve(m * d * d);
    for (std::size_t i = 0; i < m; ++i) {
        const auto eb = embed_mat(P, bu.base.basis[i]);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                G2.push_back(kron(P, eb, embed_mat(P, unit_matrix(K, d, j, k))));
    }
    std::vector<typename BiPolyRing<UnityRing<F>>::Elem> u2(m * d * d, P.zero());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t g = 0; g < d * d; ++g) {
            const auto c = P.from_coeff(R.from_base(mu[i * d * d + g]));
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    u2[(i * d + j) * d + k] =
                        P.add(u2[(i * d + j) * d + k], P.mul(c, dab.gamma[g].at(j, k)));
        }
    const auto xi = data_reduce(P, G2, std::move(u2), P.one(), target, K, S, cfg);

    const Mat<F> out = blowup_element(K, bu, xi);
    require(rank(K, out) >= target, errc::internal, "round-up produced a rank below its target");
    return out;
}

// Iterate round_up_rank until the rank is an exact multiple of d.
template <class F>
Mat<F> round_up_to_multiple(const F& K, const BlowUp<F>& bu, Mat<F> A,
                            const std::vector<typename F::Elem>& S, const SpecCfg& cfg) {
    while (rank(K, A) % bu.d != 0) A = round_up_rank(K, bu, A, S, cfg);
    return A;
}

// Lift a rank-rd element of the degree-d blow-up (d >= n) to degree d',
// reaching rank >= r d'. Walks degree by degree, padding each d-block by
// zeros and rounding back up; a degree divisible by the characteristic is
// skipped by stepping two at once.
template <class F>
Mat<F> lift_rank(const F& K, const MatrixSpace<F>& sp, Mat<F> A, std::size_t d, std::size_t d_target,
                 const std::vector<typename F::Elem>& S, const SpecCfg& cfg) {
    const std::size_t n = sp.n;
    require(d >= n, errc::invalid_input, "lift requires blow-up degree at least n");
    require(d_target >= d, errc::invalid_input, "lift target below current degree");
    std::size_t rank_A = rank(K, A);
    require(rank_A % d == 0, errc::invalid_input, "lift input rank is not a multiple of the degree");
    std::size_t r = rank_A / d;
    if (r == 0) return make_mat(K, n * d_target, n * d_target);

    const auto ch = K.characteristic();
    std::size_t e = d;
    while (e < d_target) {
        std::size_t step = 1;
        if (ch != 0 && (e + 1) % ch == 0) {
            require(e + 2 <= d_target, errc::unsupported_char,
                    "target blow-up degree is divisible by the characteristic");
            require(e >= 2 * r - 1, errc::unsupported_char,
                    "cannot skip a characteristic-divisible degree at this rank");
            step = 2;
        }
        const std::size_t ne = e + step;
        Mat<F> padded = make_mat(K, n * ne, n * ne);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t a = 0; a < e; ++a)
                    for (std::size_t b = 0; b < e; ++b)
                        padded.at(u * ne + a, v * ne + b) = A.at(u * e + a, v * e + b);
        A = round_up_to_multiple(K, blowup_space(sp, ne), std::move(padded), S, cfg);
        e = ne;
        r = rank(K, A) / e;
    }
    return A;
}

} // namespace ncrk

#endif
