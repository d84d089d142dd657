#ifndef NCRK_COMPONENT_RANK_HPP
#define NCRK_COMPONENT_RANK_HPP

/*
 * Maximum rank of a unity-ring matrix across the ring's field components,
 * computed without ever decomposing the ring. The matrix B is embedded in the
 * symmetric bordering B' = [[0, B], [B^T, 0]], rows are weighted by powers of
 * an auxiliary variable y, and the division-free characteristic polynomial of
 * the weighted matrix is scanned for its lowest nonzero coefficient index M:
 * max component rank = (2N - M) / 2. A coefficient is zero exactly when its
 * canonical reduced form vanishes, i.e. when it vanishes in every component,
 * which is what makes the maximum drop out of a single charpoly.
 *
 * The exact version keeps y symbolic (O(N^4) polynomial products); the
 * evaluated version substitutes a concrete y and gives a sound lower bound
 * that is exact for all but a bounded number of y values.
 */

#include <vector>

#include "bipoly.hpp"
#include "charpoly.hpp"
#include "matrix.hpp"
#include "unity_ring.hpp"

namespace ncrk {

namespace detail {

// Index of the lowest nonzero coefficient; coefficients are monic at top.
template <class R>
std::size_t low_coeff_index(const R& ring, const std::vector<typename R::Elem>& coeffs) {
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!ring.is_zero(coeffs[k])) return k;
    fail(errc::internal, "characteristic polynomial vanished identically");
}

template <class Ring, class Weight>
std::size_t bordered_low_index(const Ring& ring, std::size_t N,
                               const std::vector<typename Ring::Elem>& top,
                               Weight&& weight) {
    // top is the N x N block in row-major order, already in Ring's elements.
    Mat<Ring> M2 = make_mat(ring, 2 * N, 2 * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            M2.at(i, N + j) = weight(i, top[i * N + j]);
            M2.at(N + j, i) = weight(N + j, top[i * N + j]);
        }
    return low_coeff_index(ring, charpoly(ring, M2));
}

} // namespace detail

// Exact maximum component rank (y symbolic).
template <class F>
std::size_t component_max_rank(const UnityRing<F>& U, const Mat<UnityRing<F>>& B) {
    require(B.rows == B.cols, errc::invalid_input, "component rank needs a square matrix");
    const std::size_t N = B.rows;
    if (N == 0) return 0;
    using P = BiPolyRing<UnityRing<F>>;
    P poly(U);
    std::vector<typename P::Elem> top(N * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) top[i * N + j] = poly.from_coeff(B.at(i, j));
    const std::size_t M = detail::bordered_low_index(
        poly, N, top,
        [&](std::size_t row, const typename P::Elem& e) { return poly.mul(poly.monomial(0, static_cast<unsigned>(row), U.one()), e); });
    require((2 * N - M) % 2 == 0, errc::internal, "odd corank from symmetric bordering");
    return (2 * N - M) / 2;
}

// Evaluated variant: y fixed to y0. Always a lower bound on the exact value;
// equal to it outside at most N(2N-1) bad choices of y0 per component.
template <class F>
std::size_t component_max_rank_eval(const UnityRing<F>& U, const Mat<UnityRing<F>>& B,
                                    const typename UnityRing<F>::Elem& y0) {
    require(B.rows == B.cols, errc::invalid_input, "component rank needs a square matrix");
    const std::size_t N = B.rows;
    if (N == 0) return 0;
    std::vector<typename UnityRing<F>::Elem> pow(2 * N, U.one());
    for (std::size_t i = 1; i < 2 * N; ++i) pow[i] = U.mul(pow[i - 1], y0);
    std::vector<typename UnityRing<F>::Elem> top(B.a);
    const std::size_t M = detail::bordered_low_index(
        U, N, top, [&](std::size_t row, const typename UnityRing<F>::Elem& e) { return U.mul(pow[row], e); });
    if ((2 * N - M) % 2 != 0) return (2 * N - M - 1) / 2; // even drop lost to the evaluation
    return (2 * N - M) / 2;
}

} // namespace ncrk

#endif
