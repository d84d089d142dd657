#ifndef NCRK_CHARPOLY_HPP
#define NCRK_CHARPOLY_HPP

/*
 * Division-free characteristic polynomial (Samuelson-Berkowitz). Works over
 * any commutative ring context: only +, -, * are used. O(n^4) ring products.
 */

#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace ncrk {

// Coefficients of det(xI - A), ascending (c[0] constant term, c[n] = 1).
template <class R>
std::vector<typename R::Elem> charpoly(const R& ring, const Mat<R>& A) {
    require(A.rows == A.cols, errc::invalid_input, "charpoly of a non-square matrix");
    const std::size_t n = A.rows;
    // C holds descending coefficients of the leading r x r principal charpoly.
    std::vector<typename R::Elem> C{ring.one()};
    for (std::size_t r = 1; r <= n; ++r) {
        // q[0] = 1, q[1] = -a_rr, q[i] = -(row_r * A_{r-1}^{i-2} * col_r)
        std::vector<typename R::Elem> q(r + 1, ring.zero());
        q[0] = ring.one();
        q[1] = ring.neg(A.at(r - 1, r - 1));
        std::vector<typename R::Elem> u(r - 1);
        for (std::size_t i = 0; i + 1 < r; ++i) u[i] = A.at(i, r - 1);
        for (std::size_t i = 2; i <= r; ++i) {
            auto dot = ring.zero();
            for (std::size_t k = 0; k + 1 < r; ++k)
                dot = ring.add(dot, ring.mul(A.at(r - 1, k), u[k]));
            q[i] = ring.neg(dot);
            if (i < r) {
                std::vector<typename R::Elem> nu(r - 1, ring.zero());
                for (std::size_t a = 0; a + 1 < r; ++a)
                    for (std::size_t b = 0; b + 1 < r; ++b)
                        nu[a] = ring.add(nu[a], ring.mul(A.at(a, b), u[b]));
                u = std::move(nu);
            }
        }
        // Lower-triangular Toeplitz product: newC[t] = sum_s C[s] * q[t-s].
        std::vector<typename R::Elem> nc(r + 1, ring.zero());
        for (std::size_t s = 0; s < C.size(); ++s)
            for (std::size_t i = 0; i < q.size() && s + i <= r; ++i)
                nc[s + i] = ring.add(nc[s + i], ring.mul(C[s], q[i]));
        C = std::move(nc);
    }
    std::vector<typename R::Elem> asc(C.rbegin(), C.rend());
    return asc;
}

} // namespace ncrk

#endif
