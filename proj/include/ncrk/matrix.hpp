#ifndef NCRK_MATRIX_HPP
#define NCRK_MATRIX_HPP

/*
 * Dense matrices over any ring context, and exact linear algebra over fields:
 * fraction-free (Bareiss) rank, reduced row echelon, kernel, solve, canonical
 * subspaces, preimages. Pivoting is deterministic (first nonzero entry), so
 * every result is reproducible; over Q rows are pre-scaled to integers and
 * the Bareiss divisions stay exact, bounding coefficient growth by minors.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"

namespace ncrk {

template <class R>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<typename R::Elem> a;

    typename R::Elem& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const typename R::Elem& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class R>
Mat<R> make_mat(const R& ring, std::size_t rows, std::size_t cols) {
    Mat<R> m;
    m.rows = rows;
    m.cols = cols;
    m.a.assign(rows * cols, ring.zero());
    return m;
}

template <class R>
Mat<R> identity(const R& ring, std::size_t n) {
    Mat<R> m = make_mat(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
}

template <class R>
bool mat_is_zero(const R& ring, const Mat<R>& m) {
    for (const auto& x : m.a)
        if (!ring.is_zero(x)) return false;
    return true;
}

template <class R>
bool mat_equal(const R& ring, const Mat<R>& x, const Mat<R>& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (!ring.equal(x.a[i], y.a[i])) return false;
    return true;
}

template <class R>
Mat<R> mat_add(const R& ring, const Mat<R>& x, const Mat<R>& y) {
    require(x.rows == y.rows && x.cols == y.cols, errc::invalid_input, "matrix shape mismatch in add");
    Mat<R> z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = ring.add(z.a[i], y.a[i]);
    return z;
}

template <class R>
Mat<R> mat_sub(const R& ring, const Mat<R>& x, const Mat<R>& y) {
    require(x.rows == y.rows && x.cols == y.cols, errc::invalid_input, "matrix shape mismatch in sub");
    Mat<R> z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = ring.sub(z.a[i], y.a[i]);
    return z;
}

template <class R>
Mat<R> mat_scale(const R& ring, const Mat<R>& x, const typename R::Elem& s) {
    Mat<R> z = x;
    for (auto& v : z.a) v = ring.mul(v, s);
    return z;
}

template <class R>
Mat<R> mat_mul(const R& ring, const Mat<R>& x, const Mat<R>& y) {
    require(x.cols == y.rows, errc::invalid_input, "matrix shape mismatch in mul");
    Mat<R> z = make_mat(ring, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const auto& xik = x.at(i, k);
            if (ring.is_zero(xik)) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) = ring.add(z.at(i, j), ring.mul(xik, y.at(k, j)));
        }
    return z;
}

template <class R>
Mat<R> transpose(const R& ring, const Mat<R>& x) {
    Mat<R> z = make_mat(ring, x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

// Kronecker product; block (i1, j1) of the result is x[i1][j1] * y.
template <class R>
Mat<R> kron(const R& ring, const Mat<R>& x, const Mat<R>& y) {
    Mat<R> z = make_mat(ring, x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i1 = 0; i1 < x.rows; ++i1)
        for (std::size_t j1 = 0; j1 < x.cols; ++j1) {
            const auto& s = x.at(i1, j1);
            if (ring.is_zero(s)) continue;
            for (std::size_t i2 = 0; i2 < y.rows; ++i2)
                for (std::size_t j2 = 0; j2 < y.cols; ++j2)
                    z.at(i1 * y.rows + i2, j1 * y.cols + j2) = ring.mul(s, y.at(i2, j2));
        }
    return z;
}

template <class R>
Mat<R> hstack(const R& ring, const Mat<R>& x, const Mat<R>& y) {
    require(x.rows == y.rows, errc::invalid_input, "matrix row mismatch in hstack");
    Mat<R> z = make_mat(ring, x.rows, x.cols + y.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
        for (std::size_t j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
    }
    return z;
}

// Entry-wise conversion between rings.
template <class R2, class R1, class Fn>
Mat<R2> map_mat(const Mat<R1>& x, Fn&& f) {
    Mat<R2> z;
    z.rows = x.rows;
    z.cols = x.cols;
    z.a.reserve(x.a.size());
    for (const auto& v : x.a) z.a.push_back(f(v));
    return z;
}

// Row-major vectorization as an (rows*cols) x 1 column.
template <class R>
Mat<R> vectorize(const R& ring, const Mat<R>& x) {
    Mat<R> z;
    z.rows = x.a.size();
    z.cols = 1;
    z.a = x.a;
    (void)ring;
    return z;
}

// ----------------------------------------------------- field linear algebra

// Fraction-free rank. Over Q each row is first scaled by the lcm of its
// denominators; thereafter the Bareiss divisions are exact and intermediates
// are bounded by minors of the scaled matrix.
template <class F>
std::size_t rank(const F& K, Mat<F> m) {
    static_assert(F::is_field);
    if constexpr (std::is_same_v<F, Rationals>) {
        for (std::size_t i = 0; i < m.rows; ++i) {
            mpz_class l(1);
            for (std::size_t j = 0; j < m.cols; ++j)
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
            if (l != 1) {
                mpq_class ql(l);
                for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) *= ql;
            }
        }
    }
    std::size_t rk = 0;
    auto prev = K.one();
    for (std::size_t col = 0; col < m.cols && rk < m.rows; ++col) {
        std::size_t piv = rk;
        while (piv < m.rows && K.is_zero(m.at(piv, col))) ++piv;
        if (piv == m.rows) continue;
        if (piv != rk)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rk, j));
        for (std::size_t i = rk + 1; i < m.rows; ++i) {
            for (std::size_t j = col + 1; j < m.cols; ++j)
                m.at(i, j) = K.div(
                    K.sub(K.mul(m.at(rk, col), m.at(i, j)), K.mul(m.at(i, col), m.at(rk, j))), prev);
            m.at(i, col) = K.zero();
        }
        prev = m.at(rk, col);
        ++rk;
    }
    return rk;
}

// In-place reduced row echelon form; returns pivot column indices.
template <class F>
std::vector<std::size_t> rref(const F& K, Mat<F>& m) {
    static_assert(F::is_field);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && K.is_zero(m.at(piv, col))) ++piv;
        if (piv == m.rows) continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        const auto inv = K.inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = K.mul(m.at(row, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || K.is_zero(m.at(i, col))) continue;
            const auto f = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Columns span the null space; one column per free variable, in column order.
template <class F>
Mat<F> kernel(const F& K, const Mat<F>& m) {
    Mat<F> r = m;
    const auto pivots = rref(K, r);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Mat<F> ker = make_mat(K, m.cols, m.cols - pivots.size());
    std::size_t out = 0;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        ker.at(f, out) = K.one();
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            ker.at(pivots[pr], out) = K.neg(r.at(pr, f));
        ++out;
    }
    return ker;
}

// Lexicographically first solution of A x = b under the fixed pivoting order
// (free variables set to zero). nullopt when inconsistent.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& K, const Mat<F>& A,
                                                   const std::vector<typename F::Elem>& b) {
    require(b.size() == A.rows, errc::invalid_input, "rhs length mismatch in solve");
    Mat<F> aug = make_mat(K, A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    const auto pivots = rref(K, aug);
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    std::vector<typename F::Elem> x(A.cols, K.zero());
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at(pr, A.cols);
    return x;
}

// ------------------------------------------------------------- subspaces --

// Subspace of F^ambient. The basis matrix is the canonical reduced column
// echelon form (RREF of the transpose, transposed back), so equal subspaces
// have identical representations.
template <class F>
struct Subspace {
    std::size_t ambient = 0;
    Mat<F> basis; // ambient x dim

    std::size_t dim() const { return basis.cols; }
};

template <class F>
Subspace<F> subspace_span(const F& K, const Mat<F>& columns) {
    Mat<F> t = transpose(K, columns);
    const auto pivots = rref(K, t);
    Mat<F> basis = make_mat(K, columns.rows, pivots.size());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < columns.rows; ++j) basis.at(j, r) = t.at(r, j);
    return Subspace<F>{columns.rows, std::move(basis)};
}

template <class F>
Subspace<F> sub_zero(const F& K, std::size_t ambient) {
    return Subspace<F>{ambient, make_mat(K, ambient, 0)};
}

template <class F>
Subspace<F> sub_full(const F& K, std::size_t ambient) {
    return Subspace<F>{ambient, identity(K, ambient)};
}

template <class F>
bool sub_equal(const F& K, const Subspace<F>& x, const Subspace<F>& y) {
    return x.ambient == y.ambient && mat_equal(K, x.basis, y.basis);
}

template <class F>
bool sub_contains_vec(const F& K, const Subspace<F>& s, const std::vector<typename F::Elem>& v) {
    require(v.size() == s.ambient, errc::invalid_input, "vector/subspace dimension mismatch");
    return solve(K, s.basis, v).has_value();
}

template <class F>
bool sub_contains_sub(const F& K, const Subspace<F>& outer, const Subspace<F>& inner) {
    require(outer.ambient == inner.ambient, errc::invalid_input, "subspace ambient mismatch");
    for (std::size_t j = 0; j < inner.basis.cols; ++j) {
        std::vector<typename F::Elem> v(inner.ambient, K.zero());
        for (std::size_t i = 0; i < inner.ambient; ++i) v[i] = inner.basis.at(i, j);
        if (!solve(K, outer.basis, v)) return false;
    }
    return true;
}

template <class F>
Subspace<F> sub_sum(const F& K, const Subspace<F>& x, const Subspace<F>& y) {
    require(x.ambient == y.ambient, errc::invalid_input, "subspace ambient mismatch");
    return subspace_span(K, hstack(K, x.basis, y.basis));
}

// Image of a subspace under a matrix: span of M * basis.
template <class F>
Subspace<F> sub_apply(const F& K, const Mat<F>& M, const Subspace<F>& s) {
    return subspace_span(K, mat_mul(K, M, s.basis));
}

template <class F>
Subspace<F> image(const F& K, const Mat<F>& M) {
    return subspace_span(K, M);
}

template <class F>
Subspace<F> kernel_space(const F& K, const Mat<F>& M) {
    return subspace_span(K, kernel(K, M));
}

// Full preimage A^{-1}(W) = { v : A v in W }, kernel of [A | W] projected to
// the first block of coordinates.
template <class F>
Subspace<F> preimage(const F& K, const Mat<F>& A, const Subspace<F>& W) {
    require(W.ambient == A.rows, errc::invalid_input, "preimage ambient mismatch");
    Mat<F> sys = hstack(K, A, W.basis);
    Mat<F> ker = kernel(K, sys);
    Mat<F> proj = make_mat(K, A.cols, ker.cols);
    for (std::size_t i = 0; i < A.cols; ++i)
        for (std::size_t j = 0; j < ker.cols; ++j) proj.at(i, j) = ker.at(i, j);
    return subspace_span(K, proj);
}

// Coefficients expressing target in the span of mats (lex-first), if any.
template <class F>
std::optional<std::vector<typename F::Elem>> in_span(const F& K, const std::vector<Mat<F>>& mats,
                                                     const Mat<F>& target) {
    require(!mats.empty() || mat_is_zero(K, target), errc::invalid_input, "span test over empty set");
    if (mats.empty()) return std::vector<typename F::Elem>{};
    Mat<F> sys = make_mat(K, target.rows * target.cols, mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k) {
        require(mats[k].rows == target.rows && mats[k].cols == target.cols, errc::invalid_input,
                "span test shape mismatch");
        for (std::size_t i = 0; i < mats[k].a.size(); ++i) sys.at(i, k) = mats[k].a[i];
    }
    return solve(K, sys, target.a);
}

} // namespace ncrk

#endif
