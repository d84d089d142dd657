#ifndef NCRK_ORACLE_HPP
#define NCRK_ORACLE_HPP

/*
 * Brute-force oracles, deliberately independent of the main solver: subspace
 * enumeration via reduced-echelon patterns, exhaustive rank maximization
 * over all coefficient tuples, and randomized blow-up rank search. Only
 * practical for tiny fields/dimensions; the guards throw too_large instead
 * of silently grinding.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "errors.hpp"
#include "matrix_space.hpp"

namespace ncrk {

namespace detail {

// Odometer increment over digit alphabet of size `radix`; false on wrap.
inline bool next_tuple(std::vector<std::size_t>& digits, std::size_t radix) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < radix) return true;
        digits[i] = 0;
    }
    return false;
}

} // namespace detail

// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> pivot_sets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    if (k == 0 || k > n) {
        if (k == 0) out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// Every dimension-k subspace of K^n exactly once, as reduced-echelon row
// patterns transposed into column bases. `elems` must enumerate the scalars.
template <class F>
std::vector<Subspace<F>> enumerate_subspaces(const F& K, std::size_t n, std::size_t k,
                                             const std::vector<typename F::Elem>& elems) {
    std::vector<Subspace<F>> out;
    if (k == 0) {
        out.push_back(sub_zero(K, n));
        return out;
    }
    for (const auto& piv : pivot_sets(n, k)) {
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> free_pos; // (row, col)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free_pos.push_back({i, j});
        std::vector<std::size_t> digits(free_pos.size(), 0);
        do {
            Mat<F> rows = make_mat(K, k, n);
            for (std::size_t i = 0; i < k; ++i) rows.at(i, piv[i]) = K.one();
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                rows.at(free_pos[t].first, free_pos[t].second) = elems[digits[t]];
            Subspace<F> U;
            U.ambient = n;
            U.basis = transpose(K, rows);
            out.push_back(std::move(U));
        } while (detail::next_tuple(digits, elems.size()));
    }
    return out;
}

// ------------------------------------------------- exhaustive shrunk search

template <class F>
struct ShrunkSearch {
    std::size_t best_c = 0; // 0 means no shrunk subspace exists (full ncrk)
    Subspace<F> U, W;
    std::size_t subspaces_checked = 0;
};

// Maximizes c = dim U - dim span{B u : B in basis, u in U} over all nonzero
// subspaces U; the minimal admissible W is that image span. First subspace
// in enumeration order wins ties.
template <class F>
ShrunkSearch<F> enumerate_shrunk(const F& K, const MatrixSpace<F>& sp,
                                 const std::vector<typename F::Elem>& elems) {
    require(sp.n <= 4, errc::too_large, "exhaustive shrunk search capped at n = 4");
    require(elems.size() <= 3, errc::too_large, "exhaustive shrunk search capped at 3 scalars");
    ShrunkSearch<F> best;
    for (std::size_t k = 1; k <= sp.n; ++k) {
        for (auto& U : enumerate_subspaces(K, sp.n, k, elems)) {
            ++best.subspaces_checked;
            const auto img = apply_space(K, sp, U);
            const std::size_t dimU = U.basis.cols;
            if (img.basis.cols < dimU && dimU - img.basis.cols > best.best_c) {
                best.best_c = dimU - img.basis.cols;
                best.U = std::move(U);
                best.W = img;
            }
        }
    }
    return best;
}

// ------------------------------------------------------- exhaustive max rank

// Max rank over every coefficient tuple from `elems`; the tuple count is
// capped to keep runs finite.
template <class F>
std::size_t exhaustive_rank(const F& K, const std::vector<Mat<F>>& basis,
                            const std::vector<typename F::Elem>& elems,
                            std::size_t combo_cap = (std::size_t{1} << 20)) {
    require(!basis.empty(), errc::invalid_input, "exhaustive rank needs a nonempty basis");
    double total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= static_cast<double>(elems.size());
    require(total <= static_cast<double>(combo_cap), errc::too_large,
            "exhaustive rank tuple count exceeds the cap");
    std::vector<std::size_t> digits(basis.size(), 0);
    std::size_t best = 0;
    do {
        std::vector<typename F::Elem> coeffs;
        coeffs.reserve(basis.size());
        for (auto dgt : digits) coeffs.push_back(elems[dgt]);
        best = std::max(best, rank(K, combine(K, basis, coeffs)));
        if (best == std::min(basis[0].rows, basis[0].cols)) break;
    } while (detail::next_tuple(digits, elems.size()));
    return best;
}

// -------------------------------------------------- randomized blow-up search

// Best rank found among random elements of space (x) M(d); rank/d rounded up
// is a lower bound on the non-commutative rank.
template <class F>
std::size_t blowup_rank_search(const F& K, const MatrixSpace<F>& sp, std::size_t d,
                               unsigned trials, std::uint64_t seed) {
    const auto bu = blowup_space(sp, d);
    std::mt19937_64 rng(seed);
    const std::size_t m = sp.basis.size() * d * d;
    std::size_t best = 0;
    for (unsigned t = 0; t < trials; ++t) {
        std::vector<typename F::Elem> coeffs;
        coeffs.reserve(m);
        for (std::size_t i = 0; i < m; ++i) coeffs.push_back(random_scalar(K, rng));
        best = std::max(best, rank(K, blowup_element(K, bu, coeffs)));
        if (best == sp.n * d) break;
    }
    return best;
}

} // namespace ncrk

#endif
