#ifndef NCRK_WONG_HPP
#define NCRK_WONG_HPP

/*
 * Second Wong sequence of (A, span): W_0 = 0, W_i = span(A^{-1}(W_{i-1})).
 * The sequence is monotone; either it stabilizes inside im(A), and then
 * A^{-1}(limit) is a cork(A)-shrunk subspace, or some stage escapes im(A),
 * and then a witness chain C_1..C_l of spanning elements with vectors
 * v_1..v_l (v_1 in ker A, A v_i = C_{i-1} v_{i-1}, C_l v_l outside im(A))
 * exists and is extracted greedily from the top of the chain.
 */

#include <optional>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "matrix_space.hpp"

namespace ncrk {

template <class F>
struct WongResult {
    std::vector<std::size_t> stage_dims; // dim W_0 .. dim W_last
    Subspace<F> limit;                   // last stage computed
    bool contained = false;              // stabilized with limit inside im(A)
    std::optional<std::size_t> escape_index;
    Subspace<F> witness; // A^{-1}(limit) when contained
    std::size_t gap = 0; // dim witness - dim span(witness); equals cork(A) when contained
};

template <class F>
WongResult<F> second_wong(const F& K, const std::vector<Mat<F>>& mats, const Mat<F>& A,
                          std::size_t step_cap = 0) {
    require(!mats.empty(), errc::invalid_input, "wong sequence over an empty space");
    require(A.rows == A.cols, errc::invalid_input, "wong pivot must be square");
    require(in_span(K, mats, A).has_value(), errc::invalid_input,
            "wong pivot does not belong to the space");
    const std::size_t n = A.rows;
    const std::size_t cap = step_cap ? step_cap : n + 1;
    const Subspace<F> im = image(K, A);

    WongResult<F> res;
    Subspace<F> W = sub_zero(K, n);
    res.stage_dims.push_back(0);
    for (std::size_t step = 1; step <= cap; ++step) {
        const Subspace<F> next = apply_mats(K, mats, preimage(K, A, W));
        if (!sub_contains_sub(K, im, next)) {
            res.stage_dims.push_back(next.dim());
            res.escape_index = step;
            res.limit = next;
            return res;
        }
        if (next.dim() == W.dim()) { // monotone, so equal dims mean stabilized
            res.contained = true;
            res.limit = W;
            res.witness = preimage(K, A, W);
            res.gap = res.witness.dim() - apply_mats(K, mats, res.witness).dim();
            return res;
        }
        res.stage_dims.push_back(next.dim());
        W = next;
    }
    fail(errc::internal, "wong sequence neither stabilized nor escaped within its step cap");
}

template <class F>
struct WongChain {
    std::vector<std::size_t> indices;                // into the spanning list, C_1..C_l
    std::vector<Mat<F>> elems;                       // the C_i themselves
    std::vector<std::vector<typename F::Elem>> vecs; // v_1..v_l
    std::vector<typename F::Elem> escape;            // C_l v_l, outside im(A)
};

template <class F>
std::vector<typename F::Elem> mat_vec(const F& K, const Mat<F>& M,
                                      const std::vector<typename F::Elem>& v) {
    require(v.size() == M.cols, errc::invalid_input, "matrix/vector shape mismatch");
    std::vector<typename F::Elem> out(M.rows, K.zero());
    for (std::size_t i = 0; i < M.rows; ++i)
        for (std::size_t j = 0; j < M.cols; ++j) out[i] = K.add(out[i], K.mul(M.at(i, j), v[j]));
    return out;
}

template <class F>
WongChain<F> wong_chain(const F& K, const std::vector<Mat<F>>& mats, const Mat<F>& A,
                        const WongResult<F>& wong) {
    require(wong.escape_index.has_value(), errc::invalid_input,
            "wong chain requested but the sequence did not escape");
    const std::size_t l = *wong.escape_index;
    const std::size_t n = A.rows;
    const Subspace<F> im = image(K, A);

    // Contained stages W_0 .. W_{l-1}.
    std::vector<Subspace<F>> W{sub_zero(K, n)};
    for (std::size_t i = 1; i < l; ++i)
        W.push_back(apply_mats(K, mats, preimage(K, A, W.back())));

    // Greedy choice from the top: C_i is the first spanning element whose
    // substitution keeps the (partially substituted) expression outside im(A).
    std::vector<std::size_t> chosen(l, 0);
    for (std::size_t i = l; i >= 1; --i) {
        const Subspace<F> inner = preimage(K, A, W[i - 1]);
        bool found = false;
        for (std::size_t c = 0; c < mats.size() && !found; ++c) {
            Subspace<F> S = sub_apply(K, mats[c], inner);
            for (std::size_t j = i + 1; j <= l; ++j)
                S = sub_apply(K, mats[chosen[j - 1]], preimage(K, A, S));
            if (!sub_contains_sub(K, im, S)) {
                chosen[i - 1] = c;
                found = true;
            }
        }
        require(found, errc::internal, "wong chain greedy substitution found no escaping element");
    }

    WongChain<F> chain;
    chain.indices = chosen;
    for (auto c : chosen) chain.elems.push_back(mats[c]);

    // Stage subspaces along the chosen chain: S_0 = ker A,
    // S_i = A^{-1}(C_i S_{i-1}); the top application escapes im(A).
    std::vector<Subspace<F>> S{kernel_space(K, A)};
    for (std::size_t i = 1; i < l; ++i)
        S.push_back(preimage(K, A, sub_apply(K, chain.elems[i - 1], S[i - 1])));

    // Escaping vector at the top, then walk the chain back down, solving each
    // step inside the corresponding stage subspace.
    const Subspace<F> top = sub_apply(K, chain.elems[l - 1], S[l - 1]);
    std::optional<std::vector<typename F::Elem>> y;
    for (std::size_t j = 0; j < top.basis.cols && !y; ++j) {
        std::vector<typename F::Elem> cand(n, K.zero());
        for (std::size_t i = 0; i < n; ++i) cand[i] = top.basis.at(i, j);
        if (!sub_express(K, im, cand)) y = std::move(cand);
    }
    require(y.has_value(), errc::internal, "escaping stage has no basis vector outside im(A)");
    chain.escape = *y;

    chain.vecs.assign(l, {});
    std::vector<typename F::Elem> rhs = *y;
    for (std::size_t i = l; i >= 1; --i) {
        // Solve C_i (B t) = rhs with B the basis of S_{i-1}.
        const Mat<F> CB = mat_mul(K, chain.elems[i - 1], S[i - 1].basis);
        const auto t = solve(K, CB, rhs);
        require(t.has_value(), errc::internal, "wong chain back-substitution inconsistent");
        chain.vecs[i - 1] = mat_vec(K, S[i - 1].basis, *t);
        if (i > 1) rhs = mat_vec(K, A, chain.vecs[i - 1]);
    }
    return chain;
}

// First matrix in the pencil {C} union {A + s C : s in S} with rank > target.
template <class F>
struct PencilPick {
    Mat<F> M;
    bool c_alone = false;
    typename F::Elem lambda;
    std::size_t rank = 0;
};

template <class F>
PencilPick<F> pencil_max_rank(const F& K, const Mat<F>& A, const Mat<F>& C, std::size_t target,
                              const std::vector<typename F::Elem>& S) {
    {
        const std::size_t rc = rank(K, C);
        if (rc > target) return {C, true, K.zero(), rc};
    }
    for (const auto& s : S) {
        const Mat<F> M = mat_add(K, A, mat_scale(K, C, s));
        const std::size_t r = rank(K, M);
        if (r > target) return {M, false, s, r};
    }
    fail(errc::field_too_small,
         "no pencil member exceeded the target rank; sample set of size " +
             std::to_string(S.size()) + " exhausted");
}

} // namespace ncrk

#endif
