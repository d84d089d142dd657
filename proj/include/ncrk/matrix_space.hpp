#ifndef NCRK_MATRIX_SPACE_HPP
#define NCRK_MATRIX_SPACE_HPP

/*
 * Matrix spaces spanned by explicit bases, tensor blow-ups space (x) M(d),
 * shrunk-subspace witnesses, and randomized commutative rank estimation.
 *
 * Blow-up layout: an element of M(n) (x) M(d) acts on F^n (x) F^d with
 * coordinate (i, a) stored at index i*d + a, so spanning elements are the
 * Kronecker products B_i (x) E_{jk} in lexicographic (i, j, k) order.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace ncrk {

template <class F>
struct MatrixSpace {
    std::size_t n = 0;
    std::vector<Mat<F>> basis;
};

template <class F>
MatrixSpace<F> make_space(const F& K, std::size_t n, std::vector<Mat<F>> basis) {
    (void)K;
    for (const auto& b : basis)
        require(b.rows == n && b.cols == n, errc::invalid_input, "space basis matrix is not n x n");
    return MatrixSpace<F>{n, std::move(basis)};
}

// Express v in a canonical reduced-column-echelon basis. Each basis column
// has a unit pivot at its leading row and zeros at other columns' pivots, so
// candidate coefficients can be read off and checked in one pass.
template <class F>
std::optional<std::vector<typename F::Elem>> sub_express(const F& K, const Subspace<F>& s,
                                                         const std::vector<typename F::Elem>& v) {
    require(v.size() == s.ambient, errc::invalid_input, "vector/subspace dimension mismatch");
    std::vector<typename F::Elem> x(s.basis.cols, K.zero());
    for (std::size_t j = 0; j < s.basis.cols; ++j) {
        std::size_t p = 0;
        while (p < s.ambient && K.is_zero(s.basis.at(p, j))) ++p;
        require(p < s.ambient, errc::internal, "zero column in canonical subspace basis");
        x[j] = v[p];
    }
    for (std::size_t i = 0; i < s.ambient; ++i) {
        auto acc = K.zero();
        for (std::size_t j = 0; j < s.basis.cols; ++j)
            acc = K.add(acc, K.mul(s.basis.at(i, j), x[j]));
        if (!K.equal(acc, v[i])) return std::nullopt;
    }
    return x;
}

// Span of { B u : B in the spanning list, u in U }.
template <class F>
Subspace<F> apply_mats(const F& K, const std::vector<Mat<F>>& mats, const Subspace<F>& U) {
    if (mats.empty()) return sub_zero(K, U.ambient);
    Mat<F> cols = make_mat(K, mats.front().rows, 0);
    for (const auto& B : mats) cols = hstack(K, cols, mat_mul(K, B, U.basis));
    return subspace_span(K, cols);
}

template <class F>
Subspace<F> apply_space(const F& K, const MatrixSpace<F>& sp, const Subspace<F>& U) {
    require(U.ambient == sp.n, errc::invalid_input, "subspace ambient does not match the space");
    return apply_mats(K, sp.basis, U);
}

// ------------------------------------------------------- shrunk witnesses --

// U, W with space(U) <= W and dim W <= dim U - c, c >= 1: certifies that the
// non-commutative rank is at most n - c.
template <class F>
struct ShrunkWitness {
    Subspace<F> U, W;
    std::size_t c = 0;
};

template <class F>
bool verify_shrunk(const F& K, const MatrixSpace<F>& sp, const ShrunkWitness<F>& w,
                   std::string* reason = nullptr) {
    auto why = [&](const char* msg) {
        if (reason) *reason = msg;
        return false;
    };
    if (w.U.ambient != sp.n || w.W.ambient != sp.n) return why("witness ambient dimension mismatch");
    if (w.c < 1) return why("claimed gap c must be at least 1");
    if (w.W.dim() + w.c > w.U.dim()) return why("dim W > dim U - c");
    const Subspace<F> img = apply_space(K, sp, w.U);
    if (!sub_contains_sub(K, w.W, img)) return why("space(U) is not contained in W");
    if (reason) reason->clear();
    return true;
}

template <class F>
ShrunkWitness<F> make_shrunk_witness(const F& K, const MatrixSpace<F>& sp, Subspace<F> U,
                                     Subspace<F> W, std::size_t c) {
    ShrunkWitness<F> w{std::move(U), std::move(W), c};
    std::string reason;
    const bool ok = verify_shrunk(K, sp, w, &reason);
    require(ok, errc::invalid_witness, "shrunk witness fails verification: " + reason);
    return w;
}

// -------------------------------------------------- commutative rank side --

struct EstimateCfg {
    unsigned trials = 16;
    std::uint64_t seed = 0;
};

template <class F>
struct RankEstimate {
    std::size_t value = 0;                   // one-sided: true rank >= value
    unsigned trials = 0;
    double failure_bound = 1.0;              // P(value < true max rank)
    bool field_small = false;                // |F| <= n: bound is vacuous
    std::vector<typename F::Elem> best_coeffs;
};

template <class F>
typename F::Elem random_scalar(const F& K, std::mt19937_64& rng) {
    if constexpr (std::is_same_v<F, Fp>) {
        return rng() % K.p;
    } else {
        return K.from_int(static_cast<long long>(rng() % (1ULL << 16)));
    }
}

template <class F>
double scalar_domain(const F& K) {
    if constexpr (std::is_same_v<F, Fp>)
        return static_cast<double>(K.p);
    else
        return static_cast<double>(1ULL << 16);
}

template <class F>
Mat<F> combine(const F& K, const std::vector<Mat<F>>& mats,
               const std::vector<typename F::Elem>& coeffs) {
    require(mats.size() == coeffs.size(), errc::invalid_input, "coefficient count mismatch");
    require(!mats.empty(), errc::invalid_input, "empty combination");
    Mat<F> acc = make_mat(K, mats.front().rows, mats.front().cols);
    for (std::size_t i = 0; i < mats.size(); ++i)
        acc = mat_add(K, acc, mat_scale(K, mats[i], coeffs[i]));
    return acc;
}

// Max rank over random combinations: a lower bound that is exact with
// probability >= 1 - (n / |S|)^trials by Schwartz-Zippel on the best minor.
template <class F>
RankEstimate<F> commutative_rank_estimate(const F& K, const MatrixSpace<F>& sp,
                                          const EstimateCfg& cfg) {
    RankEstimate<F> est;
    est.trials = cfg.trials;
    if (sp.basis.empty()) {
        est.value = 0;
        est.failure_bound = 0.0;
        return est;
    }
    const double dom = scalar_domain(K);
    est.field_small = dom <= static_cast<double>(sp.n);
    std::mt19937_64 rng(cfg.seed);
    for (unsigned t = 0; t < cfg.trials; ++t) {
        std::vector<typename F::Elem> coeffs;
        coeffs.reserve(sp.basis.size());
        for (std::size_t i = 0; i < sp.basis.size(); ++i) coeffs.push_back(random_scalar(K, rng));
        const std::size_t r = rank(K, combine(K, sp.basis, coeffs));
        if (r > est.value || est.best_coeffs.empty()) {
            est.value = r;
            est.best_coeffs = std::move(coeffs);
        }
    }
    const double per = std::min(1.0, static_cast<double>(sp.n) / dom);
    est.failure_bound = std::pow(per, static_cast<double>(cfg.trials));
    return est;
}

// ---------------------------------------------------------------- blow-up --

template <class F>
struct BlowUp {
    MatrixSpace<F> base;
    std::size_t d = 1;

    std::size_t dim() const { return base.n * d; }
};

template <class F>
BlowUp<F> blowup_space(const MatrixSpace<F>& sp, std::size_t d) {
    require(d >= 1, errc::invalid_input, "blow-up degree must be positive");
    return BlowUp<F>{sp, d};
}

template <class F>
Mat<F> unit_matrix(const F& K, std::size_t n, std::size_t i, std::size_t j) {
    Mat<F> e = make_mat(K, n, n);
    e.at(i, j) = K.one();
    return e;
}

// Spanning elements B_i (x) E_{jk} in lexicographic (i, j, k) order.
template <class F>
std::vector<Mat<F>> spanning_matrices(const F& K, const BlowUp<F>& bu) {
    std::vector<Mat<F>> out;
    out.reserve(bu.base.basis.size() * bu.d * bu.d);
    for (const auto& B : bu.base.basis)
        for (std::size_t j = 0; j < bu.d; ++j)
            for (std::size_t k = 0; k < bu.d; ++k)
                out.push_back(kron(K, B, unit_matrix(K, bu.d, j, k)));
    return out;
}

// Element from dense coefficients in the same lexicographic (i, j, k) order.
template <class F>
Mat<F> blowup_element(const F& K, const BlowUp<F>& bu,
                      const std::vector<typename F::Elem>& coeffs) {
    const std::size_t m = bu.base.basis.size(), d = bu.d;
    require(coeffs.size() == m * d * d, errc::invalid_input, "blow-up coefficient count mismatch");
    Mat<F> acc = make_mat(K, bu.dim(), bu.dim());
    const std::size_t n = bu.base.n;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const auto& c = coeffs[(i * d + j) * d + k];
                if (K.is_zero(c)) continue;
                for (std::size_t u = 0; u < n; ++u)
                    for (std::size_t v = 0; v < n; ++v)
                        acc.at(u * d + j, v * d + k) =
                            K.add(acc.at(u * d + j, v * d + k), K.mul(bu.base.basis[i].at(u, v), c));
            }
    return acc;
}

// d-slice H^{(a,b)} of A in M(nd): entry (u, v) = A[(u, a), (v, b)]. For a
// blow-up element sum B_i (x) C_i this equals sum (C_i)_{ab} B_i.
template <class F>
Mat<F> blowup_slice(const F& K, const Mat<F>& A, std::size_t n, std::size_t d, std::size_t a,
                    std::size_t b) {
    Mat<F> H = make_mat(K, n, n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) H.at(u, v) = A.at(u * d + a, v * d + b);
    return H;
}

// Coefficients of A in the spanning set, block by block (lex (i, j, k)).
template <class F>
std::optional<std::vector<typename F::Elem>> blowup_coeffs(const F& K, const BlowUp<F>& bu,
                                                           const Mat<F>& A) {
    const std::size_t m = bu.base.basis.size(), d = bu.d, n = bu.base.n;
    require(A.rows == n * d && A.cols == n * d, errc::invalid_input, "element size mismatch");
    std::vector<typename F::Elem> coeffs(m * d * d, K.zero());
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            const Mat<F> H = blowup_slice(K, A, n, d, j, k);
            auto x = in_span(K, bu.base.basis, H);
            if (!x) return std::nullopt;
            for (std::size_t i = 0; i < m; ++i) coeffs[(i * d + j) * d + k] = (*x)[i];
        }
    return coeffs;
}

// Does the span of mats equal some base space (x) M(d)? Checks closure of the
// span under slice-and-replace products H^{(jk)} (x) E_{il} and, when closed,
// returns the recovered base space (independent slices, first-seen order).
template <class F>
std::optional<MatrixSpace<F>> is_blowup(const F& K, const std::vector<Mat<F>>& mats, std::size_t n,
                                        std::size_t d) {
    require(d >= 1 && n >= 1, errc::invalid_input, "invalid blow-up shape");
    for (const auto& A : mats)
        require(A.rows == n * d && A.cols == n * d, errc::invalid_input,
                "blow-up candidate has wrong dimensions");
    Mat<F> cols = make_mat(K, n * d * n * d, 0);
    for (const auto& A : mats) cols = hstack(K, cols, vectorize(K, A));
    const Subspace<F> span = subspace_span(K, cols);

    std::vector<Mat<F>> slices;
    for (const auto& A : mats)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) slices.push_back(blowup_slice(K, A, n, d, a, b));

    for (const auto& H : slices)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l) {
                const Mat<F> cand = kron(K, H, unit_matrix(K, d, i, l));
                if (!sub_express(K, span, cand.a)) return std::nullopt;
            }

    // Independent subset of the slices, scanned in deterministic order.
    std::vector<Mat<F>> base;
    Subspace<F> seen = sub_zero(K, n * n);
    for (const auto& H : slices) {
        if (sub_express(K, seen, H.a)) continue;
        base.push_back(H);
        seen = sub_sum(K, seen, subspace_span(K, vectorize(K, H)));
    }
    return make_space(K, n, std::move(base));
}

// Descends a shrunk subspace of base (x) M(d) to one of the base space.
// The (I (x) M(d))-closure of U is U0 (x) F^d where U0 is the span of the
// d coordinate slices of U's basis vectors, and the closure does not grow
// the image, so the base gap is at least ceil(c_blow / d) >= 1.
template <class F>
ShrunkWitness<F> descend_witness(const F& K, const BlowUp<F>& bu, const Subspace<F>& U) {
    const std::size_t n = bu.base.n, d = bu.d;
    require(U.ambient == n * d, errc::invalid_input, "witness ambient does not match the blow-up");
    const auto spanning = spanning_matrices(K, bu);
    const Subspace<F> W = apply_mats(K, spanning, U);
    require(U.dim() > W.dim(), errc::invalid_witness,
            "subspace is not shrunk by the blow-up space");

    Mat<F> slice_cols = make_mat(K, n, U.dim() * d);
    for (std::size_t j = 0; j < U.dim(); ++j)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t v = 0; v < n; ++v)
                slice_cols.at(v, j * d + a) = U.basis.at(v * d + a, j);
    const Subspace<F> U0 = subspace_span(K, slice_cols);
    const Subspace<F> W0 = apply_space(K, bu.base, U0);
    require(U0.dim() > W0.dim(), errc::internal, "blow-up witness descent lost the gap");
    return make_shrunk_witness(K, bu.base, U0, W0, U0.dim() - W0.dim());
}

} // namespace ncrk

#endif
