#ifndef NCRK_FUNCFIELD_RANK_HPP
#define NCRK_FUNCFIELD_RANK_HPP

/*
 * Rank of matrices with entries in C(X,Y), where the coefficient ring C is a
 * field or a unity ring (then "rank" means the maximum across components).
 * Evaluation at base-field points only ever lowers rank, so every specialized
 * rank is a sound lower bound; maximizing over enough points recovers the
 * exact value. Two regimes:
 *   - deterministic: full (s+1) x (s+1) grid, s = min(rows,cols) * max entry
 *     degree, exact by the iterated-univariate zero test (and the unity-ring
 *     weight variable is kept symbolic);
 *   - randomized: a fixed number of stateless pseudorandom points with a
 *     reported Schwartz-Zippel failure bound.
 * Fraction entries are handled by per-row multiplication with the product of
 * the row's denominators (products of non-zerodivisors stay non-zerodivisors,
 * so per-component ranks are preserved; no lcm exists over a non-domain).
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "bipoly.hpp"
#include "component_rank.hpp"
#include "matrix.hpp"
#include "unity_ring.hpp"

namespace ncrk {

struct SpecCfg {
    bool deterministic = false;
    unsigned trials = 20;     // randomized specialization points
    std::uint64_t seed = 0;   // stateless stream seed
    std::uint64_t q_bound = 0; // rational sampling range; 0 = auto
};

struct SpecReport {
    unsigned points = 0;
    bool exact = false;        // deterministic grid completed (or constant input)
    double failure_bound = 1.0; // P(result < true rank), randomized mode
};

namespace detail {

template <class C>
struct BaseFieldOf {
    using type = C;
    static const C& get(const C& c) { return c; }
    static typename C::Elem embed(const C&, const typename C::Elem& x) { return x; }
};

template <class F>
struct BaseFieldOf<UnityRing<F>> {
    using type = F;
    static const F& get(const UnityRing<F>& c) { return c.base; }
    static typename UnityRing<F>::Elem embed(const UnityRing<F>& c, const typename F::Elem& x) {
        return c.from_base(x);
    }
};

// Rank of a constant matrix over C; max component rank when C is a unity
// ring. y_weight supplies the weight point in randomized mode; nullopt keeps
// the weight symbolic (exact).
template <class C>
std::size_t const_mat_rank(const C& c, const Mat<C>& m,
                           const std::optional<typename C::Elem>& y_weight) {
    if constexpr (C::is_field) {
        (void)y_weight;
        return rank(c, m);
    } else {
        require(m.rows == m.cols, errc::invalid_input, "component rank needs a square matrix");
        if (y_weight) return component_max_rank_eval(c, m, *y_weight);
        return component_max_rank(c, m);
    }
}

template <class C>
double domain_size(const C& coeff, std::uint64_t q_bound) {
    using B = typename BaseFieldOf<C>::type;
    const B& base = BaseFieldOf<C>::get(coeff);
    if constexpr (std::is_same_v<B, Fp>) {
        (void)q_bound;
        return static_cast<double>(base.p);
    } else {
        (void)base;
        return static_cast<double>(q_bound);
    }
}

} // namespace detail

// ------------------------------------------------ polynomial-entry matrices

// Maximum rank attained by specializations of a C[X,Y] matrix; see header
// comment for semantics and guarantees. Stops early once `stop_at` (if
// nonzero) is certified.
template <class C>
std::size_t function_field_rank(const BiPolyRing<C>& P, const Mat<BiPolyRing<C>>& A,
                                const SpecCfg& cfg, SpecReport* report = nullptr,
                                std::size_t stop_at = 0) {
    using B = typename detail::BaseFieldOf<C>::type;
    const C& coeff = P.coeff;
    const B& base = detail::BaseFieldOf<C>::get(coeff);

    unsigned maxdeg = 0;
    bool constant = true;
    for (const auto& e : A.a) {
        maxdeg = std::max(maxdeg, P.total_deg(e));
        constant = constant && P.is_constant(e);
    }
    const std::size_t s = std::min(A.rows, A.cols) * maxdeg;

    std::uint64_t q_bound = cfg.q_bound ? cfg.q_bound : std::max<std::uint64_t>(4 * s + 4, 1024);

    auto eval_rank = [&](const typename B::Elem& x0, const typename B::Elem& y0,
                         const std::optional<typename C::Elem>& yw) {
        Mat<C> m;
        m.rows = A.rows;
        m.cols = A.cols;
        m.a.reserve(A.a.size());
        const auto cx = detail::BaseFieldOf<C>::embed(coeff, x0);
        const auto cy = detail::BaseFieldOf<C>::embed(coeff, y0);
        for (const auto& e : A.a) m.a.push_back(P.eval(e, cx, cy));
        return detail::const_mat_rank(coeff, m, yw);
    };

    if (constant) {
        if (report) *report = SpecReport{1, true, 0.0};
        return eval_rank(base.zero(), base.zero(), std::nullopt);
    }

    std::size_t best = 0;
    if (cfg.deterministic) {
        const auto pts = sample_set(base, s + 1);
        unsigned used = 0;
        for (const auto& x0 : pts) {
            for (const auto& y0 : pts) {
                best = std::max(best, eval_rank(x0, y0, std::nullopt));
                ++used;
                if (stop_at && best >= stop_at) {
                    if (report) *report = SpecReport{used, true, 0.0};
                    return best;
                }
            }
        }
        if (report) *report = SpecReport{used, true, 0.0};
        return best;
    }

    const double dom = detail::domain_size(coeff, q_bound);
    const double per_point = std::min(1.0, static_cast<double>(s) / dom);
    double fail = 1.0;
    unsigned used = 0;
    for (unsigned t = 0; t < cfg.trials; ++t) {
        typename B::Elem x0, y0, ywb;
        if constexpr (std::is_same_v<B, Fp>) {
            x0 = sample_at(base, cfg.seed, 3 * t);
            y0 = sample_at(base, cfg.seed, 3 * t + 1);
            ywb = sample_at(base, cfg.seed, 3 * t + 2);
        } else {
            x0 = sample_at(base, cfg.seed, 3 * t, q_bound);
            y0 = sample_at(base, cfg.seed, 3 * t + 1, q_bound);
            ywb = sample_at(base, cfg.seed, 3 * t + 2, q_bound);
        }
        std::optional<typename C::Elem> yw;
        if constexpr (!C::is_field) yw = detail::BaseFieldOf<C>::embed(coeff, ywb);
        best = std::max(best, eval_rank(x0, y0, yw));
        ++used;
        fail *= per_point;
        if (stop_at && best >= stop_at) break;
    }
    if (report) *report = SpecReport{used, false, fail};
    return best;
}

// True iff some specialization certifies rank >= floor (early exit).
template <class C>
bool rank_at_least(const BiPolyRing<C>& P, const Mat<BiPolyRing<C>>& A, std::size_t floor,
                   const SpecCfg& cfg) {
    if (floor == 0) return true;
    return function_field_rank(P, A, cfg, nullptr, floor) >= floor;
}

// -------------------------------------------------- fraction-entry matrices

// Clears denominators row by row, then ranks the polynomial matrix.
template <class C>
Mat<BiPolyRing<C>> clear_denominators(const BiRatRing<C>& Q, const Mat<BiRatRing<C>>& A) {
    const auto& P = Q.poly;
    Mat<BiPolyRing<C>> out = make_mat(P, A.rows, A.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        // prefix[j] = product of dens before j, suffix: after j
        std::vector<typename BiPolyRing<C>::Elem> prefix(A.cols + 1, P.one());
        for (std::size_t j = 0; j < A.cols; ++j) {
            const auto& den = A.at(i, j).den;
            require(P.is_nonzerodivisor(den), errc::invalid_input,
                    "denominator is a zerodivisor; rank would not be preserved");
            prefix[j + 1] = P.mul(prefix[j], den);
        }
        auto suffix = P.one();
        for (std::size_t j = A.cols; j-- > 0;) {
            out.at(i, j) = P.mul(P.mul(prefix[j], suffix), A.at(i, j).num);
            suffix = P.mul(suffix, A.at(i, j).den);
        }
    }
    return out;
}

template <class C>
std::size_t function_field_rank(const BiRatRing<C>& Q, const Mat<BiRatRing<C>>& A,
                                const SpecCfg& cfg, SpecReport* report = nullptr,
                                std::size_t stop_at = 0) {
    return function_field_rank(Q.poly, clear_denominators(Q, A), cfg, report, stop_at);
}

template <class C>
bool rank_at_least(const BiRatRing<C>& Q, const Mat<BiRatRing<C>>& A, std::size_t floor,
                   const SpecCfg& cfg) {
    if (floor == 0) return true;
    return function_field_rank(Q, A, cfg, nullptr, floor) >= floor;
}

} // namespace ncrk

#endif
