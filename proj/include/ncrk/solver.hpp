#ifndef NCRK_SOLVER_HPP
#define NCRK_SOLVER_HPP

/*
 * Non-commutative rank driver. Starting from a best-effort element of the
 * space, repeatedly either certifies a shrunk subspace (via the second Wong
 * sequence at the current blow-up degree, then descends it to the base) or
 * strictly increases rank/degree: an escaping Wong chain yields a pencil in
 * the degree-d*d' blow-up whose best member beats r*d*d', and the round-up
 * machinery lifts it to at least (r+1)*d*d'. Degrees multiply by at most
 * r+2 per step, giving the (n+1)!/(s+1)! trace bound from starting rank s.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "matrix_space.hpp"
#include "roundup.hpp"
#include "wong.hpp"

namespace ncrk {

// ---------------------------------------------------------- increment step

template <class F>
struct IncrementOutcome {
    bool found_witness = false;
    Subspace<F> blow_witness; // shrunk subspace of the degree-d blow-up
    std::size_t witness_gap = 0;
    Mat<F> improved; // element of the degree d*d' blow-up, rank >= (r+1) d d'
    std::size_t new_degree = 0;
    std::vector<std::size_t> wong_stage_dims;
    std::size_t chain_length = 0;
};

template <class F>
IncrementOutcome<F> increment_rank(const F& K, const MatrixSpace<F>& sp, std::size_t d,
                                   const Mat<F>& A, std::size_t dprime,
                                   const std::vector<typename F::Elem>& S, const SpecCfg& cfg) {
    const std::size_t n = sp.n;
    const auto bu = blowup_space(sp, d);
    const std::size_t rank_A = rank(K, A);
    require(rank_A % d == 0, errc::invalid_input, "increment needs rank divisible by the degree");
    const std::size_t r = rank_A / d;
    require(r < n, errc::invalid_input, "element already has full blow-up rank");
    require(dprime > r, errc::invalid_input, "increment degree must exceed the current rank");
    const auto ch = K.characteristic();
    require(ch == 0 || (d * dprime) % ch != 0, errc::unsupported_char,
            "characteristic divides the blow-up degree");

    const auto spanning = spanning_matrices(K, bu);
    const auto wong = second_wong(K, spanning, A, r + 1);

    IncrementOutcome<F> out;
    out.wong_stage_dims = wong.stage_dims;
    if (wong.contained) {
        require(wong.gap == (n - r) * d, errc::internal,
                "wong witness gap does not match the corank");
        out.found_witness = true;
        out.blow_witness = wong.witness;
        out.witness_gap = wong.gap;
        return out;
    }

    const auto chain = wong_chain(K, spanning, A, wong);
    const std::size_t l = chain.elems.size();
    out.chain_length = l;

    // Shift matrices in M(d'): Z_i maps e_{i-1} to e_i, with the wraparound
    // Z_{r+1} = E_{0, d'-1} exactly when the chain is full and d' = r+1.
    Mat<F> Cp = make_mat(K, n * d * dprime, n * d * dprime);
    for (std::size_t i = 1; i <= l; ++i) {
        Mat<F> Z = (i == r + 1 && i == dprime) ? unit_matrix(K, dprime, 0, dprime - 1)
                                               : unit_matrix(K, dprime, i, i - 1);
        Cp = mat_add(K, Cp, kron(K, chain.elems[i - 1], Z));
    }
    const Mat<F> Ap = kron(K, A, identity(K, dprime));

    const auto pick = pencil_max_rank(K, Ap, Cp, rank_A * dprime, S);
    const auto bu2 = blowup_space(sp, d * dprime);
    out.improved = round_up_to_multiple(K, bu2, pick.M, S, cfg);
    out.new_degree = d * dprime;
    return out;
}

// ------------------------------------------------------------- main driver

struct SolverCfg {
    std::uint64_t seed = 0;
    unsigned init_trials = 16;
    std::size_t cap_dim = 2000; // abort when n * d * d' would exceed this
    std::size_t sample_size = 0; // 0 = auto (n * d * d' + 1)
    SpecCfg spec;
};

template <class F>
struct NcrkResult {
    std::size_t n = 0;
    std::size_t ncrk = 0; // when partial: best certified lower bound
    bool partial = false;
    bool has_witness = false;
    ShrunkWitness<F> witness;
    std::size_t cert_degree = 0; // full-rank certificate when ncrk == n
    std::vector<typename F::Elem> cert_coeffs;
    std::size_t cert_rank = 0;
    std::size_t starting_rank = 0;
    std::vector<std::pair<std::size_t, std::size_t>> trace; // (degree, rank)
    std::vector<std::vector<std::size_t>> wong_stages;
};

namespace detail {

// Greedy pencil improvement against each basis element until stable.
template <class F>
Mat<F> improve_start(const F& K, const MatrixSpace<F>& sp, Mat<F> A,
                     const std::vector<typename F::Elem>& S) {
    bool improved = true;
    while (improved) {
        improved = false;
        const std::size_t cur = rank(K, A);
        if (cur == sp.n) break;
        for (const auto& B : sp.basis) {
            try {
                auto pick = pencil_max_rank(K, A, B, cur, S);
                A = std::move(pick.M);
                improved = true;
                break;
            } catch (const error& e) {
                if (e.kind() != errc::field_too_small) throw; // genuine resource errors propagate
            }
        }
    }
    return A;
}

} // namespace detail

template <class F>
NcrkResult<F> ncrk_main(const F& K, const MatrixSpace<F>& sp, const SolverCfg& cfg) {
    const std::size_t n = sp.n;
    require(n >= 1, errc::invalid_input, "empty matrix space dimension");
    NcrkResult<F> res;
    res.n = n;

    bool zero_space = true;
    for (const auto& B : sp.basis) zero_space = zero_space && mat_is_zero(K, B);
    if (zero_space) {
        res.ncrk = 0;
        res.has_witness = true;
        res.witness =
            make_shrunk_witness(K, sp, sub_full(K, n), sub_zero(K, n), n);
        res.trace = {{1, 0}};
        return res;
    }

    const EstimateCfg est_cfg{cfg.init_trials, cfg.seed};
    const auto est = commutative_rank_estimate(K, sp, est_cfg);
    Mat<F> A = combine(K, sp.basis, est.best_coeffs);
    {
        const auto S0 = sample_set(K, std::min<std::size_t>(scalar_domain(K), n + 2));
        A = detail::improve_start(K, sp, std::move(A), S0);
    }
    std::size_t rank_A = rank(K, A);
    res.starting_rank = rank_A;
    std::size_t d = 1;
    res.trace.push_back({d, rank_A});

    while (true) {
        const std::size_t r = rank_A / d;
        if (r == n) {
            auto coeffs = blowup_coeffs(K, blowup_space(sp, d), A);
            require(coeffs.has_value(), errc::internal, "full-rank certificate left the span");
            res.ncrk = n;
            res.cert_degree = d;
            res.cert_coeffs = std::move(*coeffs);
            res.cert_rank = rank_A;
            return res;
        }

        std::size_t dprime = r + 1;
        const auto ch = K.characteristic();
        if (ch != 0 && dprime % ch == 0) ++dprime;
        require(ch == 0 || dprime % ch != 0, errc::internal, "no characteristic-free step degree");

        if (n * d * dprime > cfg.cap_dim) {
            res.partial = true;
            res.ncrk = r; // certified lower bound: rank r*d at degree d
            return res;
        }

        const std::size_t sample_need =
            std::max<std::size_t>(cfg.sample_size, n * d * dprime + 1);
        const auto S = sample_set(K, sample_need);

        auto out = increment_rank(K, sp, d, A, dprime, S, cfg.spec);
        res.wong_stages.push_back(out.wong_stage_dims);
        if (out.found_witness) {
            auto w = descend_witness(K, blowup_space(sp, d), out.blow_witness);
            require(w.c == n - r, errc::internal, "descended witness gap mismatch");
            res.ncrk = n - w.c;
            res.has_witness = true;
            res.witness = std::move(w);
            return res;
        }
        A = std::move(out.improved);
        d = out.new_degree;
        rank_A = rank(K, A);
        require(rank_A % d == 0, errc::internal, "increment returned a non-multiple rank");
        require(rank_A / d > r, errc::internal, "increment failed to raise the rank");
        res.trace.push_back({d, rank_A});
    }
}

// ----------------------------------------------------------- nullcone test

struct NullconeCfg {
    std::size_t d_max = 2;
    unsigned trials = 24;
    std::uint64_t seed = 0;
};

template <class F>
struct NullconeReport {
    bool nonsingular_found = false;
    std::size_t cert_degree = 0;
    std::vector<typename F::Elem> cert_coeffs;
    bool definitive = false;   // negative verdicts are proofs only when d_max >= (n+1)!
    double miss_bound = 1.0;   // P(missing an existing nonsingular element)
};

// Randomized singularity-of-all-blow-ups test: looks for a nonsingular
// element of space (x) M(d) for d = 1..d_max.
template <class F>
NullconeReport<F> nullcone_test(const F& K, const MatrixSpace<F>& sp, const NullconeCfg& cfg) {
    NullconeReport<F> rep;
    const std::size_t n = sp.n;
    mpz_class fact = 1;
    for (std::size_t i = 2; i <= n + 1; ++i) fact *= static_cast<unsigned long>(i);
    rep.definitive =
        mpz_cmp_ui(fact.get_mpz_t(), static_cast<unsigned long>(cfg.d_max)) <= 0;
    std::mt19937_64 rng(cfg.seed);
    const double dom = scalar_domain(K);
    for (std::size_t d = 1; d <= cfg.d_max; ++d) {
        const auto bu = blowup_space(sp, d);
        const std::size_t m = sp.basis.size() * d * d;
        double per = std::min(1.0, static_cast<double>(n * d) / dom);
        double level = 1.0;
        for (unsigned t = 0; t < cfg.trials; ++t) {
            std::vector<typename F::Elem> coeffs;
            coeffs.reserve(m);
            for (std::size_t i = 0; i < m; ++i) coeffs.push_back(random_scalar(K, rng));
            const Mat<F> A = blowup_element(K, bu, coeffs);
            level *= per;
            if (rank(K, A) == n * d) {
                rep.nonsingular_found = true;
                rep.cert_degree = d;
                rep.cert_coeffs = std::move(coeffs);
                rep.definitive = true; // a certificate is a proof
                rep.miss_bound = 0.0;
                return rep;
            }
        }
        rep.miss_bound = std::min(rep.miss_bound, level);
    }
    return rep;
}

// ------------------------------------------------------------ degree bounds

struct DegreeBounds {
    mpq_class sigma_factorial;    // (n+1)!: smallest blow-up degree sure to reach full ncrk
    mpq_class sigma_exponential;  // n^2 4^{n^2} / 4: alternative blow-up degree bound
    mpq_class beta_factorial;     // max{2, (3/8) n^4 ((n+1)!)^2}: witness degree bound
    mpq_class beta_exponential;   // (3/128) n^8 16^{n^2}: alternative witness degree bound
};

inline DegreeBounds degree_bounds(std::size_t n, std::size_t m) {
    (void)m; // the bounds depend only on n; m kept for interface symmetry
    require(n >= 1, errc::invalid_input, "degree bounds need n >= 1");
    mpz_class fact = 1;
    for (std::size_t i = 2; i <= n + 1; ++i) fact *= static_cast<unsigned long>(i);
    mpz_class four_pow; // 4^{n^2}
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(n * n));
    mpz_class sixteen_pow;
    mpz_ui_pow_ui(sixteen_pow.get_mpz_t(), 16, static_cast<unsigned long>(n * n));
    mpz_class n2(static_cast<unsigned long>(n * n));
    mpz_class n4 = n2 * n2;
    mpz_class n8 = n4 * n4;

    DegreeBounds b;
    b.sigma_factorial = mpq_class(fact);
    b.sigma_exponential = mpq_class(n2 * four_pow) / 4;
    b.sigma_exponential.canonicalize();
    mpq_class bd = mpq_class(3 * n4 * fact * fact) / 8;
    bd.canonicalize();
    b.beta_factorial = bd < 2 ? mpq_class(2) : bd;
    b.beta_exponential = mpq_class(3 * n8 * sixteen_pow) / 128;
    b.beta_exponential.canonicalize();
    return b;
}

} // namespace ncrk

#endif
