#include "doctest.h"

#include "ncrk/cda.hpp"
#include "ncrk/matrix_space.hpp"
#include "support/oracles.hpp"

using namespace ncrk;

namespace {

using R7 = UnityRing<Fp>;
template <class F>
using PR = BiPolyRing<UnityRing<F>>;
template <class F>
using RR = BiRatRing<UnityRing<F>>;

template <class F>
typename RR<F>::Elem rnd_frac(const RR<F>& rat, std::uint64_t& s, bool with_den) {
    const auto& P = rat.poly;
    auto rnd_poly = [&]() {
        auto e = P.zero();
        const unsigned terms = 1 + splitmix64(s++) % 2;
        for (unsigned t = 0; t < terms; ++t) {
            UPoly<F> lift;
            for (std::size_t i = 0; i < P.coeff.width(); ++i)
                lift.push_back(P.coeff.base.from_int(static_cast<long long>(splitmix64(s++) % 7)));
            e = P.add(e, P.monomial(splitmix64(s++) % 2, splitmix64(s++) % 2,
                                    P.coeff.reduce(std::move(lift))));
        }
        return e;
    };
    typename RR<F>::Elem f = rat.from_poly(rnd_poly());
    if (with_den) {
        // Powers of Y are certified non-zerodivisors in every component.
        f.den = P.monomial(0, 1 + splitmix64(s++) % 2, P.coeff.one());
    }
    return f;
}

template <class F>
bool rat_mat_equal(const RR<F>& rat, const Mat<RR<F>>& a, const Mat<RR<F>>& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.a.size(); ++i)
        if (!rat.equal(a.a[i], b.a[i])) return false;
    return true;
}

} // namespace

TEST_CASE("Kummer twisted basis for degree 2 has the closed form") {
    const Fp K(7);
    const R7 R(K, 2); // zeta = -1
    const auto dab = cyclic_algebra_basis(kummer_extension(R));
    REQUIRE(dab.d == 2);
    REQUIRE(dab.kummer);
    REQUIRE(dab.gamma.size() == 4);
    CHECK(dab.delta == 2);

    const PR<Fp> P(R);
    const auto X = P.var_x(), Y = P.var_y();

    // Gamma_(0,0) = I, Gamma_(0,1) = Y diag(1,-1),
    // Gamma_(1,0) = [[0,X],[1,0]], Gamma_(1,1) = [[0,-XY],[Y,0]].
    CHECK(mat_equal(P, dab.gamma[0], identity(P, 2)));

    Mat<PR<Fp>> n1 = make_mat(P, 2, 2);
    n1.at(0, 0) = Y;
    n1.at(1, 1) = P.neg(Y);
    CHECK(mat_equal(P, dab.gamma[1], n1));

    Mat<PR<Fp>> m1 = make_mat(P, 2, 2);
    m1.at(0, 1) = X;
    m1.at(1, 0) = P.one();
    CHECK(mat_equal(P, dab.gamma[2], m1));

    Mat<PR<Fp>> m1n1 = make_mat(P, 2, 2);
    m1n1.at(0, 1) = P.neg(P.mul(X, Y));
    m1n1.at(1, 0) = Y;
    CHECK(mat_equal(P, dab.gamma[3], m1n1));
}

TEST_CASE("twisted basis satisfies the defining relations") {
    const Fp K(7);
    for (const unsigned d : {2u, 3u}) {
        const R7 R(K, d);
        const auto dab = cyclic_algebra_basis(kummer_extension(R));
        const PR<Fp> P(R);
        REQUIRE(dab.gamma.size() == d * d);

        const auto& N1 = dab.gamma[1];         // M_0 N_1
        // Commutation: N_1 M_k = zeta^k M_k N_1, with M_k N_1 = Gamma_(k,1).
        for (unsigned k = 0; k < d; ++k) {
            const auto& Mk = dab.gamma[k * d];
            const auto lhs = mat_mul(P, N1, Mk);
            const auto rhs = mat_scale(P, dab.gamma[k * d + 1], P.from_coeff(R.zeta_pow(k)));
            CHECK(mat_equal(P, lhs, rhs));
        }

        // N_1^d = Y^d I, and M_1^d = X I (the slot variable X plays Y1^d).
        auto npow = identity(P, d), mpow = identity(P, d);
        for (unsigned i = 0; i < d; ++i) {
            npow = mat_mul(P, npow, N1);
            mpow = mat_mul(P, mpow, dab.gamma[d]);
        }
        CHECK(mat_equal(P, npow, mat_scale(P, identity(P, d), P.monomial(0, d, R.one()))));
        CHECK(mat_equal(P, mpow, mat_scale(P, identity(P, d), P.var_x())));
    }
}

TEST_CASE("expand_in_basis inverts the twisted-basis combination") {
    const Fp K(7);
    std::uint64_t s = 4141;
    for (const unsigned d : {2u, 3u}) {
        const R7 R(K, d);
        const auto dab = cyclic_algebra_basis(kummer_extension(R));
        const RR<Fp> rat(R);
        const auto& P = rat.poly;
        for (int t = 0; t < 8; ++t) {
            std::vector<typename RR<Fp>::Elem> lambda(d * d);
            for (auto& l : lambda) l = rnd_frac<Fp>(rat, s, t % 2 == 1);
            // T = sum lambda_g Gamma_g as a fraction matrix.
            Mat<RR<Fp>> T = make_mat(rat, d, d);
            for (unsigned g = 0; g < d * d; ++g)
                for (std::size_t e = 0; e < T.a.size(); ++e)
                    T.a[e] = rat.add(T.a[e], rat.mul(lambda[g], rat.from_poly(dab.gamma[g].a[e])));
            const auto back = expand_in_basis(dab, T);
            REQUIRE(back.size() == lambda.size());
            for (std::size_t g = 0; g < lambda.size(); ++g)
                CHECK(rat.equal(back[g], lambda[g]));
        }

        // Basis products stay inside the span: expanding Gamma_a Gamma_b and
        // recombining gives the product back.
        for (unsigned a = 0; a < d * d; ++a)
            for (unsigned b = 0; b < d * d; ++b) {
                const auto prod = mat_mul(P, dab.gamma[a], dab.gamma[b]);
                Mat<RR<Fp>> T = make_mat(rat, d, d);
                for (std::size_t e = 0; e < T.a.size(); ++e) T.a[e] = rat.from_poly(prod.a[e]);
                const auto lam = expand_in_basis(dab, T);
                Mat<RR<Fp>> rec = make_mat(rat, d, d);
                for (unsigned g = 0; g < d * d; ++g)
                    for (std::size_t e = 0; e < rec.a.size(); ++e)
                        rec.a[e] = rat.add(rec.a[e], rat.mul(lam[g], rat.from_poly(dab.gamma[g].a[e])));
                CHECK(rat_mat_equal(rat, rec, T));
            }
    }

    // Over the rationals as well (order 2, modulus x + 1).
    const Rationals F;
    const UnityRing<Rationals> RQ(F, 2);
    const auto dab = cyclic_algebra_basis(kummer_extension(RQ));
    const BiRatRing<UnityRing<Rationals>> rat(RQ);
    std::vector<typename BiRatRing<UnityRing<Rationals>>::Elem> lambda(4, rat.zero());
    lambda[0] = rat.from_coeff(RQ.from_base(F.from_pair(1, 2)));
    lambda[3] = rat.from_poly(rat.poly.var_x());
    Mat<BiRatRing<UnityRing<Rationals>>> T = make_mat(rat, 2, 2);
    for (unsigned g = 0; g < 4; ++g)
        for (std::size_t e = 0; e < T.a.size(); ++e)
            T.a[e] = rat.add(T.a[e], rat.mul(lambda[g], rat.from_poly(dab.gamma[g].a[e])));
    const auto back = expand_in_basis(dab, T);
    for (std::size_t g = 0; g < 4; ++g) CHECK(rat.equal(back[g], lambda[g]));
}

TEST_CASE("expansion rejects non-Kummer tables and bad shapes") {
    const Fp K(7);
    const R7 R(K, 2);
    const auto ext = kummer_extension(R);
    const auto general = cyclic_extension(R, ext.gamma, ext.sigma); // same table, general flag
    const auto dab = cyclic_algebra_basis(general);
    const RR<Fp> rat(R);
    Mat<RR<Fp>> T = make_mat(rat, 2, 2);
    try {
        expand_in_basis(dab, T);
        FAIL("general-table expansion should be refused");
    } catch (const error& e) {
        CHECK(e.kind() == errc::unsupported_op);
    }
    const auto kdab = cyclic_algebra_basis(ext);
    CHECK_THROWS_AS(expand_in_basis(kdab, make_mat(rat, 3, 3)), error);
}

TEST_CASE("membership rank check sees multiples of d on algebra elements") {
    const Fp K(10007);
    const UnityRing<Fp> R(K, 2);
    const auto dab = cyclic_algebra_basis(kummer_extension(R));
    const RR<Fp> rat(R);

    std::vector<Mat<Fp>> base;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) base.push_back(unit_matrix(K, 2, i, j));

    SpecCfg cfg;
    cfg.trials = 8;
    cfg.seed = 321;

    // Single slot E11 (x) Gamma_0: rank exactly d.
    std::vector<typename RR<Fp>::Elem> lone(base.size() * 4, rat.zero());
    lone[0] = rat.one();
    std::size_t r = 0;
    CHECK(algebra_membership_rank_check(K, base, dab, lone, cfg, &r));
    CHECK(r == 2);

    // Dense random coefficients: always a multiple of d.
    std::uint64_t s = 7321;
    for (int t = 0; t < 5; ++t) {
        std::vector<typename RR<Fp>::Elem> lambda(base.size() * 4);
        for (auto& l : lambda) {
            UPoly<Fp> lift{splitmix64(s++) % K.p};
            l = rat.from_coeff(R.reduce(std::move(lift)));
        }
        std::size_t rk = 0;
        CHECK(algebra_membership_rank_check(K, base, dab, lambda, cfg, &rk));
        CHECK(rk % 2 == 0);
        CHECK(rk <= 4);
    }

    CHECK_THROWS_AS(
        algebra_membership_rank_check(K, std::vector<Mat<Fp>>{}, dab, lone, cfg, nullptr), error);
    CHECK_THROWS_AS(algebra_membership_rank_check(
                        K, base, dab, std::vector<typename RR<Fp>::Elem>(3, rat.zero()), cfg, nullptr),
                    error);
}

TEST_CASE("embedding and polynomial combination agree with the blow-up layout") {
    const Fp K(10007);
    const UnityRing<Fp> R(K, 2);
    const PR<Fp> P(R);

    Mat<Fp> B = make_mat(K, 2, 2);
    B.at(0, 0) = K.from_int(3);
    B.at(1, 0) = K.from_int(-4);
    const auto eb = embed_mat(P, B);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(P.equal(eb.a[i], P.from_coeff(R.from_base(B.a[i]))));

    // poly_combine with a unit coefficient vector selects a single matrix.
    std::vector<Mat<PR<Fp>>> G{identity(P, 2), eb};
    std::vector<typename PR<Fp>::Elem> u{P.zero(), P.var_y()};
    const auto picked = poly_combine(P, G, u);
    CHECK(P.equal(picked.at(0, 0), P.mul(P.var_y(), eb.at(0, 0))));
    CHECK(P.equal(picked.at(1, 0), P.mul(P.var_y(), eb.at(1, 0))));
    CHECK(P.is_zero(picked.at(0, 1)));
    CHECK_THROWS_AS(poly_combine(P, G, std::vector<typename PR<Fp>::Elem>{P.one()}), error);
}
