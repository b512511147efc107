#include <doctest.h>

#include "hktlab/connection.hpp"
#include "hktlab/quaternionic.hpp"
#include "hktlab/transform.hpp"
#include "hktlab/zoo.hpp"
#include "support.hpp"

using namespace hktlab;

TEST_CASE("Levi-Civita of a flat metric vanishes and is symmetric") {
    const auto g = flat_hyperkahler(1);
    const Point x{0.4, 0.9, -0.2, 1.3};
    const ConnectionCoefficients lc = levi_civita(g.metric, x);
    double res = 0.0, asym = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                res = std::max(res, std::abs(lc.at(k, i, j)));
                asym = std::max(asym, std::abs(lc.at(k, i, j) - lc.at(k, j, i)));
            }
    CHECK(res < 1e-15);
    CHECK(asym < 1e-15);
}

TEST_CASE("metric compatibility of the Levi-Civita connection on the Hopf cover") {
    const auto g = hopf_lchk_cover(1);
    for (const auto& x : testsupport::seeded_points(4, 10)) {
        const ConnectionCoefficients lc = levi_civita(g.metric, x);
        CHECK(cov_deriv_metric_residual(lc, g.metric.eval(x, 1)) < 1e-9);
        double asym = 0.0;
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    asym = std::max(asym, std::abs(lc.at(k, i, j) - lc.at(k, j, i)));
        CHECK(asym < 1e-12);
    }
}

TEST_CASE("torsion of the shifted connection lowers exactly to c") {
    const auto g = hopf_hkt(1);
    for (const auto& x : testsupport::seeded_points(4, 5)) {
        const Form c = bismut_torsion_form(g, x);
        const ConnectionCoefficients conn = bismut_connection(g, x, &c);
        const JetMat gm = g.metric.eval(x, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    Cplx lowered(0.0);
                    for (int m = 0; m < 4; ++m)
                        lowered += (conn.at(m, i, j) - conn.at(m, j, i)) * gm.at(m, k).value();
                    CHECK(std::abs(lowered - c.value_at({i, j, k})) < 1e-8);
                }
    }
}

TEST_CASE("the shifted connection is hyperhermitian and parallelizes the dual field") {
    const auto g = hopf_hkt(1);
    const VectorField v = sharp(g.metric, *g.torsion_one_form_field);
    for (const auto& x : testsupport::seeded_points(4, 5)) {
        const Form c = bismut_torsion_form(g, x);
        const ConnectionCoefficients conn = bismut_connection(g, x, &c);
        CHECK(cov_deriv_metric_residual(conn, g.metric.eval(x, 1)) < 1e-8);
        for (int r = 1; r <= 3; ++r)
            CHECK(cov_deriv_endo_residual(conn, g.I(r).eval(x, 1)) < 1e-8);
        CHECK(mat_norm_inf(cov_deriv_vector(conn, v.eval(x, 1))) < 1e-8);
    }
}

TEST_CASE("torsion 3-form") {
    SUBCASE("vanishes on flat space") {
        const auto g = flat_hyperkahler(2);
        const Point x = testsupport::seeded_points(8, 1)[0];
        CHECK(bismut_torsion_form(g, x).norm_inf() < 1e-14);
    }
    SUBCASE("matches the wedge expression in the conformal data") {
        const auto lchk = hopf_lchk_cover(1);
        const auto hkt = hopf_hkt(1);
        const FormField& th = *lchk.lee_form;
        for (const auto& x : testsupport::seeded_points(4, 5)) {
            const Form c = bismut_torsion_form(hkt, x);
            // -(th_1 ^ F_1 + th_2 ^ F_2 + th_3 ^ F_3 - 2 th_1 ^ th_2 ^ th_3)/2
            Form acc(4, 3, 0);
            std::array<Form, 3> thr, fr;
            for (int r = 1; r <= 3; ++r) {
                thr[static_cast<size_t>(r - 1)] = act(lchk.I(r), th).eval(x, 0);
                fr[static_cast<size_t>(r - 1)] = fundamental_form(lchk, r).eval(x, 0);
            }
            for (int r = 0; r < 3; ++r) acc += wedge(thr[static_cast<size_t>(r)], fr[static_cast<size_t>(r)]);
            acc -= wedge(wedge(thr[0], thr[1]), thr[2]) * Cplx(2.0);
            CHECK((c + acc * Cplx(0.5)).norm_inf() < 1e-12);
        }
    }
    SUBCASE("refuses a geometry violating the agreement gate") {
        // in dimension 4 every hyperhermitian structure meets the condition,
        // so the counterexample needs n = 2
        const auto lchk = hopf_lchk_cover(2);
        const Point x = testsupport::seeded_points(8, 1)[0];
        CHECK_THROWS_AS(bismut_torsion_form(lchk, x), NotHktError);
    }
}

TEST_CASE("torsion 1-form trace") {
    SUBCASE("vanishes on flat space") {
        const auto g = flat_hyperkahler(1);
        const Point x{1.0, -0.5, 0.5, 0.75};
        const Form c = bismut_torsion_form(g, x);
        CHECK(torsion_one_form(g, c, x).norm_inf() < 1e-14);
    }
    SUBCASE("is independent of r and of the frame") {
        const auto g = hopf_hkt(2);
        SplitMix64 rng(77);
        for (const auto& x : testsupport::seeded_points(8, 3)) {
            const Form c = bismut_torsion_form(g, x);
            const Form t1 = torsion_one_form(g, c, x, 1);
            const Form t2 = torsion_one_form(g, c, x, 2);
            const Form t3 = torsion_one_form(g, c, x, 3);
            CHECK((t1 - t2).norm_inf() < 1e-9);
            CHECK((t1 - t3).norm_inf() < 1e-9);
            // a randomly shuffled seed frame must give the same trace
            CplxMat seed(8);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) seed.at(i, j) = Cplx(testsupport::uniform_pm(rng));
            for (int i = 0; i < 8; ++i) seed.at(i, i) += Cplx(4.0);
            const Form talt = torsion_one_form(g, c, x, 1, &seed);
            CHECK((t1 - talt).norm_inf() < 1e-9);
        }
    }
    SUBCASE("measures -2m theta_hat on the sheared Hopf family") {
        for (int n : {1, 2}) {
            const auto g = hopf_hkt(n);
            const Point x = testsupport::seeded_points(4 * n, 1)[0];
            const Form c = bismut_torsion_form(g, x);
            const Form tau = torsion_one_form(g, c, x);
            const Form th = g.torsion_one_form_field->eval(x, 0);
            CHECK((tau + th * Cplx(2.0 * n)).norm_inf() < 1e-12);
        }
    }
}

TEST_CASE("positive root of the normalization cubic") {
    // bisection oracle for lambda^3 + (2m-1) lambda - 1 = 0
    auto bisect = [](int m) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double p = mid * mid * mid + (2.0 * m - 1.0) * mid - 1.0;
            (p > 0.0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    CHECK(std::abs(normalized_lambda(1) - 0.6823278038) < 1e-9);
    CHECK(std::abs(normalized_lambda(2) - 0.3221853546) < 1e-9);
    for (int m = 1; m <= 8; ++m) {
        const double lam = normalized_lambda(m);
        CHECK(std::abs(lam - bisect(m)) < 1e-12);
        CHECK(std::abs(lam * (2.0 * m - 1.0 + lam * lam) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(normalized_lambda(0), DomainError);
}

TEST_CASE("the two HKT characterizations agree in verdict pointwise") {
    // d_r F_r spread small iff del_1(F_2 + i F_3) small
    const auto yes = hopf_hkt(2);
    const auto no = hopf_lchk_cover(2);
    for (const auto& x : testsupport::seeded_points(8, 5)) {
        for (const auto* g : {&yes, &no}) {
            const double spread = hkt_condition_residual(*g, x);
            FormField f23 = add(fundamental_form(*g, 2), scale(Cplx(0.0, 1.0), fundamental_form(*g, 3)));
            const double holo = del_r(*g, 1, f23).eval(x, 0).norm_inf();
            CHECK((spread < 1e-10) == (holo < 1e-10));
        }
    }
}

TEST_CASE("pointwise normalization scaling solves its cubic") {
    for (int m : {1, 2, 3})
        for (double tn : {0.0, 0.5, 2.0, 4.5}) {
            const double s = normalized_scaling(m, tn);
            CHECK(s > 0.0);
            CHECK(std::abs(s * (2.0 * m - 1.0 + s * s * tn) - 1.0) < 1e-12);
        }
    CHECK(std::abs(normalized_scaling(1, 1.0) - normalized_lambda(1)) < 1e-15);
}

TEST_CASE("directional covariant derivative contracts the full tensor") {
    const auto g = hopf_lchk_cover(1);
    const VectorField v = sharp(g.metric, *g.lee_form);
    const Point x = testsupport::seeded_points(4, 1)[0];
    const ConnectionCoefficients lc = levi_civita(g.metric, x);
    const JetVec vj = v.eval(x, 1);
    const CplxMat full = cov_deriv_vector(lc, vj);
    for (int i = 0; i < 4; ++i) {
        CplxVec dir(4, Cplx(0.0));
        dir[static_cast<size_t>(i)] = Cplx(1.0);
        const CplxVec along = cov_deriv_vector_along(lc, vj, dir);
        for (int m = 0; m < 4; ++m)
            CHECK(std::abs(along[static_cast<size_t>(m)] - full.at(m, i)) < 1e-14);
    }
}
