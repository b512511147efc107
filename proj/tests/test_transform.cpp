#include <doctest.h>

#include "hktlab/connection.hpp"
#include "hktlab/quaternionic.hpp"
#include "hktlab/transform.hpp"
#include "hktlab/zoo.hpp"
#include "support.hpp"

using namespace hktlab;

TEST_CASE("shear to the torsion metric rejects a vanishing Lee form") {
    const auto g = flat_hyperkahler(1);
    CHECK_THROWS_AS(hkt_from_lchk(g, testsupport::seeded_points(4, 3)), PreconditionError);
}

TEST_CASE("complex combination of fundamental forms under the shear") {
    const auto lchk = hopf_lchk_cover(1);
    const auto hkt = hopf_hkt(1);
    const FormField& th = *lchk.lee_form;
    for (const auto& x : testsupport::seeded_points(4, 5)) {
        // Fhat_2 + i Fhat_3 = F_2 + i F_3 - (theta + i theta_1)^(theta_2 + i theta_3)/2
        Form lhs = fundamental_form(hkt, 2).eval(x, 0);
        lhs += fundamental_form(hkt, 3).eval(x, 0) * Cplx(0.0, 1.0);
        Form rhs = fundamental_form(lchk, 2).eval(x, 0);
        rhs += fundamental_form(lchk, 3).eval(x, 0) * Cplx(0.0, 1.0);
        Form a = th.eval(x, 0) + act(lchk.I(1), th).eval(x, 0) * Cplx(0.0, 1.0);
        Form b = act(lchk.I(2), th).eval(x, 0) + act(lchk.I(3), th).eval(x, 0) * Cplx(0.0, 1.0);
        rhs -= wedge(a, b) * Cplx(0.5);
        CHECK((lhs - rhs).norm_inf() < 1e-13);
    }
}

TEST_CASE("the two shears cancel on metric coefficients") {
    const auto probes = testsupport::seeded_points(4, 3);
    const auto lchk = hopf_lchk_cover(1);
    const auto hkt = hkt_from_lchk(lchk, probes);
    const auto back = lchk_from_hkt(hkt, probes);
    for (const auto& x : testsupport::seeded_points(4, 10)) {
        const JetMat a = lchk.metric.eval(x, 0);
        const JetMat b = back.metric.eval(x, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(a.at(i, j).value() - b.at(i, j).value()) < 1e-12);
    }
    // and the reverse composition
    const auto fwd = hkt_from_lchk(back, probes);
    for (const auto& x : testsupport::seeded_points(4, 10)) {
        const JetMat a = hkt.metric.eval(x, 0);
        const JetMat b = fwd.metric.eval(x, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(a.at(i, j).value() - b.at(i, j).value()) < 1e-12);
    }
}

TEST_CASE("inverse shear of the sheared Hopf metric is locally conformal") {
    const auto probes = testsupport::seeded_points(8, 3);
    const auto derived = lchk_from_hkt(hopf_hkt(2), probes);
    for (const auto& x : testsupport::seeded_points(8, 5)) {
        const FormField& th = *derived.lee_form;
        for (int r = 1; r <= 3; ++r) {
            FormField fr = fundamental_form(derived, r);
            CHECK((d(fr).eval(x, 0) - wedge(th, fr).eval(x, 0)).norm_inf() < 1e-8);
        }
        const Jet nsq = norm_sq(derived.metric.eval(x, 0), th.eval(x, 0));
        CHECK(std::abs(nsq.value() - Cplx(1.0)) < 1e-9);
    }
}

TEST_CASE("inverse shear of the product is not locally conformal") {
    const auto probes = testsupport::seeded_points(8, 3);
    const auto p = product_hkt(hopf_hkt(1), hopf_hkt(1));
    const auto derived = lchk_from_hkt(p, probes);
    double worst = 0.0;
    for (const auto& x : testsupport::seeded_points(8, 5)) {
        const FormField& th = *derived.lee_form;
        FormField f1 = fundamental_form(derived, 1);
        worst = std::max(worst, (d(f1).eval(x, 0) - wedge(th, f1).eval(x, 0)).norm_inf());
    }
    CHECK(worst > 1e-2);
}

TEST_CASE("cubic expression for the torsion") {
    SUBCASE("matches on the sheared Hopf metric") {
        const auto g = hopf_hkt(1);
        for (const auto& x : testsupport::seeded_points(4, 5)) {
            const Form c = bismut_torsion_form(g, x);
            CHECK((c - cubic_torsion_expected(g, *g.torsion_one_form_field, x)).norm_inf() < 1e-8);
        }
    }
    SUBCASE("fails on the product by a definite margin") {
        const auto p = product_hkt(hopf_hkt(1), hopf_hkt(1));
        double low = 1e300;
        for (const auto& x : testsupport::seeded_points(8, 5)) {
            const Form c = bismut_torsion_form(p, x);
            low = std::min(low, (c - cubic_torsion_expected(p, *p.torsion_one_form_field, x)).norm_inf());
        }
        CHECK(low > 1e-2);
    }
    SUBCASE("zero input gives zero") {
        const auto g = flat_hyperkahler(1);
        const Point x{0.6, -0.8, 1.1, 0.5};
        CHECK(cubic_torsion_expected(g, form_field_zero(4, 1), x).norm_inf() == 0.0);
    }
}

TEST_CASE("derivative of the torsion against the wedge-square expansion") {
    SUBCASE("vanishes identically in dimension 4") {
        const auto lchk = hopf_lchk_cover(1);
        const auto hkt = hopf_hkt(1);
        for (const auto& x : testsupport::seeded_points(4, 5)) {
            CHECK(dc_expected(lchk, x).norm_inf() < 1e-12);
            FormField cf = scale(Cplx(-1.0), d_r(hkt, 1, fundamental_form(hkt, 1)));
            CHECK(d(cf).eval(x, 0).norm_inf() < 1e-12);
        }
    }
    SUBCASE("agrees with the computed dc in dimension 8 and is nonzero") {
        const auto lchk = hopf_lchk_cover(2);
        const auto hkt = hopf_hkt(2);
        for (const auto& x : testsupport::seeded_points(8, 3)) {
            const Form expect = dc_expected(lchk, x);
            FormField cf = scale(Cplx(-1.0), d_r(hkt, 1, fundamental_form(hkt, 1)));
            const Form dc = d(cf).eval(x, 0);
            CHECK((dc - expect).norm_inf() < 1e-8);
            CHECK(dc.norm_inf() > 0.1);
        }
    }
}

TEST_CASE("shear preconditions check the symmetry data") {
    // strip the torsion form: the inverse shear must refuse
    auto g = hopf_hkt(1);
    g.torsion_one_form_field.reset();
    CHECK_THROWS_AS(lchk_from_hkt(g, testsupport::seeded_points(4, 2)), PreconditionError);
}

TEST_CASE("the same dual field serves both metrics of the sheared pair") {
    const auto lchk = hopf_lchk_cover(2);
    const auto hkt = hkt_from_lchk(lchk, testsupport::seeded_points(8, 3));
    const VectorField v_l = sharp(lchk.metric, *lchk.lee_form);
    const VectorField v_h = sharp(hkt.metric, *hkt.torsion_one_form_field);
    for (const auto& x : testsupport::seeded_points(8, 10)) {
        const JetVec a = v_l.eval(x, 0);
        const JetVec b = v_h.eval(x, 0);
        for (int m = 0; m < 8; ++m)
            CHECK(std::abs(a[static_cast<size_t>(m)].value() - b[static_cast<size_t>(m)].value()) <
                  1e-9);
    }
}
