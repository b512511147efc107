#include <doctest.h>

#include "hktlab/connection.hpp"
#include "hktlab/zoo.hpp"
#include "support.hpp"

using namespace hktlab;

TEST_CASE("quaternion structure matrices satisfy the relations") {
    for (int n : {1, 2, 3}) {
        const auto mats = quaternion_structure_matrices(n);
        const int d = 4 * n;
        CplxMat id(d);
        for (int i = 0; i < d; ++i) id.at(i, i) = Cplx(1.0);
        for (int r = 0; r < 3; ++r) {
            CplxMat sq = matmul(mats[static_cast<size_t>(r)], mats[static_cast<size_t>(r)]);
            for (int i = 0; i < d; ++i) sq.at(i, i) += Cplx(1.0);
            CHECK(mat_norm_inf(sq) == 0.0);
        }
        CHECK(mat_dist_inf(matmul(mats[0], mats[1]), mats[2]) == 0.0);
        CplxMat neg_i21 = matmul(mats[1], mats[0]);
        for (auto& v : neg_i21.e) v = -v;
        CHECK(mat_dist_inf(neg_i21, mats[2]) == 0.0);
    }
}

TEST_CASE("constructed geometries satisfy the structure invariants") {
    for (const auto& g : {flat_hyperkahler(1), hopf_lchk_cover(1), hopf_lchk_cover(2), hopf_hkt(1),
                          product_hkt(hopf_hkt(1), hopf_hkt(1))}) {
        for (const auto& x : testsupport::seeded_points(g.dim, 100)) {
            CHECK(quaternion_relations_residual(g, x) < 1e-10);
            CHECK(hermitian_compatibility_residual(g, x) < 1e-10);
        }
    }
}

TEST_CASE("the conformal cover has closed unit Lee form after the measured homothety") {
    for (int n : {1, 2}) {
        const auto g = hopf_lchk_cover(n);
        for (const auto& x : testsupport::seeded_points(4 * n, 20)) {
            CHECK(d(*g.lee_form).eval(x, 0).norm_inf() < 1e-12);
            const Jet nsq = norm_sq(g.metric.eval(x, 0), g.lee_form->eval(x, 0));
            CHECK(std::abs(nsq.value() - Cplx(1.0)) < 1e-9);
        }
        // the measured homothety is the expected 4: g = 4 r^-2 euclidean
        const Point x = testsupport::seeded_points(4 * n, 1)[0];
        const JetMat gm = g.metric.eval(x, 0);
        CHECK(std::abs(gm.at(0, 0).value().real() * x.radius_sq() - 4.0) < 1e-12);
    }
}

TEST_CASE("flat geometry carries zero Lee form and zero torsion") {
    const auto g = flat_hyperkahler(1);
    const Point x{0.9, -1.1, 0.6, 1.4};
    CHECK(g.lee_form->eval(x, 0).norm_inf() == 0.0);
    CHECK(bismut_torsion_form(g, x).norm_inf() == 0.0);
}

TEST_CASE("deck invariance") {
    SUBCASE("Hopf cover tensors are invariant") {
        const auto g = hopf_lchk_cover(1);
        for (const auto& x : testsupport::seeded_points(4, 10))
            CHECK(deck_invariance_residual(g, x) < 1e-9);
    }
    SUBCASE("sheared Hopf metric inherits the invariance") {
        const auto g = hopf_hkt(2);
        for (const auto& x : testsupport::seeded_points(8, 5))
            CHECK(deck_invariance_residual(g, x) < 1e-9);
    }
    SUBCASE("the flat metric scales instead") {
        const auto g = flat_hyperkahler(1);
        const Point x{1.0, 0.5, -0.5, 0.75};
        // pullback of a constant metric under q -> 2q is 4g, so the gap is 3|g|
        CHECK(std::abs(deck_invariance_residual(g, x) - 3.0) < 1e-12);
    }
}

TEST_CASE("geometry spec grammar") {
    CHECK(parse_geometry_spec("flat:n=2").dim == 8);
    CHECK(parse_geometry_spec("hopf-lchk:n=1").spec == "hopf-lchk:n=1");
    CHECK(parse_geometry_spec("hopf-hkt:n=1").quaternion_dim == 1);
    const auto p = parse_geometry_spec("product:hopf-hkt:n=1,hopf-hkt:n=1");
    CHECK(p.dim == 8);
    CHECK(p.quaternion_dim == 2);
    CHECK_THROWS_AS(parse_geometry_spec("torus:n=1"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_spec("flat:n=x"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_spec("flat:n=0"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_spec("product:flat:n=1"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_spec("product:product:flat:n=1,flat:n=1,flat:n=1"), ConfigError);
    // factors need symmetry data
    CHECK_THROWS_AS(parse_geometry_spec("product:flat:n=1,flat:n=1"), PreconditionError);
}

TEST_CASE("sampler is deterministic and respects the box") {
    SampleConfig cfg;
    cfg.points = 50;
    const auto a = sample_points(8, cfg);
    const auto b = sample_points(8, cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (int k = 0; k < 8; ++k) {
            CHECK(a[i][k] == b[i][k]);
            CHECK(std::abs(a[i][k]) >= 0.5);
            CHECK(std::abs(a[i][k]) <= 1.5);
        }
    SampleConfig other = cfg;
    other.seed = 43;
    const auto c = sample_points(8, other);
    bool differs = false;
    for (size_t i = 0; i < c.size() && !differs; ++i)
        for (int k = 0; k < 8 && !differs; ++k) differs = c[i][k] != a[i][k];
    CHECK(differs);
}

TEST_CASE("config validation") {
    SampleConfig cfg;
    cfg.points = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.points = 10;
    cfg.jet_order = 5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.jet_order = 3;
    cfg.tolerance = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("evaluation at the puncture raises") {
    const auto g = hopf_lchk_cover(1);
    const Point origin{0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(g.metric.eval(origin, 1), SingularPointError);
}
