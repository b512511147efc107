#include "hktlab/zoo.hpp"

#include "hktlab/quaternionic.hpp"
#include "hktlab/sampling.hpp"
#include "hktlab/transform.hpp"

#include <cmath>

namespace hktlab {

namespace {

// 4x4 blocks of left multiplication by i, j, k on (x0, x1, x2, x3)
constexpr double kLeft[3][4][4] = {
    {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}},
    {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}},
    {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}},
};
// right multiplication, the fallback side
constexpr double kRight[3][4][4] = {
    {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}},
    {{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}},
    {{0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}},
};

std::array<CplxMat, 3> build_side(int n, const double blocks[3][4][4]) {
    std::array<CplxMat, 3> out;
    for (int r = 0; r < 3; ++r) {
        CplxMat m(4 * n);
        for (int q = 0; q < n; ++q)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) m.at(4 * q + a, 4 * q + b) = blocks[r][a][b];
        out[static_cast<size_t>(r)] = std::move(m);
    }
    return out;
}

bool relations_hold(const std::array<CplxMat, 3>& mats) {
    const int d = mats[0].n;
    CplxMat id(d);
    for (int i = 0; i < d; ++i) id.at(i, i) = Cplx(1.0);
    for (int r = 0; r < 3; ++r) {
        CplxMat sq = matmul(mats[static_cast<size_t>(r)], mats[static_cast<size_t>(r)]);
        for (int i = 0; i < d; ++i) sq.at(i, i) += Cplx(1.0);
        if (mat_norm_inf(sq) > 1e-12) return false;
    }
    const CplxMat i12 = matmul(mats[0], mats[1]);
    return mat_dist_inf(i12, mats[2]) <= 1e-12;
}

std::vector<Point> construction_probes(int dim) {
    SampleConfig cfg;
    cfg.points = 4;
    cfg.seed = 7;
    return sample_points(dim, cfg);
}

ScalarField radius_sq_field(int dim) {
    ScalarField f;
    f.dim = dim;
    f.eval = [dim](const Point& x, int order) {
        Jet acc = Jet::coordinate(x, 0, order);
        acc = acc * acc;
        for (int i = 1; i < dim; ++i) {
            const Jet xi = Jet::coordinate(x, i, order);
            acc += xi * xi;
        }
        return acc;
    };
    return f;
}

void check_chart_dim(int n) {
    if (n < 1) throw ConfigError("quaternionic dimension must be >= 1");
}

Jet embed_jet(const Jet& a, int new_dim, int off) {
    Jet r(new_dim, a.order());
    r.value() = a.value();
    const int d = a.dim();
    if (a.order() >= 1)
        for (int i = 0; i < d; ++i) r.grad(off + i) = a.grad(i);
    if (a.order() >= 2)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) r.hess(off + i, off + j) = a.hess(i, j);
    if (a.order() >= 3)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                for (int k = j; k < d; ++k) r.third(off + i, off + j, off + k) = a.third(i, j, k);
    return r;
}

Point slice_point(const Point& x, int off, int len) {
    std::vector<double> c(x.x.begin() + off, x.x.begin() + off + len);
    return Point(std::move(c));
}

} // namespace

std::array<CplxMat, 3> quaternion_structure_matrices(int n) {
    auto left = build_side(n, kLeft);
    if (relations_hold(left)) return left;
    auto right = build_side(n, kRight);
    if (relations_hold(right)) return right;
    throw Error("quaternion structure self-test failed on both sides");
}

HypercomplexGeometry flat_hyperkahler(int n) {
    check_chart_dim(n);
    const int d = 4 * n;
    HypercomplexGeometry g;
    g.dim = d;
    g.quaternion_dim = n;
    g.spec = "flat:n=" + std::to_string(n);
    MetricField metric;
    metric.dim = d;
    metric.eval = [d](const Point&, int order) {
        JetMat m(d, d, order);
        for (int i = 0; i < d; ++i) m.at(i, i) = Jet::constant(Cplx(1.0), d, order);
        return m;
    };
    g.metric = metric;
    const auto mats = quaternion_structure_matrices(n);
    for (int r = 0; r < 3; ++r) g.endo[static_cast<size_t>(r)] = EndoField::constant_matrix(mats[static_cast<size_t>(r)]);
    g.lee_form = form_field_zero(d, 1);
    // quarter of r^2 is a potential function; its differential the 1-form
    ScalarField mu;
    mu.dim = d;
    mu.eval = [d](const Point& x, int order) {
        Jet acc = Jet::coordinate(x, 0, order);
        acc = acc * acc;
        for (int i = 1; i < d; ++i) {
            const Jet xi = Jet::coordinate(x, i, order);
            acc += xi * xi;
        }
        acc *= Cplx(0.25);
        return acc;
    };
    g.potential_mu = mu;
    FormField omega;
    omega.dim = d;
    omega.degree = 1;
    omega.eval = [d](const Point& x, int order) {
        Form f(d, 1, order);
        for (int i = 0; i < d; ++i) f.coeff(i) = Jet::coordinate(x, i, order) * Cplx(0.5);
        return f;
    };
    g.potential_form = omega;
    return g;
}

HypercomplexGeometry hopf_lchk_cover(int n) {
    check_chart_dim(n);
    const int d = 4 * n;
    HypercomplexGeometry g;
    g.dim = d;
    g.quaternion_dim = n;
    g.spec = "hopf-lchk:n=" + std::to_string(n);
    g.hopf_family = true;

    const ScalarField r2 = radius_sq_field(d);
    FormField lee;
    lee.dim = d;
    lee.degree = 1;
    lee.eval = [d, r2](const Point& x, int order) {
        // -d log r^2, componentwise -2 x_m / r^2
        const Jet inv_r2 = recip(r2.eval(x, order));
        Form f(d, 1, order);
        for (int m = 0; m < d; ++m)
            f.coeff(m) = Jet::coordinate(x, m, order) * inv_r2 * Cplx(-2.0);
        return f;
    };

    // the homothety is measured, not assumed: with kappa = 1 the squared
    // Lee norm is constant, and dividing by it normalizes to 1
    MetricField unscaled;
    unscaled.dim = d;
    unscaled.eval = [d, r2](const Point& x, int order) {
        const Jet inv_r2 = recip(r2.eval(x, order));
        JetMat m(d, d, order);
        for (int i = 0; i < d; ++i) m.at(i, i) = inv_r2;
        return m;
    };
    const auto probes = construction_probes(d);
    double kappa = 0.0;
    for (size_t i = 0; i < probes.size(); ++i) {
        const Jet nsq = norm_sq(unscaled.eval(probes[i], 0), lee.eval(probes[i], 0));
        if (i == 0) kappa = nsq.value().real();
        else if (std::abs(nsq.value().real() - kappa) > 1e-9)
            throw Error("hopf_lchk_cover: Lee norm is not constant over probes");
    }
    MetricField metric;
    metric.dim = d;
    metric.eval = [d, r2, kappa](const Point& x, int order) {
        const Jet scaled = recip(r2.eval(x, order)) * Cplx(kappa);
        JetMat m(d, d, order);
        for (int i = 0; i < d; ++i) m.at(i, i) = scaled;
        return m;
    };

    g.metric = metric;
    const auto mats = quaternion_structure_matrices(n);
    for (int r = 0; r < 3; ++r) g.endo[static_cast<size_t>(r)] = EndoField::constant_matrix(mats[static_cast<size_t>(r)]);
    g.lee_form = lee;
    return g;
}

HypercomplexGeometry hopf_hkt(int n) {
    HypercomplexGeometry src = hopf_lchk_cover(n);
    HypercomplexGeometry g = hkt_from_lchk(src, construction_probes(src.dim));
    g.spec = "hopf-hkt:n=" + std::to_string(n);
    g.hopf_family = true;
    ScalarField mu;
    mu.dim = g.dim;
    const ScalarField r2 = radius_sq_field(g.dim);
    mu.eval = [r2](const Point& x, int order) { return log(r2.eval(x, order)); };
    g.potential_mu = mu;
    return g;
}

HypercomplexGeometry product_hkt(const HypercomplexGeometry& a, const HypercomplexGeometry& b) {
    if (!a.torsion_one_form_field || !b.torsion_one_form_field)
        throw PreconditionError("product_hkt: factor missing its normalized torsion 1-form");
    const int da = a.dim, db = b.dim, d = da + db;
    HypercomplexGeometry g;
    g.dim = d;
    g.quaternion_dim = a.quaternion_dim + b.quaternion_dim;
    g.spec = "product(" + a.spec + "," + b.spec + ")";

    auto ga = a.metric.eval, gb = b.metric.eval;
    MetricField metric;
    metric.dim = d;
    metric.eval = [ga, gb, da, db, d](const Point& x, int order) {
        const JetMat ma = ga(slice_point(x, 0, da), order);
        const JetMat mb = gb(slice_point(x, da, db), order);
        JetMat m(d, d, order);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j) m.at(i, j) = embed_jet(ma.at(i, j), d, 0) * Cplx(0.5);
        for (int i = 0; i < db; ++i)
            for (int j = 0; j < db; ++j) m.at(da + i, da + j) = embed_jet(mb.at(i, j), d, da) * Cplx(0.5);
        return m;
    };
    g.metric = metric;

    for (int r = 1; r <= 3; ++r) {
        CplxMat m(d);
        const CplxMat& ia = a.I(r).value;
        const CplxMat& ib = b.I(r).value;
        if (!a.I(r).constant || !b.I(r).constant)
            throw PreconditionError("product_hkt expects constant complex structures");
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j) m.at(i, j) = ia.at(i, j);
        for (int i = 0; i < db; ++i)
            for (int j = 0; j < db; ++j) m.at(da + i, da + j) = ib.at(i, j);
        g.endo[static_cast<size_t>(r - 1)] = EndoField::constant_matrix(std::move(m));
    }

    auto ta = a.torsion_one_form_field->eval, tb = b.torsion_one_form_field->eval;
    FormField th;
    th.dim = d;
    th.degree = 1;
    th.eval = [ta, tb, da, db, d](const Point& x, int order) {
        const Form fa = ta(slice_point(x, 0, da), order);
        const Form fb = tb(slice_point(x, da, db), order);
        Form f(d, 1, order);
        for (int i = 0; i < da; ++i) f.coeff(i) = embed_jet(fa.coeff(i), d, 0) * Cplx(0.5);
        for (int i = 0; i < db; ++i) f.coeff(da + i) = embed_jet(fb.coeff(i), d, da) * Cplx(0.5);
        return f;
    };
    g.torsion_one_form_field = th;
    g.potential_form = scale(Cplx(-2.0), th);

    if (a.potential_mu && b.potential_mu) {
        auto mua = a.potential_mu->eval, mub = b.potential_mu->eval;
        ScalarField mu;
        mu.dim = d;
        mu.eval = [mua, mub, da, db, d](const Point& x, int order) {
            const Jet ja = mua(slice_point(x, 0, da), order);
            const Jet jb = mub(slice_point(x, da, db), order);
            return (embed_jet(ja, d, 0) + embed_jet(jb, d, da)) * Cplx(0.5);
        };
        g.potential_mu = mu;
    }
    return g;
}

double deck_invariance_residual(const HypercomplexGeometry& g, const Point& x) {
    Point doubled = x;
    for (auto& c : doubled.x) c *= 2.0;
    double res = 0.0;
    {
        const JetMat m1 = g.metric.eval(x, 0);
        const JetMat m2 = g.metric.eval(doubled, 0);
        for (int i = 0; i < g.dim; ++i)
            for (int j = 0; j < g.dim; ++j)
                res = std::max(res, std::abs(4.0 * m2.at(i, j).value() - m1.at(i, j).value()));
    }
    for (int r = 1; r <= 3; ++r) {
        const JetMat m1 = g.I(r).eval(x, 0);
        const JetMat m2 = g.I(r).eval(doubled, 0);
        for (int i = 0; i < g.dim; ++i)
            for (int j = 0; j < g.dim; ++j)
                res = std::max(res, std::abs(m2.at(i, j).value() - m1.at(i, j).value()));
    }
    auto pull_one_form = [&](const FormField& f) {
        const Form f1 = f.eval(x, 0);
        const Form f2 = f.eval(doubled, 0);
        for (int m = 0; m < g.dim; ++m)
            res = std::max(res, std::abs(2.0 * f2.coeff(m).value() - f1.coeff(m).value()));
    };
    if (g.lee_form) pull_one_form(*g.lee_form);
    if (g.torsion_one_form_field) pull_one_form(*g.torsion_one_form_field);
    return res;
}

HypercomplexGeometry parse_geometry_spec(const std::string& spec) {
    auto parse_n = [](const std::string& s, const std::string& head) {
        const std::string prefix = head + ":n=";
        if (s.rfind(prefix, 0) != 0) throw ConfigError("bad geometry spec: " + s);
        const std::string tail = s.substr(prefix.size());
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("bad quaternionic dimension in spec: " + s);
        return std::stoi(tail);
    };
    if (spec.rfind("flat:", 0) == 0) return flat_hyperkahler(parse_n(spec, "flat"));
    if (spec.rfind("hopf-lchk:", 0) == 0) return hopf_lchk_cover(parse_n(spec, "hopf-lchk"));
    if (spec.rfind("hopf-hkt:", 0) == 0) return hopf_hkt(parse_n(spec, "hopf-hkt"));
    if (spec.rfind("product:", 0) == 0) {
        const std::string body = spec.substr(8);
        const size_t comma = body.find(',');
        if (comma == std::string::npos) throw ConfigError("product spec needs two factors: " + spec);
        const std::string fa = body.substr(0, comma);
        const std::string fb = body.substr(comma + 1);
        if (fa.rfind("product", 0) == 0 || fb.rfind("product", 0) == 0)
            throw ConfigError("product specs do not nest: " + spec);
        return product_hkt(parse_geometry_spec(fa), parse_geometry_spec(fb));
    }
    throw ConfigError("unknown geometry spec: " + spec);
}

} // namespace hktlab
