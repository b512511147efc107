#include "hktlab/connection.hpp"

#include "hktlab/quaternionic.hpp"

#include <cmath>

namespace hktlab {

ConnectionCoefficients levi_civita(const MetricField& g, const Point& x) {
    const int d = g.dim;
    const JetMat gm = g.eval(x, 1);
    const JetMat ginv = jet_inverse(gm);
    ConnectionCoefficients conn;
    conn.flavor = ConnectionFlavor::LeviCivita;
    conn.dim = d;
    conn.gamma.assign(static_cast<size_t>(d) * d * d, Cplx(0.0));
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                Cplx acc(0.0);
                for (int l = 0; l < d; ++l)
                    acc += ginv.at(k, l).value() *
                           (gm.at(j, l).grad(i) + gm.at(i, l).grad(j) - gm.at(i, j).grad(l));
                acc *= 0.5;
                conn.at(k, i, j) = acc;
                conn.at(k, j, i) = acc;
            }
    return conn;
}

double hkt_condition_residual(const HypercomplexGeometry& g, const Point& x) {
    std::array<Form, 3> dfr;
    for (int r = 1; r <= 3; ++r)
        dfr[static_cast<size_t>(r - 1)] = d_r(g, r, fundamental_form(g, r)).eval(x, 0);
    double res = 0.0;
    res = std::max(res, (dfr[0] - dfr[1]).norm_inf());
    res = std::max(res, (dfr[1] - dfr[2]).norm_inf());
    res = std::max(res, (dfr[0] - dfr[2]).norm_inf());
    return res;
}

Form bismut_torsion_form(const HypercomplexGeometry& g, const Point& x, double gate) {
    std::array<Form, 3> c;
    for (int r = 1; r <= 3; ++r)
        c[static_cast<size_t>(r - 1)] = -d_r(g, r, fundamental_form(g, r)).eval(x, 0);
    const double spread = std::max((c[0] - c[1]).norm_inf(), (c[0] - c[2]).norm_inf());
    if (spread > gate)
        throw NotHktError("HKT condition fails at the requested point (spread " +
                          std::to_string(spread) + ")");
    return c[0];
}

ConnectionCoefficients bismut_connection(const HypercomplexGeometry& g, const Point& x,
                                         const Form* torsion, double gate) {
    Form c = torsion ? *torsion : bismut_torsion_form(g, x, gate);
    ConnectionCoefficients conn = levi_civita(g.metric, x);
    conn.flavor = ConnectionFlavor::Bismut;
    const int d = g.dim;
    const JetMat ginv = jet_inverse(g.metric.eval(x, 0));
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Cplx acc(0.0);
                for (int l = 0; l < d; ++l)
                    acc += ginv.at(k, l).value() * c.value_at({i, j, l});
                conn.at(k, i, j) += 0.5 * acc;
            }
    return conn;
}

CplxMat cov_deriv_vector(const ConnectionCoefficients& conn, const JetVec& v) {
    const int d = conn.dim;
    CplxMat r(d); // rows m, cols i: (nabla_{e_i} V)^m
    for (int m = 0; m < d; ++m)
        for (int i = 0; i < d; ++i) {
            Cplx acc = v[static_cast<size_t>(m)].grad(i);
            for (int k = 0; k < d; ++k) acc += conn.at(m, i, k) * v[static_cast<size_t>(k)].value();
            r.at(m, i) = acc;
        }
    return r;
}

CplxVec cov_deriv_vector_along(const ConnectionCoefficients& conn, const JetVec& v, const CplxVec& x) {
    const CplxMat nabla = cov_deriv_vector(conn, v);
    const int d = conn.dim;
    CplxVec r(static_cast<size_t>(d), Cplx(0.0));
    for (int m = 0; m < d; ++m)
        for (int i = 0; i < d; ++i) r[static_cast<size_t>(m)] += x[static_cast<size_t>(i)] * nabla.at(m, i);
    return r;
}

CplxMat cov_deriv_one_form(const ConnectionCoefficients& conn, const Form& theta) {
    const int d = conn.dim;
    CplxMat r(d); // rows i (direction), cols j
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Cplx acc = theta.coeff(j).grad(i);
            for (int k = 0; k < d; ++k) acc -= conn.at(k, i, j) * theta.coeff(k).value();
            r.at(i, j) = acc;
        }
    return r;
}

double cov_deriv_metric_residual(const ConnectionCoefficients& conn, const JetMat& g) {
    const int d = conn.dim;
    double res = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Cplx acc = g.at(j, k).grad(i);
                for (int l = 0; l < d; ++l)
                    acc -= conn.at(l, i, j) * g.at(l, k).value() + conn.at(l, i, k) * g.at(j, l).value();
                res = std::max(res, std::abs(acc));
            }
    return res;
}

double cov_deriv_endo_residual(const ConnectionCoefficients& conn, const JetMat& endo) {
    const int d = conn.dim;
    double res = 0.0;
    for (int i = 0; i < d; ++i)
        for (int m = 0; m < d; ++m)
            for (int j = 0; j < d; ++j) {
                Cplx acc = endo.at(m, j).grad(i);
                for (int l = 0; l < d; ++l)
                    acc += conn.at(m, i, l) * endo.at(l, j).value() - conn.at(l, i, j) * endo.at(m, l).value();
                res = std::max(res, std::abs(acc));
            }
    return res;
}

Form torsion_one_form(const HypercomplexGeometry& g, const Form& torsion, const Point& x,
                      int r, const CplxMat* frame_seed) {
    const int d = g.dim;
    const JetMat gm = g.metric.eval(x, 0);
    CplxMat gv(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gv.at(i, j) = gm.at(i, j).value();
    const CplxMat frame = gram_schmidt_frame(gv, frame_seed);
    const JetMat im = g.I(r).eval(x, 0);
    CplxMat iv(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) iv.at(i, j) = im.at(i, j).value();
    Form tau(d, 1, 0);
    for (int m = 0; m < d; ++m) {
        CplxVec em(static_cast<size_t>(d), Cplx(0.0));
        em[static_cast<size_t>(m)] = Cplx(1.0);
        const CplxVec irx = apply_endo_values(iv, em);
        Cplx acc(0.0);
        for (int i = 0; i < d; ++i) {
            CplxVec ei(frame.e.begin() + static_cast<long>(i) * d,
                       frame.e.begin() + static_cast<long>(i + 1) * d);
            const CplxVec irei = apply_endo_values(iv, ei);
            std::array<CplxVec, 3> args = {irx, ei, irei};
            acc += torsion.evaluate_values(std::span<const CplxVec>(args.data(), 3));
        }
        tau.coeff(m).value() = 0.5 * acc;
    }
    return tau;
}

double normalized_lambda(int m) {
    if (m < 1) throw DomainError("normalized_lambda requires m >= 1");
    return normalized_scaling(m, 1.0);
}

double normalized_scaling(int m, double tau_norm_sq) {
    if (m < 1) throw DomainError("normalized_scaling requires m >= 1");
    if (tau_norm_sq < 0.0) throw DomainError("negative norm");
    const double a = static_cast<double>(2 * m - 1);
    if (tau_norm_sq == 0.0) return 1.0 / a;
    // p(s) = tau_norm_sq s^3 + a s - 1, strictly increasing; Newton from a
    // bracketing start converges fast
    double s = 1.0 / a;
    for (int it = 0; it < 100; ++it) {
        const double p = tau_norm_sq * s * s * s + a * s - 1.0;
        const double dp = 3.0 * tau_norm_sq * s * s + a;
        const double step = p / dp;
        s -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return s;
}

} // namespace hktlab
