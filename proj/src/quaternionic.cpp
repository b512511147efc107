#include "hktlab/quaternionic.hpp"

#include "hktlab/geometry.hpp"

#include <cmath>

namespace hktlab {

double quaternion_relations_residual(const HypercomplexGeometry& g, const Point& x) {
    std::array<CplxMat, 3> iv;
    for (int r = 1; r <= 3; ++r) {
        const JetMat jm = g.I(r).eval(x, 0);
        CplxMat m(g.dim);
        for (int i = 0; i < g.dim; ++i)
            for (int j = 0; j < g.dim; ++j) m.at(i, j) = jm.at(i, j).value();
        iv[static_cast<size_t>(r - 1)] = std::move(m);
    }
    CplxMat id(g.dim);
    for (int i = 0; i < g.dim; ++i) id.at(i, i) = Cplx(1.0);
    double res = 0.0;
    for (int r = 0; r < 3; ++r) {
        CplxMat sq = matmul(iv[static_cast<size_t>(r)], iv[static_cast<size_t>(r)]);
        for (int i = 0; i < g.dim; ++i) sq.at(i, i) += Cplx(1.0);
        res = std::max(res, mat_norm_inf(sq));
    }
    CplxMat i12 = matmul(iv[0], iv[1]);
    CplxMat i21 = matmul(iv[1], iv[0]);
    res = std::max(res, mat_dist_inf(i12, iv[2]));
    for (auto& v : i21.e) v = -v;
    res = std::max(res, mat_dist_inf(i21, iv[2]));
    return res;
}

double hermitian_compatibility_residual(const HypercomplexGeometry& g, const Point& x) {
    const JetMat gm = g.metric.eval(x, 0);
    double res = 0.0;
    for (int r = 1; r <= 3; ++r) {
        const JetMat im = g.I(r).eval(x, 0);
        for (int a = 0; a < g.dim; ++a)
            for (int b = 0; b < g.dim; ++b) {
                Cplx acc(0.0);
                for (int i = 0; i < g.dim; ++i)
                    for (int j = 0; j < g.dim; ++j)
                        acc += im.at(i, a).value() * gm.at(i, j).value() * im.at(j, b).value();
                acc -= gm.at(a, b).value();
                res = std::max(res, std::abs(acc));
            }
    }
    return res;
}

FormField d_r(const HypercomplexGeometry& g, int r, const FormField& w) {
    const double sign = w.degree % 2 == 0 ? 1.0 : -1.0;
    return scale(Cplx(sign), act(g.I(r), d(act(g.I(r), w))));
}

FormField del_r(const HypercomplexGeometry& g, int r, const FormField& w) {
    return scale(Cplx(0.5), add(d(w), scale(Cplx(0.0, 1.0), d_r(g, r, w))));
}

FormField delbar_r(const HypercomplexGeometry& g, int r, const FormField& w) {
    return scale(Cplx(0.5), sub(d(w), scale(Cplx(0.0, 1.0), d_r(g, r, w))));
}

FormField fundamental_form(const HypercomplexGeometry& g, int r) {
    FormField f;
    f.dim = g.dim;
    f.degree = 2;
    auto em = g.metric.eval;
    auto ee = g.I(r).eval;
    const int d = g.dim;
    f.eval = [em, ee, d](const Point& x, int order) {
        const JetMat gm = em(x, order);
        const JetMat im = ee(x, order);
        Form out(d, 2, order);
        const auto& mis = out.indices();
        for (int rk = 0; rk < mis.count(); ++rk) {
            const int a = mis.at(rk, 0), b = mis.at(rk, 1);
            // F(e_a, e_b) = g(I e_a, e_b) = I^k_a g_{kb}
            Jet acc = im.at(0, a) * gm.at(0, b);
            for (int k = 1; k < d; ++k) acc += im.at(k, a) * gm.at(k, b);
            out.coeff(rk) = acc;
        }
        return out;
    };
    return f;
}

FormField rotated_form(const HypercomplexGeometry& g, int r, const FormField& theta) {
    return act(g.I(r), theta);
}

LeeExtraction lee_form_extract(const HypercomplexGeometry& g, const Point& x, double tol) {
    const int dim = g.dim;
    const auto& m3 = MultiIndexSet::get(dim, 3);
    const int rows_per_r = m3.count();
    std::vector<std::vector<Cplx>> cols(static_cast<size_t>(dim),
                                        std::vector<Cplx>(static_cast<size_t>(3 * rows_per_r), Cplx(0.0)));
    std::vector<Cplx> rhs(static_cast<size_t>(3 * rows_per_r), Cplx(0.0));
    std::array<Form, 3> f_values;
    std::array<Form, 3> df_values;
    for (int r = 1; r <= 3; ++r) {
        FormField fr = fundamental_form(g, r);
        f_values[static_cast<size_t>(r - 1)] = fr.eval(x, 0);
        df_values[static_cast<size_t>(r - 1)] = d(fr).eval(x, 0);
    }
    // (theta ^ F)_{abc} = theta_a F_{bc} - theta_b F_{ac} + theta_c F_{ab}
    for (int r = 0; r < 3; ++r) {
        const auto& fv = f_values[static_cast<size_t>(r)];
        const auto& m2 = fv.indices();
        for (int rk = 0; rk < rows_per_r; ++rk) {
            const int a = m3.at(rk, 0), b = m3.at(rk, 1), c = m3.at(rk, 2);
            const size_t row = static_cast<size_t>(r * rows_per_r + rk);
            cols[static_cast<size_t>(a)][row] += fv.coeff(m2.rank({b, c})).value();
            cols[static_cast<size_t>(b)][row] -= fv.coeff(m2.rank({a, c})).value();
            cols[static_cast<size_t>(c)][row] += fv.coeff(m2.rank({a, b})).value();
            rhs[row] = df_values[static_cast<size_t>(r)].coeff(rk).value();
        }
    }
    const std::vector<Cplx> theta = least_squares(cols, rhs);
    LeeExtraction out;
    out.theta = Form(dim, 1, 0);
    for (int k = 0; k < dim; ++k) out.theta.coeff(k).value() = theta[static_cast<size_t>(k)];
    out.residual = 0.0;
    for (int r = 0; r < 3; ++r) {
        double res = 0.0;
        for (int rk = 0; rk < rows_per_r; ++rk) {
            Cplx lhs(0.0);
            const size_t row = static_cast<size_t>(r * rows_per_r + rk);
            for (int k = 0; k < dim; ++k) lhs += cols[static_cast<size_t>(k)][row] * theta[static_cast<size_t>(k)];
            res = std::max(res, std::abs(lhs - rhs[row]));
        }
        out.per_r[static_cast<size_t>(r)] = res;
        out.residual = std::max(out.residual, res);
    }
    if (out.residual > tol)
        throw NotLchkError("dF_r is not of the form theta ^ F_r (residual " +
                           std::to_string(out.residual) + ")");
    return out;
}

} // namespace hktlab
