#include "hktlab/fields.hpp"

#include <cmath>

namespace hktlab {

EndoField EndoField::constant_matrix(CplxMat m) {
    EndoField f;
    f.dim = m.n;
    f.constant = true;
    f.value = std::move(m);
    f.cache = std::make_shared<ActCache>();
    const CplxMat mat = f.value;
    const int d = f.dim;
    f.eval = [mat, d](const Point&, int order) {
        JetMat jm(d, d, order);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) jm.at(i, j) = Jet::constant(mat.at(i, j), d, order);
        return jm;
    };
    return f;
}

namespace {

// remix[target][source] = (-1)^k det(endo[J_a, I_b]) over sorted tuples
std::vector<Cplx> build_remix(const CplxMat& endo, int dim, int degree) {
    const auto& mis = MultiIndexSet::get(dim, degree);
    const int n = mis.count();
    std::vector<Cplx> remix(static_cast<size_t>(n) * n, Cplx(0.0));
    const double sign = degree % 2 == 0 ? 1.0 : -1.0;
    // determinant by permutation expansion; degree <= 4
    std::vector<int> perm;
    for (int ti = 0; ti < n; ++ti) {
        const int* I = mis.tuple(ti);
        for (int sj = 0; sj < n; ++sj) {
            const int* J = mis.tuple(sj);
            Cplx det(0.0);
            perm.assign(static_cast<size_t>(degree), 0);
            for (int a = 0; a < degree; ++a) perm[static_cast<size_t>(a)] = a;
            if (degree == 0) {
                det = Cplx(1.0);
            } else {
                do {
                    std::vector<int> q = perm;
                    const int psign = sort_sign(q);
                    Cplx term(1.0);
                    for (int a = 0; a < degree; ++a)
                        term *= endo.at(J[a], I[perm[static_cast<size_t>(a)]]);
                    det += static_cast<double>(psign) * term;
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            remix[static_cast<size_t>(ti * n + sj)] = sign * det;
        }
    }
    return remix;
}

const std::vector<Cplx>& cached_remix(const EndoField& endo, int degree) {
    auto& cache = *endo.cache;
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.remix.find(degree);
    if (it == cache.remix.end())
        it = cache.remix.emplace(degree, build_remix(endo.value, endo.dim, degree)).first;
    return it->second;
}

Form apply_remix(const std::vector<Cplx>& remix, const Form& w) {
    Form r(w.dim(), w.degree(), w.order());
    const int n = w.count();
    for (int ti = 0; ti < n; ++ti) {
        Jet acc(w.dim(), w.order());
        for (int sj = 0; sj < n; ++sj) {
            const Cplx c = remix[static_cast<size_t>(ti * n + sj)];
            if (c == Cplx(0.0)) continue;
            acc += w.coeff(sj) * c;
        }
        r.coeff(ti) = acc;
    }
    return r;
}

} // namespace

Form act_on_form(const CplxMat& endo, const Form& w) {
    if (endo.n != w.dim()) throw DimensionError("act_on_form: dimension mismatch");
    if (w.degree() == 0) return w;
    return apply_remix(build_remix(endo, w.dim(), w.degree()), w);
}

Form act_on_form(const JetMat& endo, const Form& w) {
    if (endo.n() != w.dim()) throw DimensionError("act_on_form: dimension mismatch");
    const int k = w.degree();
    if (k == 0) return w;
    const int d = w.dim();
    const int ord = std::min(w.order(), endo.at(0, 0).order());
    const auto& mis = MultiIndexSet::get(d, k);
    Form r(d, k, ord);
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    std::vector<int> perm(static_cast<size_t>(k));
    for (int ti = 0; ti < mis.count(); ++ti) {
        const int* I = mis.tuple(ti);
        Jet acc(d, ord);
        for (int sj = 0; sj < mis.count(); ++sj) {
            const int* J = mis.tuple(sj);
            Jet det(d, ord);
            for (int a = 0; a < k; ++a) perm[static_cast<size_t>(a)] = a;
            do {
                std::vector<int> q = perm;
                const int psign = sort_sign(q);
                Jet term = endo.at(J[0], I[perm[0]]).truncated(ord);
                for (int a = 1; a < k; ++a)
                    term = term * endo.at(J[a], I[perm[static_cast<size_t>(a)]]).truncated(ord);
                if (psign < 0) term *= Cplx(-1.0);
                det += term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            acc += w.coeff(sj).truncated(ord) * det;
        }
        acc *= Cplx(sign);
        r.coeff(ti) = acc;
    }
    return r;
}

JetVec apply_endo(const JetMat& endo, const JetVec& v) {
    const int d = endo.n();
    JetVec r(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m) {
        Jet acc = endo.at(m, 0) * v[0];
        for (int k = 1; k < d; ++k) acc += endo.at(m, k) * v[static_cast<size_t>(k)];
        r[static_cast<size_t>(m)] = acc;
    }
    return r;
}

CplxVec apply_endo_values(const CplxMat& endo, const CplxVec& v) {
    const int d = endo.n;
    CplxVec r(static_cast<size_t>(d), Cplx(0.0));
    for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k) r[static_cast<size_t>(m)] += endo.at(m, k) * v[static_cast<size_t>(k)];
    return r;
}

FormField form_field_constant(Form w) {
    FormField f;
    f.dim = w.dim();
    f.degree = w.degree();
    auto stored = std::make_shared<Form>(std::move(w));
    f.eval = [stored](const Point&, int order) {
        if (order <= stored->order()) return stored->truncated(order);
        // constant coefficients: pad with zero derivatives
        Form r(stored->dim(), stored->degree(), order);
        for (int i = 0; i < r.count(); ++i)
            r.coeff(i) = Jet::constant(stored->coeff(i).value(), stored->dim(), order);
        return r;
    };
    return f;
}

FormField form_field_zero(int dim, int degree) {
    FormField f;
    f.dim = dim;
    f.degree = degree;
    f.eval = [dim, degree](const Point&, int order) { return Form(dim, degree, order); };
    return f;
}

FormField scalar_as_form(const ScalarField& s) {
    FormField f;
    f.dim = s.dim;
    f.degree = 0;
    auto eval = s.eval;
    const int dim = s.dim;
    f.eval = [eval, dim](const Point& x, int order) {
        Form r(dim, 0, order);
        r.coeff(0) = eval(x, order);
        return r;
    };
    return f;
}

FormField d(const FormField& w) {
    FormField f;
    f.dim = w.dim;
    f.degree = w.degree + 1;
    auto eval = w.eval;
    f.eval = [eval](const Point& x, int order) { return exterior_derivative(eval(x, order + 1)); };
    return f;
}

FormField wedge(const FormField& a, const FormField& b) {
    FormField f;
    f.dim = a.dim;
    f.degree = a.degree + b.degree;
    auto ea = a.eval, eb = b.eval;
    f.eval = [ea, eb](const Point& x, int order) { return wedge(ea(x, order), eb(x, order)); };
    return f;
}

FormField iota(const VectorField& v, const FormField& w) {
    FormField f;
    f.dim = w.dim;
    f.degree = w.degree - 1;
    auto ev = v.eval;
    auto ew = w.eval;
    f.eval = [ev, ew](const Point& x, int order) { return interior_product(ev(x, order), ew(x, order)); };
    return f;
}

FormField act(const EndoField& endo, const FormField& w) {
    FormField f;
    f.dim = w.dim;
    f.degree = w.degree;
    auto ew = w.eval;
    if (endo.constant) {
        EndoField e = endo; // shares the cache
        const int degree = w.degree;
        f.eval = [e, ew, degree](const Point& x, int order) {
            Form base = ew(x, order);
            if (degree == 0) return base;
            return apply_remix(cached_remix(e, degree), base);
        };
    } else {
        auto ee = endo.eval;
        f.eval = [ee, ew](const Point& x, int order) { return act_on_form(ee(x, order), ew(x, order)); };
    }
    return f;
}

FormField scale(Cplx s, const FormField& w) {
    FormField f;
    f.dim = w.dim;
    f.degree = w.degree;
    auto ew = w.eval;
    f.eval = [s, ew](const Point& x, int order) { return ew(x, order) * s; };
    return f;
}

FormField add(const FormField& a, const FormField& b) {
    FormField f;
    f.dim = a.dim;
    f.degree = a.degree;
    auto ea = a.eval, eb = b.eval;
    f.eval = [ea, eb](const Point& x, int order) { return ea(x, order) + eb(x, order); };
    return f;
}

FormField sub(const FormField& a, const FormField& b) {
    FormField f;
    f.dim = a.dim;
    f.degree = a.degree;
    auto ea = a.eval, eb = b.eval;
    f.eval = [ea, eb](const Point& x, int order) { return ea(x, order) - eb(x, order); };
    return f;
}

VectorField act_vec(const EndoField& endo, const VectorField& v) {
    VectorField r;
    r.dim = v.dim;
    auto ee = endo.eval;
    auto ev = v.eval;
    r.eval = [ee, ev](const Point& x, int order) { return apply_endo(ee(x, order), ev(x, order)); };
    return r;
}

VectorField scale_vec(Cplx s, const VectorField& v) {
    VectorField r;
    r.dim = v.dim;
    auto ev = v.eval;
    r.eval = [s, ev](const Point& x, int order) {
        JetVec out = ev(x, order);
        for (auto& j : out) j *= s;
        return out;
    };
    return r;
}

Form lie_derivative_form(const VectorField& v, const FormField& w, const Point& x, int order) {
    if (w.degree == 0) {
        FormField dw = d(w);
        Form r = interior_product(v.eval(x, order), dw.eval(x, order));
        return r;
    }
    FormField term1 = iota(v, d(w));
    FormField term2 = d(iota(v, w));
    return term1.eval(x, order) + term2.eval(x, order);
}

CplxMat lie_derivative_metric(const VectorField& v, const MetricField& g, const Point& x) {
    const int d = g.dim;
    const JetVec vj = v.eval(x, 1);
    const JetMat gj = g.eval(x, 1);
    CplxMat r(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Cplx acc(0.0);
            for (int k = 0; k < d; ++k) {
                acc += vj[static_cast<size_t>(k)].value() * gj.at(i, j).grad(k);
                acc += gj.at(k, j).value() * vj[static_cast<size_t>(k)].grad(i);
                acc += gj.at(i, k).value() * vj[static_cast<size_t>(k)].grad(j);
            }
            r.at(i, j) = acc;
        }
    return r;
}

CplxMat lie_derivative_endo(const VectorField& v, const EndoField& endo, const Point& x) {
    const int d = endo.dim;
    const JetVec vj = v.eval(x, 1);
    const JetMat ej = endo.eval(x, 1);
    CplxMat r(d);
    for (int m = 0; m < d; ++m)
        for (int j = 0; j < d; ++j) {
            Cplx acc(0.0);
            for (int k = 0; k < d; ++k) {
                acc += vj[static_cast<size_t>(k)].value() * ej.at(m, j).grad(k);
                acc -= ej.at(k, j).value() * vj[static_cast<size_t>(m)].grad(k);
                acc += ej.at(m, k).value() * vj[static_cast<size_t>(k)].grad(j);
            }
            r.at(m, j) = acc;
        }
    return r;
}

CplxVec lie_bracket(const VectorField& v, const VectorField& w, const Point& x) {
    const int d = v.dim;
    const JetVec vj = v.eval(x, 1);
    const JetVec wj = w.eval(x, 1);
    CplxVec r(static_cast<size_t>(d), Cplx(0.0));
    for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k)
            r[static_cast<size_t>(m)] += vj[static_cast<size_t>(k)].value() * wj[static_cast<size_t>(m)].grad(k) -
                                         wj[static_cast<size_t>(k)].value() * vj[static_cast<size_t>(m)].grad(k);
    return r;
}

JetVec sharp_at(const JetMat& g, const Form& alpha) {
    if (alpha.degree() != 1) throw DimensionError("sharp expects a 1-form");
    const JetMat ginv = jet_inverse(g);
    const int d = alpha.dim();
    JetVec v(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m) {
        Jet acc = ginv.at(m, 0) * alpha.coeff(0);
        for (int k = 1; k < d; ++k) acc += ginv.at(m, k) * alpha.coeff(k);
        v[static_cast<size_t>(m)] = acc;
    }
    return v;
}

Form flat_at(const JetMat& g, const JetVec& v, int dim) {
    const int ord = v[0].order();
    Form r(dim, 1, std::min(ord, g.at(0, 0).order()));
    for (int k = 0; k < dim; ++k) {
        Jet acc = g.at(k, 0).truncated(r.order()) * v[0].truncated(r.order());
        for (int m = 1; m < dim; ++m)
            acc += g.at(k, m).truncated(r.order()) * v[static_cast<size_t>(m)].truncated(r.order());
        r.coeff(k) = acc;
    }
    return r;
}

VectorField sharp(const MetricField& g, const FormField& alpha) {
    VectorField v;
    v.dim = g.dim;
    auto eg = g.eval;
    auto ea = alpha.eval;
    v.eval = [eg, ea](const Point& x, int order) { return sharp_at(eg(x, order), ea(x, order)); };
    return v;
}

FormField flat(const MetricField& g, const VectorField& v) {
    FormField f;
    f.dim = g.dim;
    f.degree = 1;
    auto eg = g.eval;
    auto ev = v.eval;
    const int dim = g.dim;
    f.eval = [eg, ev, dim](const Point& x, int order) { return flat_at(eg(x, order), ev(x, order), dim); };
    return f;
}

Jet norm_sq(const JetMat& g, const Form& alpha) {
    const JetVec v = sharp_at(g, alpha);
    Jet acc = alpha.coeff(0) * v[0];
    for (int k = 1; k < alpha.dim(); ++k) acc += alpha.coeff(k) * v[static_cast<size_t>(k)];
    return acc;
}

Jet norm_sq(const JetMat& g, const JetVec& v) {
    const int d = g.n();
    Jet acc(v[0].dim(), v[0].order());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            acc += g.at(i, j).truncated(acc.order()) * v[static_cast<size_t>(i)].truncated(acc.order()) *
                   v[static_cast<size_t>(j)].truncated(acc.order());
    return acc;
}

} // namespace hktlab
