#include "hktlab/form.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hktlab {

Form::Form(int dim, int degree, int order) : dim_(dim), degree_(degree), order_(order) {
    if (degree < 0 || degree > dim) throw DimensionError("form degree out of range");
    c_.assign(static_cast<size_t>(binomial(dim, degree)), Jet(dim, order));
}

Cplx Form::value_at(std::vector<int> idx) const {
    if (static_cast<int>(idx.size()) != degree_) throw DimensionError("index tuple length != degree");
    const int sign = sort_sign(idx);
    if (sign == 0) return Cplx(0.0);
    return static_cast<double>(sign) * c_[static_cast<size_t>(indices().rank(idx.data()))].value();
}

void Form::set(std::vector<int> idx, Cplx v) {
    const int sign = sort_sign(idx);
    if (sign == 0) throw DimensionError("repeated index in form coefficient");
    c_[static_cast<size_t>(indices().rank(idx.data()))].value() = static_cast<double>(sign) * v;
}

Form& Form::operator+=(const Form& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionError("form shape mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Form& Form::operator-=(const Form& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionError("form shape mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Form& Form::operator*=(Cplx s) {
    for (auto& c : c_) c *= s;
    return *this;
}

Form Form::operator-() const {
    Form r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

double Form::norm_inf() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c.value()));
    return m;
}

Form Form::truncated(int q) const {
    Form r(dim_, degree_, q);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].truncated(q);
    return r;
}

namespace {

// iterate permutations of {0..k-1} with signs; k <= 4 so the table is tiny
void for_each_permutation(int k, const std::function<void(const int*, int)>& fn) {
    int perm[4] = {0, 1, 2, 3};
    std::vector<int> p(perm, perm + k);
    std::sort(p.begin(), p.end());
    do {
        std::vector<int> q = p;
        int sign = sort_sign(q);
        fn(p.data(), sign);
    } while (std::next_permutation(p.begin(), p.end()));
}

} // namespace

Jet Form::evaluate(std::span<const JetVec> args) const {
    if (static_cast<int>(args.size()) != degree_) throw DimensionError("argument count != degree");
    const int ord = degree_ == 0 ? order_ : std::min(order_, args[0][0].order());
    Jet acc(dim_, ord);
    if (degree_ == 0) return c_[0].truncated(ord);
    const auto& mis = indices();
    // omega(X_1..X_k) = sum_I c_I det(X_b[i_a])
    for (int r = 0; r < mis.count(); ++r) {
        const int* I = mis.tuple(r);
        Jet det(dim_, ord);
        for_each_permutation(degree_, [&](const int* p, int sign) {
            Jet term = args[static_cast<size_t>(p[0])][static_cast<size_t>(I[0])].truncated(ord);
            for (int a = 1; a < degree_; ++a)
                term = term * args[static_cast<size_t>(p[a])][static_cast<size_t>(I[a])].truncated(ord);
            if (sign < 0) term *= Cplx(-1.0);
            det += term;
        });
        acc += c_[static_cast<size_t>(r)].truncated(ord) * det;
    }
    return acc;
}

Cplx Form::evaluate_values(std::span<const CplxVec> args) const {
    if (static_cast<int>(args.size()) != degree_) throw DimensionError("argument count != degree");
    if (degree_ == 0) return c_[0].value();
    const auto& mis = indices();
    Cplx acc(0.0);
    for (int r = 0; r < mis.count(); ++r) {
        const int* I = mis.tuple(r);
        Cplx det(0.0);
        for_each_permutation(degree_, [&](const int* p, int sign) {
            Cplx term = args[static_cast<size_t>(p[0])][static_cast<size_t>(I[0])];
            for (int a = 1; a < degree_; ++a)
                term *= args[static_cast<size_t>(p[a])][static_cast<size_t>(I[a])];
            det += static_cast<double>(sign) * term;
        });
        acc += c_[static_cast<size_t>(r)].value() * det;
    }
    return acc;
}

Form wedge(const Form& a, const Form& b) {
    if (a.dim() != b.dim()) throw DimensionError("wedge: dimension mismatch");
    const int d = a.dim(), ka = a.degree(), kb = b.degree();
    if (ka + kb > d) throw DimensionError("wedge: degree exceeds dimension");
    const int ord = std::min(a.order(), b.order());
    Form r(d, ka + kb, ord);
    if (ka == 0 || kb == 0) {
        // scalar multiple
        const Form& form = ka == 0 ? b : a;
        const Jet s = (ka == 0 ? a.coeff(0) : b.coeff(0)).truncated(ord);
        for (int i = 0; i < form.count(); ++i) r.coeff(i) = s * form.coeff(i).truncated(ord);
        return r;
    }
    const auto& mk = r.indices();
    const auto& ma = a.indices();
    const auto& mb = b.indices();
    const int n = ka + kb;
    // enumerate position subsets of size ka via combinations of {0..n-1}
    const auto& splits = MultiIndexSet::get(n, ka);
    std::vector<int> ia(static_cast<size_t>(ka)), ib(static_cast<size_t>(kb));
    for (int rk = 0; rk < mk.count(); ++rk) {
        const int* K = mk.tuple(rk);
        Jet acc(d, ord);
        for (int s = 0; s < splits.count(); ++s) {
            const int* P = splits.tuple(s);
            int sign = 0, pa = 0;
            for (int t = 0; t < ka; ++t) {
                ia[static_cast<size_t>(t)] = K[P[t]];
                sign += P[t] - t;
            }
            for (int t = 0, u = 0; t < n; ++t) {
                if (pa < ka && P[pa] == t) { ++pa; continue; }
                ib[static_cast<size_t>(u++)] = K[t];
            }
            Jet term = a.coeff(ma.rank(ia.data())).truncated(ord) * b.coeff(mb.rank(ib.data())).truncated(ord);
            if (sign % 2 != 0) term *= Cplx(-1.0);
            acc += term;
        }
        r.coeff(rk) = acc;
    }
    return r;
}

Form exterior_derivative(const Form& w) {
    if (w.order() < 1) throw UnsupportedOrderError("exterior derivative needs coefficient jets of order >= 1");
    const int d = w.dim(), k = w.degree();
    if (k + 1 > d) throw DimensionError("exterior derivative: degree exceeds dimension");
    Form r(d, k + 1, w.order() - 1);
    const auto& mr = r.indices();
    const auto& mw = w.indices();
    std::vector<int> sub(static_cast<size_t>(std::max(k, 1)));
    for (int rk = 0; rk < mr.count(); ++rk) {
        const int* J = mr.tuple(rk);
        Jet acc(d, w.order() - 1);
        for (int t = 0; t <= k; ++t) {
            for (int u = 0, v = 0; u <= k; ++u)
                if (u != t) sub[static_cast<size_t>(v++)] = J[u];
            Jet term = w.coeff(k == 0 ? 0 : mw.rank(sub.data())).derivative(J[t]);
            if (t % 2 != 0) term *= Cplx(-1.0);
            acc += term;
        }
        r.coeff(rk) = acc;
    }
    return r;
}

Form interior_product(const JetVec& v, const Form& w) {
    if (w.degree() < 1) throw DimensionError("interior product of a 0-form");
    if (static_cast<int>(v.size()) != w.dim()) throw DimensionError("interior product: dimension mismatch");
    const int d = w.dim(), k = w.degree();
    const int ord = std::min(w.order(), v[0].order());
    Form r(d, k - 1, ord);
    const auto& mr = r.indices();
    const auto& mw = w.indices();
    std::vector<int> full(static_cast<size_t>(k));
    for (int rk = 0; rk < mr.count(); ++rk) {
        const int* J = mr.tuple(rk);
        Jet acc(d, ord);
        for (int m = 0; m < d; ++m) {
            // insert m into J; repeated index contributes nothing
            bool dup = false;
            int pos = 0;
            for (int t = 0; t < k - 1; ++t) {
                if (J[t] == m) { dup = true; break; }
                if (J[t] < m) pos = t + 1;
            }
            if (dup) continue;
            for (int t = 0, u = 0; t < k; ++t) {
                if (t == pos) { full[static_cast<size_t>(t)] = m; continue; }
                full[static_cast<size_t>(t)] = J[u++];
            }
            Jet term = v[static_cast<size_t>(m)].truncated(ord) * w.coeff(mw.rank(full.data())).truncated(ord);
            if (pos % 2 != 0) term *= Cplx(-1.0);
            acc += term;
        }
        r.coeff(rk) = acc;
    }
    return r;
}

JetVec basis_vector(int dim, int i, int order) {
    JetVec v(static_cast<size_t>(dim), Jet(dim, order));
    v[static_cast<size_t>(i)] = Jet::constant(Cplx(1.0), dim, order);
    return v;
}

JetVec jet_vec_from_values(const CplxVec& vals, int order) {
    JetVec v;
    v.reserve(vals.size());
    for (Cplx c : vals) v.push_back(Jet::constant(c, static_cast<int>(vals.size()), order));
    return v;
}

} // namespace hktlab
