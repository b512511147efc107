#include "hktlab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hktlab {

CplxMat matmul(const CplxMat& a, const CplxMat& b) {
    CplxMat r(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            const Cplx aik = a.at(i, k);
            if (aik == Cplx(0.0)) continue;
            for (int j = 0; j < a.n; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

double mat_dist_inf(const CplxMat& a, const CplxMat& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.e.size(); ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

double mat_norm_inf(const CplxMat& a) {
    double m = 0.0;
    for (const auto& v : a.e) m = std::max(m, std::abs(v));
    return m;
}

JetMat jet_inverse(const JetMat& a) {
    const int n = a.n();
    if (n == 0) return a;
    const int dim = a.at(0, 0).dim();
    const int ord = a.at(0, 0).order();
    // augmented [A | I], forward elimination with value-magnitude pivoting
    std::vector<std::vector<Jet>> m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& row = m[static_cast<size_t>(i)];
        row.reserve(static_cast<size_t>(2 * n));
        for (int j = 0; j < n; ++j) row.push_back(a.at(i, j));
        for (int j = 0; j < n; ++j)
            row.push_back(Jet::constant(i == j ? Cplx(1.0) : Cplx(0.0), dim, ord));
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::abs(m[static_cast<size_t>(c)][static_cast<size_t>(c)].value());
        for (int r = c + 1; r < n; ++r) {
            const double mag = std::abs(m[static_cast<size_t>(r)][static_cast<size_t>(c)].value());
            if (mag > best) { best = mag; piv = r; }
        }
        if (best < 1e-14) throw DegenerateMetricError("singular matrix in jet inverse");
        if (piv != c) std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(c)]);
        const Jet inv_piv = recip(m[static_cast<size_t>(c)][static_cast<size_t>(c)]);
        for (int j = c; j < 2 * n; ++j)
            m[static_cast<size_t>(c)][static_cast<size_t>(j)] =
                m[static_cast<size_t>(c)][static_cast<size_t>(j)] * inv_piv;
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const Jet f = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (f.value() == Cplx(0.0)) {
                bool zero = true;
                for (size_t q = 0; q < f.size() && zero; ++q) zero = f.raw(q) == Cplx(0.0);
                if (zero) continue;
            }
            for (int j = c; j < 2 * n; ++j)
                m[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(c)][static_cast<size_t>(j)];
        }
    }
    JetMat inv(n, dim, ord);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = m[static_cast<size_t>(i)][static_cast<size_t>(n + j)];
    return inv;
}

std::vector<Cplx> least_squares(const std::vector<std::vector<Cplx>>& a_cols,
                                const std::vector<Cplx>& b) {
    const size_t ncol = a_cols.size();
    const size_t nrow = b.size();
    // modified Gram-Schmidt QR: A = QR, then back-substitute R x = Q^H b
    std::vector<std::vector<Cplx>> q = a_cols;
    std::vector<std::vector<Cplx>> r(ncol, std::vector<Cplx>(ncol, Cplx(0.0)));
    for (size_t j = 0; j < ncol; ++j) {
        for (size_t i = 0; i < j; ++i) {
            Cplx dot(0.0);
            for (size_t t = 0; t < nrow; ++t) dot += std::conj(q[i][t]) * q[j][t];
            r[i][j] = dot;
            for (size_t t = 0; t < nrow; ++t) q[j][t] -= dot * q[i][t];
        }
        double nrm = 0.0;
        for (size_t t = 0; t < nrow; ++t) nrm += std::norm(q[j][t]);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) throw DegenerateMetricError("rank-deficient least-squares system");
        r[j][j] = nrm;
        for (size_t t = 0; t < nrow; ++t) q[j][t] /= nrm;
    }
    std::vector<Cplx> x(ncol, Cplx(0.0));
    for (size_t j = ncol; j-- > 0;) {
        Cplx acc(0.0);
        for (size_t t = 0; t < nrow; ++t) acc += std::conj(q[j][t]) * b[t];
        for (size_t i = j + 1; i < ncol; ++i) acc -= r[j][i] * x[i];
        x[j] = acc / r[j][j];
    }
    return x;
}

CplxMat gram_schmidt_frame(const CplxMat& g, const CplxMat* seed) {
    const int n = g.n;
    CplxMat frame(n);
    if (seed) frame = *seed;
    else
        for (int i = 0; i < n; ++i) frame.at(i, i) = Cplx(1.0);
    auto inner = [&](const Cplx* u, const Cplx* v) {
        Cplx acc(0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += u[i] * g.at(i, j) * v[j];
        return acc;
    };
    for (int r = 0; r < n; ++r) {
        Cplx* er = frame.e.data() + static_cast<size_t>(r) * n;
        for (int s = 0; s < r; ++s) {
            const Cplx* es = frame.e.data() + static_cast<size_t>(s) * n;
            const Cplx proj = inner(es, er);
            for (int i = 0; i < n; ++i) er[i] -= proj * es[i];
        }
        const Cplx nsq = inner(er, er);
        if (std::abs(nsq) < 1e-14 || nsq.real() <= 0.0)
            throw DegenerateMetricError("Gram-Schmidt frame failed: metric not positive");
        const double inv = 1.0 / std::sqrt(nsq.real());
        for (int i = 0; i < n; ++i) er[i] *= inv;
    }
    return frame;
}

bool is_positive_definite(const CplxMat& g) {
    // Cholesky on the real part; imaginary parts of a metric value are noise
    const int n = g.n;
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i * n + j)] = g.at(i, j).real();
    for (int c = 0; c < n; ++c) {
        double d = a[static_cast<size_t>(c * n + c)];
        for (int k = 0; k < c; ++k) d -= a[static_cast<size_t>(c * n + k)] * a[static_cast<size_t>(c * n + k)];
        if (d <= 0.0) return false;
        const double s = std::sqrt(d);
        a[static_cast<size_t>(c * n + c)] = s;
        for (int r = c + 1; r < n; ++r) {
            double v = a[static_cast<size_t>(r * n + c)];
            for (int k = 0; k < c; ++k) v -= a[static_cast<size_t>(r * n + k)] * a[static_cast<size_t>(c * n + k)];
            a[static_cast<size_t>(r * n + c)] = v / s;
        }
    }
    return true;
}

} // namespace hktlab
