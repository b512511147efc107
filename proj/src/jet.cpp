#include "hktlab/jet.hpp"

#include <array>
#include <cmath>

namespace hktlab {

namespace {

void check_order(int order) {
    if (order < 0 || order > kMaxJetOrder)
        throw UnsupportedOrderError("jet order must be in [0, 3], got " + std::to_string(order));
}

bool effectively_real(Cplx v) { return std::abs(v.imag()) <= 1e-12 * (1.0 + std::abs(v)); }

} // namespace

Jet::Jet(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1) throw DimensionError("jet dimension must be positive");
    check_order(order);
    buf_.assign(jet_storage(dim, order), Cplx(0.0));
}

Jet Jet::constant(Cplx v, int dim, int order) {
    Jet j(dim, order);
    j.buf_[0] = v;
    return j;
}

Jet Jet::coordinate(const Point& x, int var, int order) {
    if (var < 0 || var >= x.dim()) throw DimensionError("coordinate index out of range");
    Jet j(x.dim(), order);
    j.buf_[0] = Cplx(x[var]);
    if (order >= 1) j.grad(var) = Cplx(1.0);
    return j;
}

Jet Jet::truncated(int q) const {
    if (q > order_) throw UnsupportedOrderError("cannot truncate a jet upward");
    check_order(q);
    Jet j(dim_, q);
    std::copy(buf_.begin(), buf_.begin() + static_cast<long>(j.buf_.size()), j.buf_.begin());
    return j;
}

Jet Jet::derivative(int m) const {
    if (order_ < 1) throw UnsupportedOrderError("derivative needs a jet of order >= 1");
    if (m < 0 || m >= dim_) throw DimensionError("derivative index out of range");
    Jet j(dim_, order_ - 1);
    j.value() = grad(m);
    if (order_ >= 2)
        for (int i = 0; i < dim_; ++i) j.grad(i) = hess(i, m);
    if (order_ >= 3)
        for (int i = 0; i < dim_; ++i)
            for (int k = i; k < dim_; ++k) j.hess(i, k) = third(i, k, m);
    return j;
}

void Jet::check_binary(const Jet& o) const {
    if (dim_ != o.dim_) throw DimensionError("jet dimension mismatch");
    if (order_ != o.order_) throw UnsupportedOrderError("jet order mismatch");
}

Jet& Jet::operator+=(const Jet& o) {
    check_binary(o);
    for (size_t i = 0; i < buf_.size(); ++i) buf_[i] += o.buf_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_binary(o);
    for (size_t i = 0; i < buf_.size(); ++i) buf_[i] -= o.buf_[i];
    return *this;
}

Jet& Jet::operator*=(Cplx c) {
    for (auto& v : buf_) v *= c;
    return *this;
}

Jet Jet::operator-() const {
    Jet j = *this;
    for (auto& v : j.buf_) v = -v;
    return j;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_binary(b);
    const int d = a.dim_, p = a.order_;
    Jet r(d, p);
    r.value() = a.value() * b.value();
    if (p >= 1)
        for (int i = 0; i < d; ++i) r.grad(i) = a.grad(i) * b.value() + a.value() * b.grad(i);
    if (p >= 2)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                r.hess(i, j) = a.hess(i, j) * b.value() + a.grad(i) * b.grad(j) +
                               a.grad(j) * b.grad(i) + a.value() * b.hess(i, j);
    if (p >= 3)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                for (int k = j; k < d; ++k)
                    r.third(i, j, k) =
                        a.third(i, j, k) * b.value() + a.value() * b.third(i, j, k) +
                        a.hess(i, j) * b.grad(k) + a.hess(i, k) * b.grad(j) + a.hess(j, k) * b.grad(i) +
                        b.hess(i, j) * a.grad(k) + b.hess(i, k) * a.grad(j) + b.hess(j, k) * a.grad(i);
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

// Faa di Bruno through order 3 for g = f(a).
Jet Jet::compose(const std::array<Cplx, kMaxJetOrder + 1>& f) const {
    const int d = dim_, p = order_;
    Jet r(d, p);
    r.value() = f[0];
    if (p >= 1)
        for (int i = 0; i < d; ++i) r.grad(i) = f[1] * grad(i);
    if (p >= 2)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                r.hess(i, j) = f[2] * grad(i) * grad(j) + f[1] * hess(i, j);
    if (p >= 3)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                for (int k = j; k < d; ++k)
                    r.third(i, j, k) = f[3] * grad(i) * grad(j) * grad(k) +
                                       f[2] * (hess(i, j) * grad(k) + hess(i, k) * grad(j) + hess(j, k) * grad(i)) +
                                       f[1] * third(i, j, k);
    return r;
}

Jet exp(const Jet& a) {
    const Cplx e = std::exp(a.value());
    return a.compose({e, e, e, e});
}

Jet log(const Jet& a) {
    const Cplx v = a.value();
    if (v == Cplx(0.0) || (effectively_real(v) && v.real() <= 0.0))
        throw DomainError("log of nonpositive value");
    const Cplx iv = Cplx(1.0) / v;
    return a.compose({std::log(v), iv, -iv * iv, 2.0 * iv * iv * iv});
}

Jet sqrt(const Jet& a) {
    const Cplx v = a.value();
    if (v == Cplx(0.0) || (effectively_real(v) && v.real() <= 0.0))
        throw DomainError("sqrt of nonpositive value");
    const Cplx s = std::sqrt(v);
    const Cplx iv = Cplx(1.0) / v;
    return a.compose({s, 0.5 * s * iv, -0.25 * s * iv * iv, 0.375 * s * iv * iv * iv});
}

Jet pow(const Jet& a, double k) {
    const Cplx v = a.value();
    const bool integral = k == std::floor(k);
    if (v == Cplx(0.0)) throw DomainError("pow at zero base");
    if (!integral && effectively_real(v) && v.real() <= 0.0)
        throw DomainError("pow of nonpositive base with non-integer exponent");
    const Cplx p0 = std::pow(v, k);
    const Cplx p1 = k * std::pow(v, k - 1);
    const Cplx p2 = k * (k - 1) * std::pow(v, k - 2);
    const Cplx p3 = k * (k - 1) * (k - 2) * std::pow(v, k - 3);
    return a.compose({p0, p1, p2, p3});
}

Jet recip(const Jet& a) {
    const Cplx v = a.value();
    if (v == Cplx(0.0)) throw SingularPointError("reciprocal of zero value");
    const Cplx iv = Cplx(1.0) / v;
    const Cplx iv2 = iv * iv;
    return a.compose({iv, -iv2, 2.0 * iv2 * iv, -6.0 * iv2 * iv2});
}

} // namespace hktlab
