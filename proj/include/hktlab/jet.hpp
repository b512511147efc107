#pragma once

#include <array>
#include <complex>
#include <vector>

#include "hktlab/combinatorics.hpp"
#include "hktlab/errors.hpp"
#include "hktlab/point.hpp"

namespace hktlab {

using Cplx = std::complex<double>;

inline constexpr int kMaxJetOrder = 3;

// Truncated Taylor expansion of a scalar field at a point: value plus
// symmetric derivative tensors up to `order` in `dim` real variables.
// Arithmetic is exact truncated Taylor arithmetic; coefficients are complex
// so i-linear combinations of real fields flow through unchanged.
//
// Storage is one flat buffer: [value | grad (d) | hess (d(d+1)/2) | third],
// keeping a jet to a single allocation.
class Jet {
public:
    Jet() : dim_(0), order_(-1) {}
    Jet(int dim, int order);

    static Jet constant(Cplx v, int dim, int order);
    // jet of the coordinate function x -> x[var]
    static Jet coordinate(const Point& x, int var, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    bool valid() const { return order_ >= 0; }

    Cplx value() const { return buf_[0]; }
    Cplx& value() { return buf_[0]; }
    Cplx grad(int i) const { return buf_[static_cast<size_t>(1 + i)]; }
    Cplx& grad(int i) { return buf_[static_cast<size_t>(1 + i)]; }
    Cplx hess(int i, int j) const { return buf_[static_cast<size_t>(1 + dim_ + sym2_index(dim_, i, j))]; }
    Cplx& hess(int i, int j) { return buf_[static_cast<size_t>(1 + dim_ + sym2_index(dim_, i, j))]; }
    Cplx third(int i, int j, int k) const {
        return buf_[static_cast<size_t>(1 + dim_ + sym2_count(dim_) + sym3_index(dim_, i, j, k))];
    }
    Cplx& third(int i, int j, int k) {
        return buf_[static_cast<size_t>(1 + dim_ + sym2_count(dim_) + sym3_index(dim_, i, j, k))];
    }

    Jet truncated(int q) const;
    // jet of the partial derivative d/dx_m, one order lower
    Jet derivative(int m) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(Cplx c) { buf_[0] += c; return *this; }
    Jet& operator-=(Cplx c) { buf_[0] -= c; return *this; }
    Jet& operator*=(Cplx c);
    Jet operator-() const;

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, Cplx c) { a *= c; return a; }
    friend Jet operator*(Cplx c, Jet a) { a *= c; return a; }
    friend Jet operator+(Jet a, Cplx c) { a += c; return a; }
    friend Jet operator+(Cplx c, Jet a) { a += c; return a; }
    friend Jet operator-(Jet a, Cplx c) { a -= c; return a; }

    // univariate composition given f, f', f'', f''' at value()
    Jet compose(const std::array<Cplx, kMaxJetOrder + 1>& f) const;

    size_t size() const { return buf_.size(); }
    Cplx raw(size_t i) const { return buf_[i]; }

private:
    void check_binary(const Jet& o) const;

    int dim_;
    int order_;
    std::vector<Cplx> buf_;
};

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double k);
Jet recip(const Jet& a);

inline size_t jet_storage(int dim, int order) {
    size_t n = 1;
    if (order >= 1) n += static_cast<size_t>(dim);
    if (order >= 2) n += static_cast<size_t>(sym2_count(dim));
    if (order >= 3) n += static_cast<size_t>(sym3_count(dim));
    return n;
}

} // namespace hktlab
