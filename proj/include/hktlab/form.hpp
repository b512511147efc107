#pragma once

#include <span>
#include <vector>

#include "hktlab/jet.hpp"

namespace hktlab {

using JetVec = std::vector<Jet>;   // contravariant vector, one jet per component
using CplxVec = std::vector<Cplx>; // plain component vector

// Alternating degree-k covariant tensor at a point. One coefficient per
// strictly increasing multi-index I, meaning omega(e_{i1},...,e_{ik});
// evaluation on arbitrary vectors expands by antisymmetry.
//
// Coefficients are jets so exterior derivatives of derived fields stay
// exact: an operator that consumes one derivative drops the order by one.
// Plain point values are order-0 jets.
class Form {
public:
    Form() : dim_(0), degree_(-1), order_(-1) {}
    Form(int dim, int degree, int order);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int order() const { return order_; }
    int count() const { return static_cast<int>(c_.size()); }

    const Jet& coeff(int rank) const { return c_[static_cast<size_t>(rank)]; }
    Jet& coeff(int rank) { return c_[static_cast<size_t>(rank)]; }
    // coefficient for an index tuple in any order (0 when repeated)
    Cplx value_at(std::vector<int> idx) const;
    void set(std::vector<int> idx, Cplx v);

    const MultiIndexSet& indices() const { return MultiIndexSet::get(dim_, degree_); }

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(Cplx s);
    Form operator-() const;
    friend Form operator+(Form a, const Form& b) { a += b; return a; }
    friend Form operator-(Form a, const Form& b) { a -= b; return a; }
    friend Form operator*(Form a, Cplx s) { a *= s; return a; }
    friend Form operator*(Cplx s, Form a) { a *= s; return a; }

    // max |coefficient value|
    double norm_inf() const;

    // full antisymmetric evaluation, vectors as jet components
    Jet evaluate(std::span<const JetVec> args) const;
    Cplx evaluate_values(std::span<const CplxVec> args) const;

    Form truncated(int q) const;

private:
    int dim_;
    int degree_;
    int order_;
    std::vector<Jet> c_;
};

// Exterior product under the determinant convention:
// (a ^ b)(X_1..X_{k+l}) = sum over (k,l)-shuffles of signed products, no
// factorial normalization, so for 1-forms a^b = a(x)b - b(x)a.
Form wedge(const Form& a, const Form& b);

// d omega from coefficient jets; result order drops by one.
Form exterior_derivative(const Form& w);

// iota_V omega, contraction in the first slot.
Form interior_product(const JetVec& v, const Form& w);

// zero-order constant vector helpers
JetVec basis_vector(int dim, int i, int order = 0);
JetVec jet_vec_from_values(const CplxVec& v, int order = 0);

} // namespace hktlab
