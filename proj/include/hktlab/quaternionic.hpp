#pragma once

#include "hktlab/geometry.hpp"

namespace hktlab {

// Twisted differential d_r w = (-1)^k I_r d I_r w and its complex halves
// del_r = (d + i d_r)/2, delbar_r = (d - i d_r)/2.
FormField d_r(const HypercomplexGeometry& g, int r, const FormField& w);
FormField del_r(const HypercomplexGeometry& g, int r, const FormField& w);
FormField delbar_r(const HypercomplexGeometry& g, int r, const FormField& w);

// Fundamental 2-form F_r(X,Y) = g(I_r X, Y) as a field.
FormField fundamental_form(const HypercomplexGeometry& g, int r);

// theta_r = I_r theta for a 1-form field.
FormField rotated_form(const HypercomplexGeometry& g, int r, const FormField& theta);

struct LeeExtraction {
    Form theta;                    // recovered 1-form (order-0 coefficients)
    double residual;               // max over r of |dF_r - theta ^ F_r|
    std::array<double, 3> per_r;   // residual split by r
};

// Pointwise least squares for theta in dF_r = theta ^ F_r, all three r
// stacked. Throws NotLchkError when the residual exceeds `tol` and
// DegenerateMetricError on a rank-deficient system.
LeeExtraction lee_form_extract(const HypercomplexGeometry& g, const Point& x, double tol = 1e-6);

} // namespace hktlab
