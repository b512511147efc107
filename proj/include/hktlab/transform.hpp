#pragma once

#include "hktlab/geometry.hpp"

namespace hktlab {

// New metric g + coef * sum_a theta_a (x) theta_a over the given 1-form
// fields (outer squares, not wedges).
MetricField shift_by_outer_squares(const MetricField& g, std::vector<FormField> thetas, double coef);

// From a locally conformal structure with unit parallel Lee form theta to
// the associated metric g - (1/2){theta(x)theta + sum_r theta_r(x)theta_r}.
// Probes gate the preconditions: dF_r = theta ^ F_r, |theta| = 1, and
// positive definiteness of the result.
HypercomplexGeometry hkt_from_lchk(const HypercomplexGeometry& g, const std::vector<Point>& probes,
                                   double tol = 1e-8);

// Inverse shear g = ghat + 2 sum_a thetahat_a (x) thetahat_a with Lee form
// 2 thetahat. Makes no claim the result is locally conformal; that is a
// verifier outcome.
HypercomplexGeometry lchk_from_hkt(const HypercomplexGeometry& g, const std::vector<Point>& probes,
                                   double tol = 1e-8);

// -(th_1 ^ F_1 + th_2 ^ F_2 + th_3 ^ F_3 - 2 th_1 ^ th_2 ^ th_3) at x.
Form cubic_torsion_expected(const HypercomplexGeometry& g, const FormField& theta_hat, const Point& x);

// (1/2) sum_cyc (F_r - theta ^ theta_r - theta_s ^ theta_t)^2 on a locally
// conformal geometry carrying its Lee form; wedge squares.
Form dc_expected(const HypercomplexGeometry& lchk_geom, const Point& x);

} // namespace hktlab
