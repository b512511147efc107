#pragma once

#include "hktlab/geometry.hpp"

namespace hktlab {

// Built-in example geometries, all realized on global charts. The Hopf
// family lives on R^{4n} minus the origin, with q -> 2q invariance checked
// rather than quotiented.

// Euclidean R^{4n} with the constant quaternionic structure.
HypercomplexGeometry flat_hyperkahler(int n);

// kappa r^-2 * euclidean with Lee form -d log r^2; kappa is measured at
// construction so the Lee form has unit length (comes out as 4).
HypercomplexGeometry hopf_lchk_cover(int n);

// The sheared metric derived from hopf_lchk_cover, carrying the potential
// function log r^2 and the normalized torsion 1-form theta/2.
HypercomplexGeometry hopf_hkt(int n);

// Direct product with the half normalization on the metric; both factors
// must carry their normalized torsion 1-forms.
HypercomplexGeometry product_hkt(const HypercomplexGeometry& a, const HypercomplexGeometry& b);

// max over available tensors of |pullback under q -> 2q minus value| at x.
double deck_invariance_residual(const HypercomplexGeometry& g, const Point& x);

// Mini-grammar: flat:n=<k>, hopf-lchk:n=<k>, hopf-hkt:n=<k>,
// product:<spec>,<spec> (factors may not be products).
HypercomplexGeometry parse_geometry_spec(const std::string& spec);

// Left-multiplication matrices of i, j, k on each quaternionic factor; the
// constructor self-tests I_1 I_2 = I_3 and falls back to the right action
// if composition order ever flips it.
std::array<CplxMat, 3> quaternion_structure_matrices(int n);

} // namespace hktlab
