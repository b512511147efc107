#pragma once

#include <array>
#include <optional>
#include <string>

#include "hktlab/fields.hpp"

namespace hktlab {

// Totally antisymmetric symbol on {1,2,3}, eps(1,2,3) = +1.
// Indices are 1-based to match the I_1, I_2, I_3 labelling.
inline int epsilon(int r, int s, int t) {
    if (r == s || s == t || r == t) return 0;
    // parity of the permutation (r,s,t) of (1,2,3)
    const bool even = (r == 1 && s == 2) || (r == 2 && s == 3) || (r == 3 && s == 1);
    return even ? 1 : -1;
}

// for r != s: I_r I_s = eps(r,s,t) I_t with t the remaining index
inline int third_index(int r, int s) { return 6 - r - s; }

// A chart of dimension 4n carrying a metric, three anticommuting complex
// structures, and whatever named 1-forms / potentials the construction
// provides. Everything lives on the cover; all fields are global rules.
struct HypercomplexGeometry {
    int dim = 0;            // 4n
    int quaternion_dim = 0; // n
    std::string spec;       // canonical constructor spec, e.g. "hopf-hkt:n=1"

    MetricField metric;
    std::array<EndoField, 3> endo; // I_1, I_2, I_3

    // Lee form of a locally conformal structure (dF_r = theta ^ F_r).
    std::optional<FormField> lee_form;
    // Potential 1-form omega with F_r = (d omega_r + d_s omega_t)/2.
    std::optional<FormField> potential_form;
    // Local potential function mu.
    std::optional<ScalarField> potential_mu;
    // Normalized torsion 1-form (the dual of the symmetry field).
    std::optional<FormField> torsion_one_form_field;

    bool hopf_family = false; // q -> 2q invariance applies

    const EndoField& I(int r) const { return endo[static_cast<size_t>(r - 1)]; }
};

// max residual of I_r^2 + Id and I_1 I_2 - I_3, I_3 + I_2 I_1 at x
double quaternion_relations_residual(const HypercomplexGeometry& g, const Point& x);

// max residual of g(I_r X, I_r Y) - g(X, Y) over coordinate frames at x
double hermitian_compatibility_residual(const HypercomplexGeometry& g, const Point& x);

} // namespace hktlab
