#pragma once

#include "hktlab/geometry.hpp"

namespace hktlab {

enum class ConnectionFlavor { LeviCivita, Bismut };

// Gamma^k_{ij} = coefficient of nabla_{e_i} e_j along e_k, at one point.
struct ConnectionCoefficients {
    ConnectionFlavor flavor = ConnectionFlavor::LeviCivita;
    int dim = 0;
    std::vector<Cplx> gamma; // k*d*d + i*d + j

    Cplx at(int k, int i, int j) const { return gamma[static_cast<size_t>((k * dim + i) * dim + j)]; }
    Cplx& at(int k, int i, int j) { return gamma[static_cast<size_t>((k * dim + i) * dim + j)]; }
};

ConnectionCoefficients levi_civita(const MetricField& g, const Point& x);

// HKT condition residual: max pairwise difference of the d_r F_r.
double hkt_condition_residual(const HypercomplexGeometry& g, const Point& x);

// Torsion 3-form c = -d_r F_r. All three r are computed and must agree
// within `gate`; otherwise NotHktError.
Form bismut_torsion_form(const HypercomplexGeometry& g, const Point& x, double gate = 1e-8);

// g(D_X Y, Z) = g(nabla_X Y, Z) + c(X,Y,Z)/2; with this convention the
// torsion tensor lowers exactly to c.
ConnectionCoefficients bismut_connection(const HypercomplexGeometry& g, const Point& x,
                                         const Form* torsion = nullptr, double gate = 1e-8);

// (nabla V)^m_i values (i = direction); needs V jets at order 1.
CplxMat cov_deriv_vector(const ConnectionCoefficients& conn, const JetVec& v);
// (nabla_X V) at the point
CplxVec cov_deriv_vector_along(const ConnectionCoefficients& conn, const JetVec& v, const CplxVec& x);
// (nabla theta)_{ij} values for a 1-form with order-1 jets
CplxMat cov_deriv_one_form(const ConnectionCoefficients& conn, const Form& theta);
double cov_deriv_metric_residual(const ConnectionCoefficients& conn, const JetMat& g);
double cov_deriv_endo_residual(const ConnectionCoefficients& conn, const JetMat& endo);

// tau(X) = (1/2) sum_i c(I_r X, e_i, I_r e_i) over a g-orthonormal frame.
Form torsion_one_form(const HypercomplexGeometry& g, const Form& torsion, const Point& x,
                      int r = 1, const CplxMat* frame_seed = nullptr);

// Unique positive root of lambda (2m - 1 + lambda^2) = 1.
double normalized_lambda(int m);

// Positive root of s (2m - 1 + s^2 tau_norm_sq) = 1, the pointwise scaling
// that turns a torsion 1-form into its normalized companion.
double normalized_scaling(int m, double tau_norm_sq);

} // namespace hktlab
