#pragma once

#include <vector>

#include "hktlab/jet.hpp"

namespace hktlab {

// Dense square matrix with jet entries, row major. Used for metric values,
// endomorphism values and their inverses at a point.
class JetMat {
public:
    JetMat() : n_(0) {}
    JetMat(int n, int dim, int order) : n_(n), e_(static_cast<size_t>(n) * n, Jet(dim, order)) {}

    int n() const { return n_; }
    const Jet& at(int i, int j) const { return e_[static_cast<size_t>(i * n_ + j)]; }
    Jet& at(int i, int j) { return e_[static_cast<size_t>(i * n_ + j)]; }

private:
    int n_;
    std::vector<Jet> e_;
};

// Plain numeric matrix (row major) for constant endomorphisms and frames.
struct CplxMat {
    int n = 0;
    std::vector<Cplx> e;

    CplxMat() = default;
    explicit CplxMat(int n_) : n(n_), e(static_cast<size_t>(n_) * n_, Cplx(0.0)) {}
    Cplx at(int i, int j) const { return e[static_cast<size_t>(i * n + j)]; }
    Cplx& at(int i, int j) { return e[static_cast<size_t>(i * n + j)]; }
};

CplxMat matmul(const CplxMat& a, const CplxMat& b);
double mat_dist_inf(const CplxMat& a, const CplxMat& b);
double mat_norm_inf(const CplxMat& a);

// Inverse by LU with partial pivoting in jet arithmetic; exact to the
// carried order. Throws DegenerateMetricError when a pivot vanishes.
JetMat jet_inverse(const JetMat& a);

// Numeric least squares min |A x - b| via modified Gram-Schmidt QR.
// Throws DegenerateMetricError on rank deficiency.
std::vector<Cplx> least_squares(const std::vector<std::vector<Cplx>>& a_cols,
                                const std::vector<Cplx>& b);

// g-orthonormal frame from the numeric value of a symmetric positive
// matrix, Gram-Schmidt over the given seed frame (defaults to coordinate
// order). Returns frame vectors as rows.
CplxMat gram_schmidt_frame(const CplxMat& g, const CplxMat* seed = nullptr);

bool is_positive_definite(const CplxMat& g);

} // namespace hktlab
