#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "hktlab/form.hpp"
#include "hktlab/linalg.hpp"

namespace hktlab {

// Point-indexed families of values. Every field is a pure evaluation rule
// (Point, jet order) -> value-with-jets; callers request exactly the order
// an operator consumes. Rules are immutable and safe to evaluate
// concurrently.

struct ScalarField {
    int dim = 0;
    std::function<Jet(const Point&, int)> eval;
};

struct FormField {
    int dim = 0;
    int degree = 0;
    std::function<Form(const Point&, int)> eval;
};

struct VectorField {
    int dim = 0;
    std::function<JetVec(const Point&, int)> eval;
};

struct MetricField {
    int dim = 0;
    std::function<JetMat(const Point&, int)> eval;
};

// (1,1) tensor field. Constant endomorphisms (the common case here) carry
// their numeric matrix plus a per-degree cache of the induced action on
// form coefficients.
struct EndoField {
    int dim = 0;
    bool constant = false;
    CplxMat value;
    std::function<JetMat(const Point&, int)> eval;

    struct ActCache {
        std::mutex mu;
        std::unordered_map<int, std::vector<Cplx>> remix; // degree -> C(d,k)^2 matrix
    };
    std::shared_ptr<ActCache> cache;

    static EndoField constant_matrix(CplxMat m);
};

// ---- pointwise operators ----------------------------------------------

// (I w)(X_1..X_k) = (-1)^k w(I X_1,...,I X_k); for k = 0 the identity.
Form act_on_form(const CplxMat& endo, const Form& w);
Form act_on_form(const JetMat& endo, const Form& w);

JetVec apply_endo(const JetMat& endo, const JetVec& v);
CplxVec apply_endo_values(const CplxMat& endo, const CplxVec& v);

// ---- field combinators --------------------------------------------------

FormField form_field_constant(Form w);
FormField form_field_zero(int dim, int degree);
FormField scalar_as_form(const ScalarField& f);

FormField d(const FormField& w);
FormField wedge(const FormField& a, const FormField& b);
FormField iota(const VectorField& v, const FormField& w);
FormField act(const EndoField& endo, const FormField& w);
FormField scale(Cplx s, const FormField& w);
FormField add(const FormField& a, const FormField& b);
FormField sub(const FormField& a, const FormField& b);

VectorField act_vec(const EndoField& endo, const VectorField& v);
VectorField scale_vec(Cplx s, const VectorField& v);

// Cartan formula iota_V dw + d(iota_V w); the contraction is materialized
// as a field before the outer derivative.
Form lie_derivative_form(const VectorField& v, const FormField& w, const Point& x, int order = 0);

// Coordinate-frame Lie derivatives of low-rank tensors (values at x).
CplxMat lie_derivative_metric(const VectorField& v, const MetricField& g, const Point& x);
CplxMat lie_derivative_endo(const VectorField& v, const EndoField& endo, const Point& x);
CplxVec lie_bracket(const VectorField& v, const VectorField& w, const Point& x);

// ---- musical isomorphisms -----------------------------------------------

VectorField sharp(const MetricField& g, const FormField& alpha);
FormField flat(const MetricField& g, const VectorField& v);
Jet norm_sq(const JetMat& g, const Form& alpha);
Jet norm_sq(const JetMat& g, const JetVec& v);

// value-level: v^m = g^{mk} alpha_k
JetVec sharp_at(const JetMat& g, const Form& alpha);
Form flat_at(const JetMat& g, const JetVec& v, int dim);

} // namespace hktlab
