#pragma once

#include "hktlab/fields.hpp"
#include "hktlab/sampling.hpp"

#include <cmath>
#include <functional>

// Finite-difference oracles, independent of the jet arithmetic they check:
// they consume only order-0 evaluations.
namespace testsupport {

using hktlab::Cplx;
using hktlab::Point;

using Fn = std::function<Cplx(const Point&)>;

inline Point shifted(const Point& x, int i, double h) {
    Point y = x;
    y[i] += h;
    return y;
}

inline Cplx fd_grad(const Fn& f, const Point& x, int i, double h = 1e-4) {
    return (f(shifted(x, i, h)) - f(shifted(x, i, -h))) / (2.0 * h);
}

inline Cplx fd_hess(const Fn& f, const Point& x, int i, int j, double h = 1e-3) {
    if (i == j)
        return (f(shifted(x, i, h)) - 2.0 * f(x) + f(shifted(x, i, -h))) / (h * h);
    Point pp = shifted(shifted(x, i, h), j, h);
    Point pm = shifted(shifted(x, i, h), j, -h);
    Point mp = shifted(shifted(x, i, -h), j, h);
    Point mm = shifted(shifted(x, i, -h), j, -h);
    return (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
}

inline Cplx fd_third(const Fn& f, const Point& x, int i, int j, int k, double h = 1e-3) {
    auto hess = [&](const Point& p) { return fd_hess(f, p, j, k, h); };
    return (hess(shifted(x, i, h)) - hess(shifted(x, i, -h))) / (2.0 * h);
}

inline double rel_err(Cplx got, Cplx want) {
    const double scale = std::max(1.0, std::abs(want));
    return std::abs(got - want) / scale;
}

inline std::vector<Point> seeded_points(int dim, int count, uint64_t seed = 42) {
    hktlab::SampleConfig cfg;
    cfg.points = count;
    cfg.seed = seed;
    return hktlab::sample_points(dim, cfg);
}

// random small integers / reals out of the portable stream
inline double uniform_pm(hktlab::SplitMix64& rng, double lo = -1.0, double hi = 1.0) {
    return lo + (hi - lo) * rng.uniform();
}

} // namespace testsupport
