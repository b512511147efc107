#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "hktlab/errors.hpp"

namespace hktlab {

// Chart coordinates. The jet layer accepts any dimension >= 1; geometry
// constructors additionally require dim = 4n.
struct Point {
    std::vector<double> x;

    Point() = default;
    explicit Point(std::vector<double> coords) : x(std::move(coords)) { validate(); }
    Point(std::initializer_list<double> coords) : x(coords) { validate(); }

    int dim() const { return static_cast<int>(x.size()); }
    double operator[](int i) const { return x[static_cast<size_t>(i)]; }
    double& operator[](int i) { return x[static_cast<size_t>(i)]; }

    double radius_sq() const {
        double s = 0.0;
        for (double c : x) s += c * c;
        return s;
    }

private:
    void validate() const {
        if (x.empty()) throw DimensionError("Point: empty coordinate vector");
        for (double c : x)
            if (!std::isfinite(c)) throw DomainError("Point: non-finite coordinate");
    }
};

} // namespace hktlab
