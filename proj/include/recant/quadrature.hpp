// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace recant {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rule of order n (nodes computed by Newton iteration, cached per n).
// Thread-safe; the returned reference stays valid for the process lifetime.
const GaussRule& gauss_legendre(std::size_t n);

// Integrate f over [a, b] with an n-point rule.
template <typename F>
double integrate(F&& f, double a, double b, std::size_t n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

// Tensor-product integral of f(x, y) over [ax,bx] x [ay,by].
template <typename F>
double integrate2d(F&& f, double ax, double bx, std::size_t nx,
                   double ay, double by, std::size_t ny) {
    const GaussRule& rx = gauss_legendre(nx);
    const double midx = 0.5 * (ax + bx), halfx = 0.5 * (bx - ax);
    double acc = 0.0;
    for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
        const double x = midx + halfx * rx.nodes[i];
        acc += rx.weights[i] * integrate([&](double y) { return f(x, y); }, ay, by, ny);
    }
    return acc * halfx;
}

// sin(pi*x) with exact zeros at integer x.
double sinpi(double x);

} // namespace recant
