#pragma once

// Plain finite-difference oracles for tests, kept separate from the
// library's own stencils.

namespace corostab::testkit {

/// Five-point first derivative.
template <class F>
double d1(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

/// Five-point second derivative.
template <class F>
double d2(F&& f, double x, double h) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

}  // namespace corostab::testkit
