#pragma once

// Finite-difference stencils shared by the protocol, stability and rate
// modules. Templated on the value type so they work for scalars and for
// SymTensor3 / Mat3 valued functions alike.

#include <cstdint>
#include <random>

namespace corostab::numeric {

/// f'(x) by the two-point central difference.
template <class F>
auto central2(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) * (1.0 / (2.0 * h));
}

/// Two-point central difference with one Richardson level, O(h^4).
template <class F>
auto central2_richardson(F&& f, double x, double h) {
    const auto coarse = central2(f, x, h);
    const auto fine = central2(f, x, 0.5 * h);
    return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

/// f'(x) by the five-point central stencil, O(h^4).
template <class F>
auto central5(F&& f, double x, double h) {
    return (f(x - 2.0 * h) - f(x + 2.0 * h) + (f(x + h) - f(x - h)) * 8.0) * (1.0 / (12.0 * h));
}

/// Five-point stencil with one Richardson level, O(h^6).
template <class F>
auto central5_richardson(F&& f, double x, double h) {
    const auto coarse = central5(f, x, h);
    const auto fine = central5(f, x, 0.5 * h);
    return (fine * 16.0 - coarse) * (1.0 / 15.0);
}

/// f''(x) by the five-point central stencil, O(h^4).
template <class F>
double second5(F&& f, double x, double h) {
    return (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h * h);
}

/// Uniform double in [0, 1) from the raw 64-bit output of a std::mt19937_64.
/// std::uniform_real_distribution is implementation-defined; this is not.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

}  // namespace corostab::numeric
