#pragma once

// Test-only numerical oracles, independent of the library implementations
// they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "chaoticlms/matrix.hpp"

namespace test_oracles {

// Cyclic Jacobi eigensolver for symmetric matrices; returns eigenvalues in
// ascending order. Plenty for the n <= 65 matrices exercised here.
inline std::vector<double> jacobi_eigenvalues(chaoticlms::Matrix a, int sweeps = 64,
                                              double tol = 1e-14) {
    const std::size_t n = a.n;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off < tol * tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a.at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Composite Simpson rule; independent route for cross-checking the library's
// Gauss-Legendre machinery.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i)
        s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace test_oracles
