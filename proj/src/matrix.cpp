#include "chaoticlms/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace chaoticlms {

std::vector<double> mat_vec(const Matrix& m, std::span<const double> v) {
    if (v.size() != m.n) throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<double> out(m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) s += m.at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> rhs) {
    const std::size_t n = a.n;
    if (rhs.size() != n) throw std::invalid_argument("solve_linear: dimension mismatch");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::fabs(a.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::fabs(a.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("solve_linear: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            std::swap(rhs[piv], rhs[col]);
        }
        const double d = a.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / d;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a.at(i, j) * rhs[j];
        rhs[i] = s / a.at(i, i);
    }
    return rhs;
}

} // namespace chaoticlms
