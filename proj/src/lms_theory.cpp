#include "chaoticlms/lms_theory.hpp"

#include <cmath>
#include <stdexcept>

namespace chaoticlms {

CorrelationMatrix build_correlation_matrix(std::size_t m, bool centered) {
    CorrelationMatrix r;
    r.order = m;
    const std::size_t n = m + 1;
    if (centered) {
        r.entries = Matrix::identity(n, 0.125);
        return r;
    }
    r.entries = Matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.entries.at(i, j) = (i == j) ? 0.375 : 0.25;
    return r;
}

SpectrumSummary analytic_spectrum(std::size_t m, bool centered) {
    SpectrumSummary s;
    const std::size_t n = m + 1;
    if (centered) {
        s.eigenvalues.assign(n, 0.125);
        s.lambda_max = s.lambda_min = 0.125;
        s.sigma = 1.0;
        return s;
    }
    if (m == 0) {
        // single-tap window: R = [[3/8]]
        s.eigenvalues.assign(1, 0.375);
        s.lambda_max = s.lambda_min = 0.375;
        s.sigma = 1.0;
        return s;
    }
    // closed form for the raw drive: one dominant mode along the all-ones
    // direction at (2m+1)/8, everything else at 1/8, spread 2m+1
    const double top = static_cast<double>(2 * m + 1) / 8.0;
    s.eigenvalues.assign(n, 0.125);
    s.eigenvalues.back() = top;
    s.lambda_max = top;
    s.lambda_min = 0.125;
    s.sigma = s.lambda_max / s.lambda_min;
    return s;
}

double mu_bound_mean(std::size_t m, bool centered) {
    return 2.0 / analytic_spectrum(m, centered).lambda_max;
}

double mu_bound_fluctuation(std::size_t m) {
    return 16.0 / static_cast<double>(3 + 2 * m);
}

double fluctuation_decay_factor(double mu, std::size_t m) {
    if (mu < 0.0) throw std::domain_error("fluctuation_decay_factor: mu must be >= 0");
    const double c = (3.0 + 2.0 * static_cast<double>(m)) / 128.0;
    return std::fabs(1.0 - 0.25 * mu + c * mu * mu);
}

CorrelationMatrix fourth_moment_matrix(std::size_t m) {
    CorrelationMatrix r;
    r.order = m;
    r.entries = Matrix::identity(m + 1, (3.0 + 2.0 * static_cast<double>(m)) / 128.0);
    return r;
}

std::vector<double> wiener_solution(std::span<const double> b, const CorrelationMatrix& r,
                                    std::span<const double> rho) {
    const std::size_t n = r.entries.n;
    if (b.size() != n || rho.size() != n)
        throw std::invalid_argument("wiener_solution: dimension mismatch");
    auto v = solve_linear(r.entries, std::vector<double>(rho.begin(), rho.end()));
    for (std::size_t i = 0; i < n; ++i) v[i] += b[i];
    return v;
}

} // namespace chaoticlms
