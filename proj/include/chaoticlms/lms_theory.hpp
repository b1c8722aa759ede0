#pragma once

// Closed-form LMS performance layer for logistic-map drive signals:
// autocorrelation matrices of the raw and zero-mean drives, their analytic
// eigen-spectra and spread, step-size bounds from the mean-convergence and
// fluctuation analyses, the fluctuation decay factor, and the Wiener
// solution.

#include <cstddef>
#include <span>
#include <vector>

#include "chaoticlms/matrix.hpp"

namespace chaoticlms {

// E[x x^T] for windows of length m+1; symmetric Toeplitz.
struct CorrelationMatrix {
    std::size_t order = 0; // filter order m
    Matrix entries;        // (m+1) x (m+1)
};

struct SpectrumSummary {
    std::vector<double> eigenvalues; // ascending
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    double sigma = 1.0; // lambda_max / lambda_min
};

// raw drive: 3/8 on the diagonal, 1/4 everywhere else;
// zero-mean drive: (1/8) I.
CorrelationMatrix build_correlation_matrix(std::size_t m, bool centered);

// raw: one eigenvalue (2m+1)/8 (eigenvector = all-ones) and m eigenvalues
// 1/8, spread 2m+1; zero-mean: all 1/8, spread 1.
SpectrumSummary analytic_spectrum(std::size_t m, bool centered);

// Mean-convergence bound 2 / lambda_max.
double mu_bound_mean(std::size_t m, bool centered);

// Fluctuation-decay bound 16 / (3 + 2m) for the zero-mean drive; always the
// tighter of the two.
double mu_bound_fluctuation(std::size_t m);

// |1 - mu/4 + (3/128 + m/64) mu^2|: per-step contraction of the expected
// squared tap-error under the zero-mean drive. < 1 iff 0 < mu < 32/(3+2m),
// minimal at mu = 16/(3+2m).
double fluctuation_decay_factor(double mu, std::size_t m);

// E[(x^T x)(x x^T)] = (3/128 + m/64) I for the zero-mean drive. The raw
// drive has no closed form; use empirical_fourth_moment for it.
CorrelationMatrix fourth_moment_matrix(std::size_t m);

// b + R^{-1} rho.
std::vector<double> wiener_solution(std::span<const double> b, const CorrelationMatrix& r,
                                    std::span<const double> rho);

struct SpectrumRow {
    std::size_t m = 0;
    bool centered = false;
};

} // namespace chaoticlms
