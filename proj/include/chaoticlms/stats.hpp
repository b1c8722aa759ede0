#pragma once

// Statistical theory of the ergodic logistic map at lambda = 4: the arcsine
// invariant density, exact closed-form moments (raw and zero-mean), the
// confluent hypergeometric series behind them, quadrature cross-checks of
// moments and autocorrelation, and empirical estimators for arbitrary
// sample sequences.
//
// The empirical estimators are OpenMP kernels over fixed-size blocks whose
// partial results are combined in block order, so outputs are bit-identical
// for any thread count. Plain-loop references live in chaoticlms::serial.

#include <cstddef>
#include <span>
#include <vector>

#include "chaoticlms/matrix.hpp"
#include "chaoticlms/rational.hpp"

namespace chaoticlms {

// rho_4(x) = 1 / (pi * sqrt(x (1-x))); singular at the endpoints.
double invariant_density(double x);
// Its integral (2/pi) * asin(sqrt(x)) on [0,1].
double invariant_cdf(double x);

// nu-th moment of rho_4: (2 nu - 1)!! / (2^nu nu!), exact.
Rational theoretical_moment(unsigned nu);
// Moment of the zero-mean sequence, by exact binomial expansion around 1/2.
Rational centered_moment(unsigned nu);
// Pochhammer symbol (1/2)_nu, exact; (1/2)_nu / nu! reproduces the moments.
Rational pochhammer_half(unsigned nu);
// Exact nu! (throws std::overflow_error past 20!).
Rational rational_factorial(unsigned nu);

// Confluent hypergeometric series sum_r (a)_r / ((b)_r r!) xi^r, truncated
// once the next term falls below tol in magnitude (hard cap 10^4 terms).
double kummer_series(double a, double b, double xi, double tol);

// integral_0^1 x^nu rho_4(x) dx via the x = sin^2(theta) substitution that
// removes the endpoint singularity; absolute accuracy ~1e-10.
double quadrature_moment(unsigned nu);

// Autocorrelation of the lambda = 4 sequence at lag m:
// raw 1/4 + (1/8) delta_{m,0}; zero-mean (1/8) delta_{m,0}.
Rational theoretical_autocorr(unsigned m, bool centered);

// integral_0^1 rho_4(x) x f_4^m(x) dx with f_4^m composed by repeated
// evaluation; adaptive panel doubling until successive estimates agree to
// 1e-8. Supported for m <= 20; throws if the refinement budget runs out.
double quadrature_autocorr(unsigned m);

// (1/N) sum x_i^nu for nu = 0..max_nu.
std::vector<double> empirical_moments(std::span<const double> samples, unsigned max_nu);

struct AutocorrEstimate {
    std::size_t max_lag = 0;
    std::vector<double> values; // values[m] = (1/(N-m)) sum_i x_i x_{i+m}
    std::size_t sample_count = 0;
};

// Signal-processing convention: no mean subtraction inside the estimator.
AutocorrEstimate empirical_autocorr(std::span<const double> samples, std::size_t max_lag);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::size_t> counts;
    std::size_t overflow = 0; // samples outside [lo, hi]
    // Per-bin probability under rho_4 (CDF differences); empty unless requested.
    std::vector<double> expected_probability;
};

// Equal-width bins on [lo, hi]; x == hi lands in the last bin, anything
// outside goes to the overflow bucket.
Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi,
                    bool rho4_expected);

// E[(x^T x)(x x^T)] over all sliding windows of length m+1 (most recent
// sample first). Monte Carlo counterpart of the closed-form fourth-moment
// matrix for the zero-mean drive.
Matrix empirical_fourth_moment(std::span<const double> samples, std::size_t m);

struct MomentTable {
    unsigned max_order = 0;
    std::vector<Rational> raw;
    std::vector<Rational> centered;
};

MomentTable moment_table(unsigned max_order);

namespace serial {
std::vector<double> empirical_moments(std::span<const double> samples, unsigned max_nu);
AutocorrEstimate empirical_autocorr(std::span<const double> samples, std::size_t max_lag);
Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi,
                    bool rho4_expected);
Matrix empirical_fourth_moment(std::span<const double> samples, std::size_t m);
double quadrature_autocorr(unsigned m);
} // namespace serial

} // namespace chaoticlms
