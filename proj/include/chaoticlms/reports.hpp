#pragma once

// CSV report writers. Schemas:
//   orbit:      index,lambda,sample
//   moments:    order_or_lag,theoretical,empirical,abs_error
//   autocorr:   order_or_lag,theoretical,empirical,abs_error
//   histogram:  bin_lo,bin_hi,count,expected_probability
//   spectrum:   m,centered,lambda_max,lambda_min,sigma,mu_mean_bound,mu_fluct_bound
//   trace:      step,mma,mma_db
//   bifurcation: lambda,x

#include <ostream>
#include <span>
#include <vector>

#include "chaoticlms/adaptive.hpp"
#include "chaoticlms/lms_theory.hpp"
#include "chaoticlms/logistic.hpp"
#include "chaoticlms/rational.hpp"
#include "chaoticlms/stats.hpp"

namespace chaoticlms {

void write_orbit_csv(std::ostream& os, const Orbit& orbit);

void write_moment_report_csv(std::ostream& os, std::span<const Rational> theoretical,
                             std::span<const double> empirical);

void write_autocorr_report_csv(std::ostream& os, std::span<const Rational> theoretical,
                               const AutocorrEstimate& empirical);

void write_histogram_csv(std::ostream& os, const Histogram& h);

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumRow> rows);

void write_trace_csv(std::ostream& os, const MmaTrace& trace);

void write_bifurcation_csv(std::ostream& os, std::span<const BifurcationPoint> points);

// 10 log10(M_i / M_0) with a floor that keeps the value finite.
double mma_db(double mma, double m0);

} // namespace chaoticlms
