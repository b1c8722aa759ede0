#include "chaoticlms/reports.hpp"

#include <algorithm>
#include <cmath>

#include "chaoticlms/csv.hpp"

namespace chaoticlms {

void write_orbit_csv(std::ostream& os, const Orbit& orbit) {
    os << "index,lambda,sample\n";
    const bool centered = orbit.centered();
    const auto& raw = orbit.raw_values();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = centered ? raw[i] - 0.5 : raw[i];
        os << i << ',' << fmt17(orbit.schedule().at(i)) << ',' << fmt17(v) << '\n';
    }
}

void write_moment_report_csv(std::ostream& os, std::span<const Rational> theoretical,
                             std::span<const double> empirical) {
    os << "order_or_lag,theoretical,empirical,abs_error\n";
    for (std::size_t nu = 0; nu < theoretical.size(); ++nu) {
        const double t = theoretical[nu].value();
        const double e = nu < empirical.size() ? empirical[nu] : std::nan("");
        os << nu << ',' << fmt17(t) << ',' << fmt17(e) << ',' << fmt17(std::fabs(e - t))
           << '\n';
    }
}

void write_autocorr_report_csv(std::ostream& os, std::span<const Rational> theoretical,
                               const AutocorrEstimate& empirical) {
    os << "order_or_lag,theoretical,empirical,abs_error\n";
    for (std::size_t m = 0; m < theoretical.size() && m < empirical.values.size(); ++m) {
        const double t = theoretical[m].value();
        const double e = empirical.values[m];
        os << m << ',' << fmt17(t) << ',' << fmt17(e) << ',' << fmt17(std::fabs(e - t)) << '\n';
    }
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
    os << "bin_lo,bin_hi,count,expected_probability\n";
    const std::size_t bins = h.counts.size();
    const double w = (h.hi - h.lo) / static_cast<double>(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double lo = h.lo + w * static_cast<double>(k);
        const double hi = (k + 1 == bins) ? h.hi : h.lo + w * static_cast<double>(k + 1);
        os << fmt17(lo) << ',' << fmt17(hi) << ',' << h.counts[k] << ',';
        if (!h.expected_probability.empty()) os << fmt17(h.expected_probability[k]);
        os << '\n';
    }
    if (h.overflow > 0) os << "outside,outside," << h.overflow << ",\n";
}

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumRow> rows) {
    os << "m,centered,lambda_max,lambda_min,sigma,mu_mean_bound,mu_fluct_bound\n";
    for (const auto& row : rows) {
        const auto s = analytic_spectrum(row.m, row.centered);
        os << row.m << ',' << (row.centered ? 1 : 0) << ',' << fmt17(s.lambda_max) << ','
           << fmt17(s.lambda_min) << ',' << fmt17(s.sigma) << ','
           << fmt17(mu_bound_mean(row.m, row.centered)) << ','
           << fmt17(mu_bound_fluctuation(row.m)) << '\n';
    }
}

double mma_db(double mma, double m0) {
    if (!(m0 > 0.0)) return 0.0;
    const double ratio = std::max(mma / m0, 1e-300);
    return 10.0 * std::log10(ratio);
}

void write_trace_csv(std::ostream& os, const MmaTrace& trace) {
    os << "step,mma,mma_db\n";
    const double m0 = trace.mma.empty() ? 0.0 : trace.mma.front();
    for (std::size_t i = 0; i < trace.mma.size(); ++i) {
        os << i << ',' << fmt17(trace.mma[i]) << ',' << fmt17(mma_db(trace.mma[i], m0)) << '\n';
    }
}

void write_bifurcation_csv(std::ostream& os, std::span<const BifurcationPoint> points) {
    os << "lambda,x\n";
    for (const auto& p : points) os << fmt17(p.lambda) << ',' << fmt17(p.x) << '\n';
}

} // namespace chaoticlms
