#include "chaoticlms/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chaoticlms {

namespace {

constexpr double kPi = std::numbers::pi;

inline double map4(double x) {
    double y = 4.0 * x * (1.0 - x);
    return y > 1.0 ? 1.0 : y;
}

// ---- composite Gauss-Legendre quadrature -------------------------------

// 16-point Gauss-Legendre rule on [-1,1] (positive abscissae + weights).
constexpr double kGlX[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGlW[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

template <class F>
double gl16_panel(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double dx = h * kGlX[k];
        s += kGlW[k] * (f(c - dx) + f(c + dx));
    }
    return s * h;
}

// Panel partials are stored per index and combined in order, so the value
// does not depend on the thread count.
template <class F>
double integrate_panels(const F& f, double a, double b, std::size_t panels, bool parallel) {
    std::vector<double> part(panels);
    const double w = (b - a) / static_cast<double>(panels);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(panels); ++p) {
            const double lo = a + w * static_cast<double>(p);
            part[p] = gl16_panel(f, lo, lo + w);
        }
    } else {
        for (std::size_t p = 0; p < panels; ++p) {
            const double lo = a + w * static_cast<double>(p);
            part[p] = gl16_panel(f, lo, lo + w);
        }
    }
    double sum = 0.0;
    for (double v : part) sum += v;
    return sum;
}

struct AdaptiveResult {
    double value = 0.0;
    bool converged = false;
};

template <class F>
AdaptiveResult integrate_adaptive(const F& f, double a, double b, double tol,
                                  std::size_t start_panels, std::size_t max_panels,
                                  bool parallel) {
    double prev = integrate_panels(f, a, b, start_panels, parallel);
    for (std::size_t panels = start_panels * 2; panels <= max_panels; panels *= 2) {
        const double cur = integrate_panels(f, a, b, panels, parallel);
        if (std::fabs(cur - prev) < tol) return {cur, true};
        prev = cur;
    }
    return {prev, false};
}

double quadrature_autocorr_impl(unsigned m, bool parallel) {
    if (m > 20)
        throw std::domain_error("quadrature_autocorr: supported for lags 0..20");
    // x = sin^2(theta) turns rho_4(x) dx into (2/pi) dtheta; the integrand
    // oscillates ~2^m times on [0, pi/2], so the panel budget grows with m.
    auto f = [m](double theta) {
        const double s = std::sin(theta);
        const double x = s * s;
        double y = x;
        for (unsigned k = 0; k < m; ++k) y = map4(y);
        return x * y;
    };
    const auto r = integrate_adaptive(f, 0.0, kPi / 2.0, 1e-8, 32, std::size_t{1} << 20,
                                      parallel);
    if (!r.converged)
        throw std::runtime_error("quadrature_autocorr: refinement budget exhausted");
    return r.value * (2.0 / kPi);
}

} // namespace

double invariant_density(double x) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("invariant_density: x must lie in (0,1)");
    return 1.0 / (kPi * std::sqrt(x * (1.0 - x)));
}

double invariant_cdf(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("invariant_cdf: x must lie in [0,1]");
    return 2.0 * std::asin(std::sqrt(x)) / kPi;
}

Rational theoretical_moment(unsigned nu) {
    // m_nu = prod_{k=1..nu} (2k-1)/(2k), reduced at every step
    Rational m(1);
    for (unsigned k = 1; k <= nu; ++k)
        m = m * Rational(2LL * k - 1, 2LL * k);
    return m;
}

Rational centered_moment(unsigned nu) {
    // binomial expansion of E[(x - 1/2)^nu] around the raw moments
    Rational sum(0);
    for (unsigned k = 0; k <= nu; ++k) {
        const unsigned p = nu - k;
        Rational term = rational_binomial(nu, k) * theoretical_moment(k);
        if (p > 0) {
            if (p >= 63) throw std::overflow_error("centered_moment: order too large");
            term = term * Rational((p % 2 == 0) ? 1 : -1, 1LL << p);
        }
        sum = sum + term;
    }
    return sum;
}

Rational pochhammer_half(unsigned nu) {
    Rational r(1);
    for (unsigned j = 0; j < nu; ++j)
        r = r * Rational(2LL * j + 1, 2LL);
    return r;
}

Rational rational_factorial(unsigned nu) {
    Rational r(1);
    for (unsigned j = 2; j <= nu; ++j) r = r * Rational(static_cast<long long>(j));
    return r;
}

double kummer_series(double a, double b, double xi, double tol) {
    if (b <= 0.0 && b == std::floor(b))
        throw std::domain_error("kummer_series: b must not be a nonpositive integer");
    if (!(tol > 0.0)) throw std::domain_error("kummer_series: tol must be positive");

    double term = 1.0; // r = 0
    double sum = 1.0;
    for (int r = 0; r < 10000; ++r) {
        const double next = term * ((a + r) / ((b + r) * (r + 1.0))) * xi;
        if (std::fabs(next) < tol) {
            return sum + next;
        }
        term = next;
        sum += term;
    }
    throw std::runtime_error("kummer_series: no convergence within 10^4 terms");
}

double quadrature_moment(unsigned nu) {
    // (2/pi) * integral_0^{pi/2} sin^{2 nu}(theta) dtheta
    auto f = [nu](double theta) {
        const double s2 = std::sin(theta) * std::sin(theta);
        double p = 1.0;
        for (unsigned k = 0; k < nu; ++k) p *= s2;
        return p;
    };
    const auto r = integrate_adaptive(f, 0.0, kPi / 2.0, 1e-12, 8, std::size_t{1} << 14, true);
    if (!r.converged)
        throw std::runtime_error("quadrature_moment: refinement budget exhausted");
    return r.value * (2.0 / kPi);
}

Rational theoretical_autocorr(unsigned m, bool centered) {
    if (centered) return m == 0 ? Rational(1, 8) : Rational(0);
    return m == 0 ? Rational(3, 8) : Rational(1, 4);
}

double quadrature_autocorr(unsigned m) { return quadrature_autocorr_impl(m, true); }

namespace serial {
double quadrature_autocorr(unsigned m) { return quadrature_autocorr_impl(m, false); }
} // namespace serial

// ---- empirical estimators ----------------------------------------------

namespace {

constexpr std::size_t kBlock = std::size_t{1} << 16;

std::vector<double> moments_impl(std::span<const double> samples, unsigned max_nu,
                                 bool parallel) {
    const std::size_t n = samples.size();
    if (n == 0) throw std::invalid_argument("empirical_moments: empty input");
    const unsigned cols = max_nu + 1;

    if (!parallel) {
        // plain reference loop
        std::vector<double> acc(cols, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double p = 1.0;
            for (unsigned nu = 0; nu < cols; ++nu) {
                acc[nu] += p;
                p *= samples[i];
            }
        }
        for (auto& v : acc) v /= static_cast<double>(n);
        return acc;
    }

    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> part(blocks * cols, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double* acc = part.data() + static_cast<std::size_t>(b) * cols;
        for (std::size_t i = lo; i < hi; ++i) {
            double p = 1.0;
            for (unsigned nu = 0; nu < cols; ++nu) {
                acc[nu] += p;
                p *= samples[i];
            }
        }
    }
    std::vector<double> out(cols, 0.0);
    for (std::size_t b = 0; b < blocks; ++b)
        for (unsigned nu = 0; nu < cols; ++nu) out[nu] += part[b * cols + nu];
    for (auto& v : out) v /= static_cast<double>(n);
    return out;
}

AutocorrEstimate autocorr_impl(std::span<const double> samples, std::size_t max_lag,
                               bool parallel) {
    const std::size_t n = samples.size();
    if (n <= max_lag)
        throw std::length_error("empirical_autocorr: need more samples than max_lag");
    const std::size_t cols = max_lag + 1;

    AutocorrEstimate est;
    est.max_lag = max_lag;
    est.sample_count = n;
    est.values.assign(cols, 0.0);

    if (!parallel) {
        for (std::size_t m = 0; m <= max_lag; ++m) {
            double s = 0.0;
            for (std::size_t i = 0; i + m < n; ++i) s += samples[i] * samples[i + m];
            est.values[m] = s / static_cast<double>(n - m);
        }
        return est;
    }

    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> part(blocks * cols, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double* acc = part.data() + static_cast<std::size_t>(b) * cols;
        for (std::size_t m = 0; m <= max_lag; ++m) {
            const std::size_t end = std::min(hi, n - m);
            double s = 0.0;
            for (std::size_t i = lo; i < end; ++i) s += samples[i] * samples[i + m];
            acc[m] = s;
        }
    }
    for (std::size_t m = 0; m <= max_lag; ++m) {
        double s = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) s += part[b * cols + m];
        est.values[m] = s / static_cast<double>(n - m);
    }
    return est;
}

Histogram histogram_impl(std::span<const double> samples, std::size_t bins, double lo,
                         double hi, bool rho4_expected, bool parallel) {
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("histogram: need lo < hi");

    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);

    const double scale = static_cast<double>(bins) / (hi - lo);
    auto bin_of = [&](double x) -> std::ptrdiff_t {
        if (x < lo || x > hi) return -1;
        auto idx = static_cast<std::ptrdiff_t>((x - lo) * scale);
        if (idx >= static_cast<std::ptrdiff_t>(bins)) idx = static_cast<std::ptrdiff_t>(bins) - 1;
        return idx;
    };

    const std::size_t n = samples.size();
    if (!parallel) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto idx = bin_of(samples[i]);
            if (idx < 0)
                ++h.overflow;
            else
                ++h.counts[static_cast<std::size_t>(idx)];
        }
    } else {
        const std::size_t blocks = (n + kBlock - 1) / kBlock;
        std::vector<std::size_t> part(blocks * (bins + 1), 0);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
            const std::size_t blo = static_cast<std::size_t>(b) * kBlock;
            const std::size_t bhi = std::min(n, blo + kBlock);
            std::size_t* acc = part.data() + static_cast<std::size_t>(b) * (bins + 1);
            for (std::size_t i = blo; i < bhi; ++i) {
                const auto idx = bin_of(samples[i]);
                if (idx < 0)
                    ++acc[bins];
                else
                    ++acc[static_cast<std::size_t>(idx)];
            }
        }
        for (std::size_t b = 0; b < blocks; ++b) {
            for (std::size_t k = 0; k < bins; ++k) h.counts[k] += part[b * (bins + 1) + k];
            h.overflow += part[b * (bins + 1) + bins];
        }
    }

    if (rho4_expected) {
        h.expected_probability.resize(bins);
        auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
        const double w = (hi - lo) / static_cast<double>(bins);
        for (std::size_t k = 0; k < bins; ++k) {
            const double a = clamp01(lo + w * static_cast<double>(k));
            const double b = clamp01(k + 1 == bins ? hi : lo + w * static_cast<double>(k + 1));
            h.expected_probability[k] = invariant_cdf(b) - invariant_cdf(a);
        }
    }
    return h;
}

Matrix fourth_moment_impl(std::span<const double> samples, std::size_t m, bool parallel) {
    const std::size_t w = m + 1;
    const std::size_t n = samples.size();
    if (n < w) throw std::length_error("empirical_fourth_moment: need at least m+1 samples");
    const std::size_t windows = n - m;

    auto accumulate_range = [&](std::size_t lo, std::size_t hi, double* acc) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double* win = samples.data() + i; // window i covers samples [i, i+m]
            double s2 = 0.0;
            for (std::size_t j = 0; j < w; ++j) s2 += win[j] * win[j];
            for (std::size_t j = 0; j < w; ++j) {
                const double sj = s2 * win[j];
                double* row = acc + j * w;
                for (std::size_t k = j; k < w; ++k) row[k] += sj * win[k];
            }
        }
    };

    Matrix out(w);
    if (!parallel) {
        accumulate_range(0, windows, out.a.data());
    } else {
        const std::size_t blocks = (windows + kBlock - 1) / kBlock;
        std::vector<double> part(blocks * w * w, 0.0);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
            const std::size_t hi = std::min(windows, lo + kBlock);
            accumulate_range(lo, hi, part.data() + static_cast<std::size_t>(b) * w * w);
        }
        for (std::size_t b = 0; b < blocks; ++b)
            for (std::size_t e = 0; e < w * w; ++e) out.a[e] += part[b * w * w + e];
    }

    const double inv = 1.0 / static_cast<double>(windows);
    for (std::size_t j = 0; j < w; ++j)
        for (std::size_t k = j; k < w; ++k) {
            const double v = out.at(j, k) * inv;
            out.at(j, k) = v;
            out.at(k, j) = v;
        }
    return out;
}

} // namespace

std::vector<double> empirical_moments(std::span<const double> samples, unsigned max_nu) {
    return moments_impl(samples, max_nu, true);
}

AutocorrEstimate empirical_autocorr(std::span<const double> samples, std::size_t max_lag) {
    return autocorr_impl(samples, max_lag, true);
}

Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi,
                    bool rho4_expected) {
    return histogram_impl(samples, bins, lo, hi, rho4_expected, true);
}

Matrix empirical_fourth_moment(std::span<const double> samples, std::size_t m) {
    return fourth_moment_impl(samples, m, true);
}

MomentTable moment_table(unsigned max_order) {
    MomentTable t;
    t.max_order = max_order;
    t.raw.reserve(max_order + 1);
    t.centered.reserve(max_order + 1);
    for (unsigned nu = 0; nu <= max_order; ++nu) {
        t.raw.push_back(theoretical_moment(nu));
        t.centered.push_back(centered_moment(nu));
    }
    return t;
}

namespace serial {

std::vector<double> empirical_moments(std::span<const double> samples, unsigned max_nu) {
    return moments_impl(samples, max_nu, false);
}

AutocorrEstimate empirical_autocorr(std::span<const double> samples, std::size_t max_lag) {
    return autocorr_impl(samples, max_lag, false);
}

Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi,
                    bool rho4_expected) {
    return histogram_impl(samples, bins, lo, hi, rho4_expected, false);
}

Matrix empirical_fourth_moment(std::span<const double> samples, std::size_t m) {
    return fourth_moment_impl(samples, m, false);
}

} // namespace serial

} // namespace chaoticlms
