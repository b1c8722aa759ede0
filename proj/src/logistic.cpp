#include "chaoticlms/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chaoticlms {

namespace {

// Unchecked map step. lambda*x*(1-x) <= 1 in exact arithmetic for
// lambda <= 4; clamp the possible last-bit overshoot so stored samples
// always satisfy the [0,1] range invariant.
inline double map_step(double lambda, double x) {
    double y = lambda * x * (1.0 - x);
    if (y > 1.0) y = 1.0;
    return y;
}

constexpr double kFixedPointEps = 1e-15;
constexpr int kFixedPointRun = 100;

} // namespace

double iterate_map(double lambda, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("iterate_map: x must lie in [0,1]");
    if (!(lambda > 0.0 && lambda <= 4.0))
        throw std::domain_error("iterate_map: lambda must lie in (0,4]");
    return map_step(lambda, x);
}

double iterate_map_n(double lambda, double x, std::size_t count) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("iterate_map_n: x must lie in [0,1]");
    if (!(lambda > 0.0 && lambda <= 4.0))
        throw std::domain_error("iterate_map_n: lambda must lie in (0,4]");
    for (std::size_t i = 0; i < count; ++i) x = map_step(lambda, x);
    return x;
}

LambdaSchedule LambdaSchedule::constant(double lambda) {
    if (!(lambda > 0.0 && lambda <= 4.0))
        throw std::invalid_argument("LambdaSchedule: constant lambda must lie in (0,4]");
    LambdaSchedule s;
    s.kind_ = Kind::constant;
    s.constant_ = lambda;
    return s;
}

LambdaSchedule LambdaSchedule::switched(std::vector<Segment> segments) {
    if (segments.empty())
        throw std::invalid_argument("LambdaSchedule: switched schedule needs segments");
    if (segments.front().start != 0)
        throw std::invalid_argument("LambdaSchedule: first segment must start at index 0");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (!(segments[i].lambda > 0.0 && segments[i].lambda <= 4.0))
            throw std::invalid_argument("LambdaSchedule: segment lambda must lie in (0,4]");
        if (i > 0 && segments[i].start <= segments[i - 1].start)
            throw std::invalid_argument("LambdaSchedule: segment starts must be strictly increasing");
    }
    LambdaSchedule s;
    s.kind_ = Kind::switched;
    s.segments_ = std::move(segments);
    return s;
}

LambdaSchedule LambdaSchedule::modulated(double base, double gain, std::vector<double> signal) {
    if (signal.empty())
        throw std::invalid_argument("LambdaSchedule: modulated schedule needs a signal");
    if (gain < 0.0)
        throw std::invalid_argument("LambdaSchedule: modulation gain must be >= 0");
    if (!(base + gain <= 4.0))
        throw std::invalid_argument("LambdaSchedule: base + gain must be <= 4");
    if (!(base - gain > 0.0))
        throw std::invalid_argument("LambdaSchedule: base - gain must be > 0");
    for (double v : signal)
        if (!(std::fabs(v) <= 1.0))
            throw std::invalid_argument("LambdaSchedule: modulation signal must satisfy |s| <= 1");
    LambdaSchedule s;
    s.kind_ = Kind::modulated;
    s.base_ = base;
    s.gain_ = gain;
    s.signal_ = std::make_shared<const std::vector<double>>(std::move(signal));
    return s;
}

double LambdaSchedule::at(std::size_t i) const {
    const std::size_t j = i >= lead_ ? i - lead_ : 0;
    switch (kind_) {
    case Kind::constant:
        return constant_;
    case Kind::switched: {
        // last segment whose start <= j
        std::size_t lo = 0;
        for (std::size_t k = segments_.size(); k-- > 0;) {
            if (segments_[k].start <= j) {
                lo = k;
                break;
            }
        }
        return segments_[lo].lambda;
    }
    case Kind::modulated: {
        const auto& sig = *signal_;
        double lam = base_ + gain_ * sig[j % sig.size()];
        // base + gain <= 4 holds exactly; guard the rounding of the product
        return std::min(lam, 4.0);
    }
    }
    return constant_;
}

LambdaSchedule LambdaSchedule::delayed(std::size_t lead) const {
    LambdaSchedule s = *this;
    s.lead_ += lead;
    return s;
}

std::string LambdaSchedule::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::constant:
        os << "constant lambda=" << constant_;
        break;
    case Kind::switched:
        os << "switched";
        for (const auto& seg : segments_) os << " " << seg.start << ":" << seg.lambda;
        break;
    case Kind::modulated:
        os << "modulated base=" << base_ << " gain=" << gain_
           << " signal_len=" << signal_->size();
        break;
    }
    if (lead_ > 0) os << " lead=" << lead_;
    return os.str();
}

Orbit::Orbit(std::vector<double> raw, LambdaSchedule schedule, std::size_t burn_in,
             bool degenerate, bool centered)
    : raw_(std::move(raw)),
      schedule_(std::move(schedule)),
      burn_in_(burn_in),
      centered_(centered),
      degenerate_(degenerate) {}

std::vector<double> Orbit::values() const {
    if (!centered_) return raw_;
    std::vector<double> out(raw_.size());
    for (std::size_t i = 0; i < raw_.size(); ++i) out[i] = raw_[i] - 0.5;
    return out;
}

bool Orbit::recurrence_consistent() const {
    for (std::size_t i = 0; i + 1 < raw_.size(); ++i) {
        if (raw_[i + 1] != map_step(schedule_.at(i), raw_[i])) return false;
    }
    return true;
}

Orbit generate_orbit(const LogisticParams& params, std::size_t n, const LambdaSchedule& schedule) {
    if (n < 1) throw std::invalid_argument("generate_orbit: n must be >= 1");
    if (!(params.x0 > 0.0 && params.x0 < 1.0))
        throw std::domain_error("generate_orbit: x0 must lie in (0,1)");

    std::vector<double> samples(n);
    double x = params.x0;
    int run = 0;
    bool degenerate = false;

    auto track = [&](double lambda, double prev, double next) {
        if (lambda == 4.0 && std::fabs(next - prev) < kFixedPointEps) {
            if (++run >= kFixedPointRun) degenerate = true;
        } else {
            run = 0;
        }
    };

    const double lambda0 = schedule.at(0);
    for (std::size_t i = 0; i < params.burn_in; ++i) {
        const double next = map_step(lambda0, x);
        track(lambda0, x, next);
        x = next;
    }

    samples[0] = x;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double lambda = schedule.at(i);
        const double next = map_step(lambda, x);
        track(lambda, x, next);
        x = next;
        samples[i + 1] = x;
    }

    // Short orbits cannot exhibit 100 consecutive near-equal steps, and a
    // collapse can land exactly on the last stored sample. Probe forward
    // (without storing) so e.g. x0 = 0.75 is flagged even for n = 3; a
    // chaotic orbit breaks out of this loop immediately.
    if (!degenerate) {
        std::size_t i = n - 1;
        while (!degenerate) {
            const double lambda = schedule.at(i++);
            if (lambda != 4.0) break;
            const double next = map_step(lambda, x);
            if (!(std::fabs(next - x) < kFixedPointEps)) break;
            if (++run >= kFixedPointRun) degenerate = true;
            x = next;
        }
    }

    return Orbit(std::move(samples), schedule, params.burn_in, degenerate);
}

Orbit generate_orbit(const LogisticParams& params, std::size_t n) {
    return generate_orbit(params, n, LambdaSchedule::constant(params.lambda));
}

Orbit center(const Orbit& orbit) {
    if (orbit.centered()) throw std::logic_error("center: orbit is already centered");
    Orbit out = orbit;
    out.centered_ = true;
    return out;
}

Orbit uncenter(const Orbit& orbit) {
    if (!orbit.centered()) throw std::logic_error("uncenter: orbit is not centered");
    Orbit out = orbit;
    out.centered_ = false;
    return out;
}

namespace {

void scan_one_lambda(double lambda, double x0, std::size_t settle, std::size_t keep,
                     BifurcationPoint* out) {
    double x = x0;
    for (std::size_t i = 0; i < settle; ++i) x = map_step(lambda, x);
    for (std::size_t i = 0; i < keep; ++i) {
        out[i] = BifurcationPoint{lambda, x};
        x = map_step(lambda, x);
    }
}

void validate_scan(double lambda_min, double lambda_max, std::size_t lambda_steps,
                   std::size_t settle, std::size_t keep, double x0) {
    if (!(0.0 < lambda_min && lambda_min < lambda_max && lambda_max <= 4.0))
        throw std::invalid_argument("bifurcation_scan: need 0 < lambda_min < lambda_max <= 4");
    if (lambda_steps < 1 || settle < 1 || keep < 1)
        throw std::invalid_argument("bifurcation_scan: lambda_steps, settle, keep must be >= 1");
    if (!(x0 > 0.0 && x0 < 1.0))
        throw std::domain_error("bifurcation_scan: x0 must lie in (0,1)");
}

inline double grid_lambda(double lo, double hi, std::size_t steps, std::size_t j) {
    if (steps == 1) return lo;
    if (j == steps - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(steps - 1);
}

} // namespace

std::vector<BifurcationPoint> bifurcation_scan(double lambda_min, double lambda_max,
                                               std::size_t lambda_steps, std::size_t settle,
                                               std::size_t keep, double x0) {
    validate_scan(lambda_min, lambda_max, lambda_steps, settle, keep, x0);
    std::vector<BifurcationPoint> points(lambda_steps * keep);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(lambda_steps); ++j) {
        const double lambda = grid_lambda(lambda_min, lambda_max, lambda_steps,
                                          static_cast<std::size_t>(j));
        scan_one_lambda(lambda, x0, settle, keep, points.data() + j * keep);
    }
    return points;
}

namespace serial {

std::vector<BifurcationPoint> bifurcation_scan(double lambda_min, double lambda_max,
                                               std::size_t lambda_steps, std::size_t settle,
                                               std::size_t keep, double x0) {
    validate_scan(lambda_min, lambda_max, lambda_steps, settle, keep, x0);
    std::vector<BifurcationPoint> points(lambda_steps * keep);
    for (std::size_t j = 0; j < lambda_steps; ++j) {
        const double lambda = grid_lambda(lambda_min, lambda_max, lambda_steps, j);
        scan_one_lambda(lambda, x0, settle, keep, points.data() + j * keep);
    }
    return points;
}

} // namespace serial

} // namespace chaoticlms
