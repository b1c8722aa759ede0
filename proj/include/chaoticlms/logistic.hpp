#pragma once

// Chaotic drive-signal source: logistic-map orbits under constant, switched
// or signal-modulated bifurcation-parameter schedules, zero-mean centering,
// and bifurcation-diagram scans.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace chaoticlms {

inline constexpr double kDefaultX0 = 0.123456789;
inline constexpr std::size_t kDefaultBurnIn = 1000;

// One application of x -> lambda * x * (1 - x). Validates its domain;
// generation loops use the unchecked internal step.
double iterate_map(double lambda, double x);

// count-fold composition at fixed lambda.
double iterate_map_n(double lambda, double x, std::size_t count);

struct LogisticParams {
    double lambda = 4.0;
    double x0 = kDefaultX0;
    std::size_t burn_in = kDefaultBurnIn;
};

// Rule producing the bifurcation parameter for each orbit index.
class LambdaSchedule {
public:
    enum class Kind { constant, switched, modulated };

    struct Segment {
        std::size_t start = 0;
        double lambda = 4.0;
    };

    // All factories validate that every lambda the rule can produce lies in (0,4].
    static LambdaSchedule constant(double lambda);
    // Segments must start at 0 and have strictly increasing start indices.
    static LambdaSchedule switched(std::vector<Segment> segments);
    // lambda_i = base + gain * signal[i]; requires |signal| <= 1, gain >= 0,
    // base + gain <= 4 and base - gain > 0. The signal repeats cyclically when
    // the orbit outruns it.
    static LambdaSchedule modulated(double base, double gain, std::vector<double> signal);

    Kind kind() const { return kind_; }
    double at(std::size_t i) const;
    std::string describe() const;

    // Same rule shifted right by `lead` indices; indices below the lead see
    // the rule's value at 0. Lets a warm-up stretch precede index 0 of the
    // original schedule (e.g. filling an adaptive filter's window) without
    // disturbing where switches or modulation land.
    LambdaSchedule delayed(std::size_t lead) const;

private:
    LambdaSchedule() = default;

    Kind kind_ = Kind::constant;
    double constant_ = 4.0;
    std::vector<Segment> segments_;
    double base_ = 0.0;
    double gain_ = 0.0;
    std::shared_ptr<const std::vector<double>> signal_;
    std::size_t lead_ = 0;
};

// A generated sample sequence together with its provenance. Samples are kept
// in raw [0,1] form internally; the centered flag only changes how they are
// exposed, which makes center/uncenter an exact inverse pair.
class Orbit {
public:
    Orbit() = default;
    Orbit(std::vector<double> raw, LambdaSchedule schedule, std::size_t burn_in,
          bool degenerate, bool centered = false);

    std::size_t size() const { return raw_.size(); }
    bool empty() const { return raw_.empty(); }
    bool centered() const { return centered_; }
    bool degenerate() const { return degenerate_; }
    std::size_t burn_in() const { return burn_in_; }
    const LambdaSchedule& schedule() const { return schedule_; }

    double operator[](std::size_t i) const { return centered_ ? raw_[i] - 0.5 : raw_[i]; }

    // Samples as exposed (shifted by -1/2 when centered).
    std::vector<double> values() const;
    const std::vector<double>& raw_values() const { return raw_; }

    // Checks samples[i+1] == lambda_i * u * (1-u) with u = samples[i] against
    // the stored schedule, bit-exactly on the raw representation.
    bool recurrence_consistent() const;

    friend Orbit center(const Orbit& orbit);
    friend Orbit uncenter(const Orbit& orbit);

private:
    std::vector<double> raw_;
    LambdaSchedule schedule_ = LambdaSchedule::constant(4.0);
    std::size_t burn_in_ = 0;
    bool centered_ = false;
    bool degenerate_ = false;
};

// n samples after discarding params.burn_in leading iterates; the first kept
// sample is the state reached after burn-in. Burn-in iterates use the
// schedule's lambda at index 0; kept transitions use lambda at the index of
// the sample they leave. Flags (not throws) collapse onto a fixed point,
// i.e. |x_{i+1}-x_i| < 1e-15 for 100 consecutive steps while lambda == 4.
Orbit generate_orbit(const LogisticParams& params, std::size_t n, const LambdaSchedule& schedule);
Orbit generate_orbit(const LogisticParams& params, std::size_t n);

// Shift every sample by -1/2 (throws std::logic_error if already centered).
Orbit center(const Orbit& orbit);
// Exact inverse of center.
Orbit uncenter(const Orbit& orbit);

struct BifurcationPoint {
    double lambda;
    double x;
};

// For each lambda on a uniform grid: iterate `settle` times from x0, then
// record `keep` successive iterates. Grid points are independent, so the
// scan runs them in parallel; serial::bifurcation_scan is the reference.
std::vector<BifurcationPoint> bifurcation_scan(double lambda_min, double lambda_max,
                                               std::size_t lambda_steps, std::size_t settle,
                                               std::size_t keep, double x0 = kDefaultX0);

namespace serial {
std::vector<BifurcationPoint> bifurcation_scan(double lambda_min, double lambda_max,
                                               std::size_t lambda_steps, std::size_t settle,
                                               std::size_t keep, double x0 = kDefaultX0);
} // namespace serial

} // namespace chaoticlms
