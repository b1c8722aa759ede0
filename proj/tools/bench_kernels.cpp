// Benchmark of the OpenMP kernels against their serial references.
// Each kernel is timed best-of-N and the results are cross-checked; a
// mismatch beyond the stated tolerance fails the benchmark.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "chaoticlms/logistic.hpp"
#include "chaoticlms/stats.hpp"

using namespace chaoticlms;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class F>
double best_of(int reps, const F& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_ms();
        f();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

struct Row {
    std::string name;
    double serial_ms;
    double parallel_ms;
};

void print_row(const Row& r) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", r.name.c_str(), r.serial_ms,
                r.parallel_ms, r.serial_ms / r.parallel_ms);
}

bool close(double a, double b, double tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = 4'000'000;
    int reps = 3;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--n") && i + 1 < argc)
            n = static_cast<std::size_t>(std::stoull(argv[++i]));
        else if (!std::strcmp(argv[i], "--reps") && i + 1 < argc)
            reps = std::stoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: %s [--n SAMPLES] [--reps R]\n", argv[0]);
            return 2;
        }
    }

#if defined(_OPENMP)
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel kernels run serially\n");
#endif
    std::printf("sample count: %zu, best of %d reps\n\n", n, reps);
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    LogisticParams params;
    const Orbit orbit = generate_orbit(params, n, LambdaSchedule::constant(4.0));
    const auto raw = orbit.values();
    const auto centered = center(orbit).values();

    bool ok = true;

    {
        std::vector<double> rs, rp;
        Row row{"empirical_moments(8)",
                best_of(reps, [&] { rs = serial::empirical_moments(raw, 8); }),
                best_of(reps, [&] { rp = empirical_moments(raw, 8); })};
        print_row(row);
        for (std::size_t i = 0; i < rs.size(); ++i) ok = ok && close(rs[i], rp[i], 1e-12);
    }
    {
        AutocorrEstimate rs, rp;
        Row row{"empirical_autocorr(64)",
                best_of(reps, [&] { rs = serial::empirical_autocorr(centered, 64); }),
                best_of(reps, [&] { rp = empirical_autocorr(centered, 64); })};
        print_row(row);
        for (std::size_t i = 0; i < rs.values.size(); ++i)
            ok = ok && close(rs.values[i], rp.values[i], 1e-12);
    }
    {
        Histogram rs, rp;
        Row row{"histogram(200)",
                best_of(reps, [&] { rs = serial::histogram(raw, 200, 0.0, 1.0, true); }),
                best_of(reps, [&] { rp = histogram(raw, 200, 0.0, 1.0, true); })};
        print_row(row);
        ok = ok && rs.counts == rp.counts && rs.overflow == rp.overflow;
    }
    {
        Matrix rs, rp;
        Row row{"empirical_fourth_moment(5)",
                best_of(reps, [&] { rs = serial::empirical_fourth_moment(centered, 5); }),
                best_of(reps, [&] { rp = empirical_fourth_moment(centered, 5); })};
        print_row(row);
        for (std::size_t i = 0; i < rs.a.size(); ++i) ok = ok && close(rs.a[i], rp.a[i], 1e-12);
    }
    {
        double rs = 0, rp = 0;
        Row row{"quadrature_autocorr(12)",
                best_of(reps, [&] { rs = serial::quadrature_autocorr(12); }),
                best_of(reps, [&] { rp = quadrature_autocorr(12); })};
        print_row(row);
        ok = ok && rs == rp; // identical panel partition and combine order
    }
    {
        std::vector<BifurcationPoint> rs, rp;
        Row row{"bifurcation_scan(400x100)",
                best_of(reps, [&] { rs = serial::bifurcation_scan(3.4, 4.0, 400, 800, 100); }),
                best_of(reps, [&] { rp = bifurcation_scan(3.4, 4.0, 400, 800, 100); })};
        print_row(row);
        ok = ok && rs.size() == rp.size();
        for (std::size_t i = 0; ok && i < rs.size(); ++i)
            ok = rs[i].lambda == rp[i].lambda && rs[i].x == rp[i].x;
    }

    std::printf("\n%s\n", ok ? "serial and parallel kernels agree" : "MISMATCH between kernels");
    return ok ? 0 : 1;
}
