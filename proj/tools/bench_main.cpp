// Benchmark: OpenMP-parallel kernels vs the serial reference implementation.
//
// Every parallel kernel in this library is required to produce results that are
// bitwise identical to its serial counterpart (fixed-block RNG streams, fixed
// reduction order).  This tool times both paths on representative workloads and
// verifies that equality, exiting nonzero on any mismatch.
//
// Usage: mim-bench [n_samples] [threads]
//   n_samples  mixture-sampling workload size (default 4000000)
//   threads    thread count for the parallel path (default: OpenMP default)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "mimdetect/detectors.hpp"
#include "mimdetect/distributions.hpp"
#include "mimdetect/error_analysis.hpp"
#include "mimdetect/experiments.hpp"
#include "mimdetect/parallel.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct BenchRow {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool identical = false;
};

void print_table(const std::vector<BenchRow>& rows) {
    std::printf("%-28s %12s %12s %9s %10s\n", "workload", "serial(ms)", "parallel(ms)",
                "speedup", "identical");
    for (const auto& r : rows) {
        std::printf("%-28s %12.1f %12.1f %8.2fx %10s\n", r.name.c_str(), r.serial_ms,
                    r.parallel_ms, r.serial_ms / (r.parallel_ms > 0.0 ? r.parallel_ms : 1.0),
                    r.identical ? "yes" : "MISMATCH");
    }
}

bool same_samples(const std::vector<mimd::LabeledSample>& a,
                  const std::vector<mimd::LabeledSample>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::memcmp(&a[i].x, &b[i].x, sizeof(double)) != 0 || a[i].label != b[i].label) {
            return false;
        }
    }
    return true;
}

bool same_counts(const mimd::ConfusionCounts& a, const mimd::ConfusionCounts& b) {
    return a.n_a == b.n_a && a.n_b == b.n_b && a.misses == b.misses &&
           a.false_alarms == b.false_alarms;
}

bool same_rates(const mimd::ErrorRates& a, const mimd::ErrorRates& b) {
    return std::memcmp(&a, &b, sizeof(mimd::ErrorRates)) == 0;
}

bool same_rows(const std::vector<mimd::SweepRow>& a, const std::vector<mimd::SweepRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].sweep_value != b[i].sweep_value || a[i].source != b[i].source ||
            std::memcmp(&a[i].s0, &b[i].s0, sizeof(double)) != 0 ||
            !same_rates(a[i].bayes, b[i].bayes) || !same_rates(a[i].mim, b[i].mim) ||
            a[i].status != b[i].status) {
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_samples = 4'000'000;
    if (argc > 1) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(argv[1], &end, 10);
        if (end == argv[1] || *end != '\0' || v == 0) {
            std::fprintf(stderr, "usage: mim-bench [n_samples] [threads]\n");
            return 1;
        }
        n_samples = static_cast<std::size_t>(v);
    }
    if (argc > 2) {
        const int t = std::atoi(argv[2]);
        if (t <= 0) {
            std::fprintf(stderr, "usage: mim-bench [n_samples] [threads]\n");
            return 1;
        }
        mimd::set_threads(t);
    }

    std::printf("mim-bench: n_samples=%zu, parallel path uses %d thread(s)\n\n", n_samples,
                mimd::effective_threads());

    // Reference model: rare-event Gaussian pair with strongly unbalanced priors.
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.5, 0.1);
    const mimd::PriorPair priors(1.0 - 1.0 / 1001.0, 1.0 / 1001.0);
    const mimd::DetectorModel model{&da, &db, priors, 5.2026346};

    std::vector<BenchRow> rows;

    // 1. Mixture sampling.
    std::vector<mimd::LabeledSample> serial_samples, parallel_samples;
    {
        BenchRow r{"mixture sampling", 0, 0, false};
        auto t0 = Clock::now();
        serial_samples = mimd::sample_mixture(da, db, priors, n_samples, 42, mimd::Exec::Serial);
        r.serial_ms = ms_since(t0);
        t0 = Clock::now();
        parallel_samples =
            mimd::sample_mixture(da, db, priors, n_samples, 42, mimd::Exec::Parallel);
        r.parallel_ms = ms_since(t0);
        r.identical = same_samples(serial_samples, parallel_samples);
        rows.push_back(r);
    }

    // 2. Monte Carlo error rates over those samples (both decision rules).
    {
        BenchRow r{"monte carlo evaluation", 0, 0, false};
        const auto bayes = mimd::make_decider(model, mimd::Rule::Bayes);
        const auto mim = mimd::make_decider(model, mimd::Rule::Mim);
        auto t0 = Clock::now();
        const auto sb = mimd::error_rates_monte_carlo(bayes, serial_samples, priors,
                                                      mimd::Exec::Serial);
        const auto sm =
            mimd::error_rates_monte_carlo(mim, serial_samples, priors, mimd::Exec::Serial);
        r.serial_ms = ms_since(t0);
        t0 = Clock::now();
        const auto pb = mimd::error_rates_monte_carlo(bayes, parallel_samples, priors,
                                                      mimd::Exec::Parallel);
        const auto pm =
            mimd::error_rates_monte_carlo(mim, parallel_samples, priors, mimd::Exec::Parallel);
        r.parallel_ms = ms_since(t0);
        r.identical = same_counts(sb.counts, pb.counts) && same_counts(sm.counts, pm.counts) &&
                      same_rates(sb.rates, pb.rates) && same_rates(sm.rates, pm.rates);
        rows.push_back(r);
    }

    // 3. Quadrature error rates (boundary scan + adaptive Simpson).
    {
        BenchRow r{"quadrature error rates", 0, 0, false};
        const auto mim = mimd::make_decider(model, mimd::Rule::Mim);
        auto t0 = Clock::now();
        const auto s =
            mimd::error_rates_quadrature(mim, priors, da, db, 1e-10, mimd::Exec::Serial);
        r.serial_ms = ms_since(t0);
        t0 = Clock::now();
        const auto p =
            mimd::error_rates_quadrature(mim, priors, da, db, 1e-10, mimd::Exec::Parallel);
        r.parallel_ms = ms_since(t0);
        r.identical = same_rates(s, p);
        rows.push_back(r);
    }

    // 4. End-to-end prior-ratio sweep (reduced Monte Carlo size).
    {
        BenchRow r{"prior-ratio sweep", 0, 0, false};
        mimd::SweepSpec spec = mimd::default_prior_sweep();
        spec.n_samples = 200'000;
        auto t0 = Clock::now();
        const auto s = mimd::run_prior_sweep(spec, mimd::Exec::Serial);
        r.serial_ms = ms_since(t0);
        t0 = Clock::now();
        const auto p = mimd::run_prior_sweep(spec, mimd::Exec::Parallel);
        r.parallel_ms = ms_since(t0);
        r.identical = same_rows(s, p);
        rows.push_back(r);
    }

    std::printf("\n");
    print_table(rows);

    bool all_ok = true;
    for (const auto& r : rows) all_ok = all_ok && r.identical;
    std::printf("\n%s\n", all_ok ? "serial and parallel paths agree bitwise on every workload"
                                 : "MISMATCH between serial and parallel paths");
    return all_ok ? 0 : 1;
}
