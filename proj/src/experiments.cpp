#include "fracmkt/experiments.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "fracmkt/error.hpp"

namespace fracmkt {

unsigned default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = default_jobs();
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(jobs, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n && !failed; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        failed = true;
                    }
                }
            });
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

BatchResult run_batch(const ModelParams& params, const Population& population, std::size_t reps,
                      std::uint64_t master_seed, unsigned jobs, std::uint64_t value_index) {
    if (reps == 0) throw ConfigError("reps must be at least 1");
    params.validate();
    check_population(population);

    BatchResult result;
    result.days.resize(reps);
    parallel_for(reps, jobs, [&](std::size_t i) {
        result.days[i] = run_day(population, params, derive_seed(master_seed, value_index, i)).metrics;
    });
    result.aggregate = aggregate(result.days);
    return result;
}

ModelParams apply_axis(const ModelParams& base, std::string_view axis, double value) {
    ModelParams p = base;
    try {
        if (axis == kAxisRangeWidth) {
            const double mid = 0.5 * (base.market_lo + base.market_hi);
            p.set_market_range(mid - 0.5 * value, mid + 0.5 * value);
        } else if (axis == kAxisMidpoint) {
            const double width = base.market_hi - base.market_lo;
            p.set_market_range(value - 0.5 * width, value + 0.5 * width);
        } else {
            set_param(p, axis, value);
        }
        p.validate();
    } catch (const ConfigError& e) {
        std::ostringstream msg;
        msg << "sweep value " << value << " for " << axis << ": " << e.what();
        throw ConfigError(msg.str());
    }
    return p;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Population& population, unsigned jobs) {
    if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size());
    for (double v : spec.values) rows.push_back(SweepRow{v, apply_axis(spec.base_params, spec.parameter, v), {}});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].metrics = run_batch(rows[i].params, population, spec.reps, spec.master_seed, jobs, i).aggregate;
    }
    return rows;
}

}  // namespace fracmkt
