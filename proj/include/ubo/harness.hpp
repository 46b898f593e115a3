#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ubo/benchmarks.hpp"
#include "ubo/driver.hpp"
#include "ubo/math.hpp"
#include "ubo/rng.hpp"

namespace ubo {

#ifndef UBO_DATA_DIR
#define UBO_DATA_DIR "data"
#endif

inline std::string default_data_dir() { return UBO_DATA_DIR; }

/// Salt mixed into the per-run seed so robustness probes consume a stream
/// independent from the optimizer's draws.
inline constexpr std::uint64_t kProbeStreamSalt = 0xC2B2AE3D27D4EB4FULL;
/// Likewise for the optional observation noise added to outcomes.
inline constexpr std::uint64_t kOutcomeNoiseStreamSalt = 0x165667B19E3779F9ULL;

struct ExperimentConfig {
    std::string function = "rkhs";  // rkhs | gm | custom-file
    std::string function_file;      // mixture fixture path for custom-file
    std::string data_dir = default_data_dir();
    std::vector<Mode> modes{Mode::classical_bo, Mode::unscented_bo};
    int runs = 20;
    int mc_probes = 100;
    std::uint64_t base_seed = 0;
    std::string output_dir = "ubo_output";
    int threads = 0;                 // 0 -> hardware thread count
    double outcome_noise_std = 0.0;  // observation noise on outcomes; 0 = off
    OptimizerConfig optimizer;       // dimension/mode/seed resolved per run

    void validate() const {
        if (function != "rkhs" && function != "gm" && function != "custom-file") {
            throw std::invalid_argument(
                "config: function must be rkhs, gm or custom-file");
        }
        if (function == "custom-file" && function_file.empty()) {
            throw std::invalid_argument(
                "config: custom-file requires function_file");
        }
        if (modes.empty()) {
            throw std::invalid_argument("config: modes must be non-empty");
        }
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (std::size_t j = i + 1; j < modes.size(); ++j) {
                if (modes[i] == modes[j]) {
                    throw std::invalid_argument("config: duplicate mode");
                }
            }
        }
        if (runs < 1) {
            throw std::invalid_argument("config: runs must be >= 1");
        }
        if (mc_probes < 1) {
            throw std::invalid_argument("config: mc_probes must be >= 1");
        }
        if (threads < 0) {
            throw std::invalid_argument("config: threads must be >= 0");
        }
        if (!(outcome_noise_std >= 0.0)) {
            throw std::invalid_argument("config: outcome_noise_std must be >= 0");
        }
        if (output_dir.empty()) {
            throw std::invalid_argument("config: output_dir must be non-empty");
        }
    }
};

// ---------------------------------------------------------------------------
// Config file parsing (plain-text `key = value` lines, '#' comments)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double_field(const std::string& value, const std::string& key) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(value, &consumed);
        if (consumed == value.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: invalid number for " + key + ": " + value);
}

inline std::uint64_t parse_u64_field(const std::string& value,
                                     const std::string& key) {
    try {
        std::size_t consumed = 0;
        const std::uint64_t v = std::stoull(value, &consumed);
        if (consumed == value.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: invalid integer for " + key + ": " + value);
}

inline int parse_int_field(const std::string& value, const std::string& key) {
    try {
        std::size_t consumed = 0;
        const long v = std::stol(value, &consumed);
        if (consumed == value.size() && v >= INT_MIN && v <= INT_MAX) {
            return static_cast<int>(v);
        }
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: invalid integer for " + key + ": " + value);
}

inline Mode parse_mode_field(const std::string& value) {
    if (value == "classical_bo") {
        return Mode::classical_bo;
    }
    if (value == "unscented_bo") {
        return Mode::unscented_bo;
    }
    throw std::invalid_argument("config: unknown mode: " + value);
}

inline std::vector<Mode> parse_mode_list(const std::string& value) {
    std::vector<Mode> modes;
    std::istringstream items(value);
    std::string item;
    while (std::getline(items, item, ',')) {
        modes.push_back(parse_mode_field(trim(item)));
    }
    return modes;
}

}  // namespace detail

/// Applies one `key = value` assignment to the config. Unknown keys are
/// startup errors so typos cannot silently fall back to defaults.
inline void apply_config_field(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
    using namespace detail;
    if (key == "function") {
        cfg.function = value;
    } else if (key == "function_file") {
        cfg.function_file = value;
    } else if (key == "data_dir") {
        cfg.data_dir = value;
    } else if (key == "modes") {
        cfg.modes = parse_mode_list(value);
    } else if (key == "runs") {
        cfg.runs = parse_int_field(value, key);
    } else if (key == "mc_probes") {
        cfg.mc_probes = parse_int_field(value, key);
    } else if (key == "base_seed") {
        cfg.base_seed = parse_u64_field(value, key);
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "threads") {
        cfg.threads = parse_int_field(value, key);
    } else if (key == "outcome_noise_std") {
        cfg.outcome_noise_std = parse_double_field(value, key);
    } else if (key == "initial_samples") {
        cfg.optimizer.initial_samples = parse_int_field(value, key);
    } else if (key == "iterations") {
        cfg.optimizer.iterations = parse_int_field(value, key);
    } else if (key == "sigma_x") {
        cfg.optimizer.input_noise.sigma_x = parse_double_field(value, key);
    } else if (key == "ut_k") {
        cfg.optimizer.ut_k = parse_double_field(value, key);
    } else if (key == "inner_optimizer_budget") {
        cfg.optimizer.inner_optimizer_budget = parse_int_field(value, key);
    } else if (key == "observation_noise_variance") {
        cfg.optimizer.observation_noise_variance = parse_double_field(value, key);
    } else if (key == "sampler_num_samples") {
        cfg.optimizer.sampler.num_samples = parse_int_field(value, key);
    } else if (key == "sampler_burn_in") {
        cfg.optimizer.sampler.burn_in = parse_int_field(value, key);
    } else if (key == "sampler_initial_burn_in") {
        cfg.optimizer.sampler.initial_burn_in = parse_int_field(value, key);
    } else if (key == "sampler_thinning") {
        cfg.optimizer.sampler.thinning = parse_int_field(value, key);
    } else if (key == "sampler_step_width") {
        cfg.optimizer.sampler.initial_step_width = parse_double_field(value, key);
    } else if (key == "sampler_max_step_out") {
        cfg.optimizer.sampler.max_step_out = parse_int_field(value, key);
    } else if (key == "sampler_prior_mean") {
        cfg.optimizer.sampler.prior_mean = parse_double_field(value, key);
    } else if (key == "sampler_prior_std") {
        cfg.optimizer.sampler.prior_std = parse_double_field(value, key);
    } else {
        throw std::invalid_argument("config: unknown key: " + key);
    }
}

inline ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " +
                                        std::to_string(line_number) +
                                        " is not a key = value assignment");
        }
        try {
            apply_config_field(cfg, detail::trim(stripped.substr(0, eq)),
                               detail::trim(stripped.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string(e.what()) + " (line " +
                                        std::to_string(line_number) + ")");
        }
    }
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("could not open config file: " + path);
    }
    return parse_experiment_config(in);
}

// ---------------------------------------------------------------------------
// Experiment execution
// ---------------------------------------------------------------------------

struct BenchmarkObjective {
    Objective fn;
    Eigen::Index dimension;
    std::string name;
};

/// Resolves the configured benchmark function to a callable objective.
inline BenchmarkObjective make_objective(const ExperimentConfig& cfg) {
    if (cfg.function == "rkhs") {
        auto f = std::make_shared<RkhsFunction>(
            RkhsFunction::load(cfg.data_dir + "/rkhs_function.txt"));
        return {[f](const Vec& x) { return (*f)(x); }, 1, "rkhs"};
    }
    if (cfg.function == "gm") {
        auto f = std::make_shared<GaussianMixtureSpec>(
            GaussianMixtureSpec::load(cfg.data_dir + "/gm_function.txt"));
        if (f->dimension() != 2) {
            throw std::runtime_error("gm fixture is expected to be 2D");
        }
        return {[f](const Vec& x) { return (*f)(x); }, 2, "gm"};
    }
    if (cfg.function == "custom-file") {
        auto f = std::make_shared<GaussianMixtureSpec>(
            GaussianMixtureSpec::load(cfg.function_file));
        const Eigen::Index d = f->dimension();
        return {[f](const Vec& x) { return (*f)(x); }, d, "custom-file"};
    }
    throw std::invalid_argument("config: function must be rkhs, gm or custom-file");
}

struct IncumbentRow {
    int iteration;
    Vec x_star;
    double criterion_value;
    double mean_outcome;
    double std_outcome;
    double worst_outcome;
};

struct RunRecord {
    int run_index;
    Mode mode;
    std::vector<IncumbentRow> rows;  // exactly N + 1 rows
    double wall_time_seconds;        // informational; not persisted to CSV
};

struct AggregateRow {
    Mode mode;
    int iteration;
    double mean_outcome_avg, mean_outcome_ci95;
    double std_outcome_avg, std_outcome_ci95;
    double worst_outcome_avg, worst_outcome_ci95;
};

struct SummaryRow {
    Mode mode;
    double mean_outcome;
    double worst_outcome;
    double std_outcome;
};

struct ModeCounts {
    Mode mode;
    long long objective_evaluations;
    long long expected_objective_evaluations;  // R * (p + N)
    long long probe_evaluations;
    long long expected_probe_evaluations;  // R * (N + 1) * mc_probes
};

struct ExperimentResult {
    ExperimentConfig config;  // fully resolved (dimension, threads, ...)
    std::vector<RunRecord> records;
    std::vector<AggregateRow> aggregate;
    std::vector<SummaryRow> summary;
    std::vector<ModeCounts> counts;  // parallel to config.modes
};

namespace detail {

inline std::pair<double, double> mean_and_population_std(
    const std::vector<double>& values) {
    double sum = 0.0;
    for (const double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (const double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

inline int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline void check_output_dir_writable(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("could not create output directory " + dir +
                                 ": " + ec.message());
    }
    const fs::path probe = fs::path(dir) / ".write_test";
    {
        std::ofstream out(probe);
        if (!out) {
            throw std::runtime_error("output directory is not writable: " + dir);
        }
    }
    fs::remove(probe, ec);
}

}  // namespace detail

/// Executes R seeded runs per mode (run i uses seed base_seed + i in every
/// mode, so modes share initial designs), computes per-iteration robustness
/// statistics from an independent probe stream, and reduces the records to
/// per-iteration aggregates and a final-iteration summary. Runs execute in
/// a worker pool but all reductions are ordered by (mode, run, iteration),
/// so the result is deterministic for a given config.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const BenchmarkObjective objective = make_objective(cfg);

    ExperimentResult result;
    result.config = cfg;
    result.config.optimizer.dimension = objective.dimension;
    result.config.threads = detail::resolve_threads(cfg.threads);

    // Startup validation: every per-run optimizer config must be valid and
    // the output directory writable before any run executes.
    for (const Mode mode : result.config.modes) {
        OptimizerConfig oc = result.config.optimizer;
        oc.mode = mode;
        oc.validate();
    }
    detail::check_output_dir_writable(result.config.output_dir);

    const int R = result.config.runs;
    const std::size_t task_count =
        result.config.modes.size() * static_cast<std::size_t>(R);
    result.records.resize(task_count);
    std::vector<long long> task_evaluations(task_count, 0);

    std::atomic<std::size_t> next_task{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto execute_task = [&](std::size_t task) {
        const std::size_t mode_index = task / static_cast<std::size_t>(R);
        const int run = static_cast<int>(task % static_cast<std::size_t>(R));

        OptimizerConfig oc = result.config.optimizer;
        oc.mode = result.config.modes[mode_index];
        oc.seed = result.config.base_seed + static_cast<std::uint64_t>(run);

        long long evaluations = 0;
        auto noise_rng = std::make_shared<Rng>(
            splitmix64(oc.seed ^ kOutcomeNoiseStreamSalt));
        const double outcome_noise = result.config.outcome_noise_std;
        Objective wrapped = [&objective, &evaluations, noise_rng,
                             outcome_noise](const Vec& x) {
            ++evaluations;
            double y = objective.fn(x);
            if (outcome_noise > 0.0) {
                y += outcome_noise * noise_rng->normal();
            }
            return y;
        };

        const auto start = std::chrono::steady_clock::now();
        const OptimizationResult opt = run_optimization(wrapped, oc);
        const auto stop = std::chrono::steady_clock::now();
        task_evaluations[task] = evaluations;

        Rng probe_rng(splitmix64(oc.seed ^ kProbeStreamSalt));
        RunRecord record;
        record.run_index = run;
        record.mode = oc.mode;
        record.wall_time_seconds =
            std::chrono::duration<double>(stop - start).count();
        record.rows.reserve(opt.reports.size());
        for (const IncumbentReport& report : opt.reports) {
            const RobustnessStats stats =
                robustness_eval(objective.fn, report.x_star, oc.input_noise,
                                result.config.mc_probes, probe_rng);
            record.rows.push_back({report.iteration, report.x_star,
                                   report.criterion_value, stats.mean_outcome,
                                   stats.std_outcome, stats.worst_outcome});
        }
        result.records[task] = std::move(record);
    };

    auto worker = [&]() {
        while (!failed.load()) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= task_count) {
                return;
            }
            try {
                execute_task(task);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                failed.store(true);
                return;
            }
        }
    };

    const int pool_size = std::min<int>(result.config.threads,
                                        static_cast<int>(task_count));
    if (pool_size <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(pool_size));
        for (int i = 0; i < pool_size; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    // Accounting and reductions, ordered by (mode, run, iteration).
    const int N = result.config.optimizer.iterations;
    const long long per_run_evals =
        result.config.optimizer.initial_samples + N;
    for (std::size_t m = 0; m < result.config.modes.size(); ++m) {
        ModeCounts counts;
        counts.mode = result.config.modes[m];
        counts.objective_evaluations = 0;
        counts.expected_objective_evaluations = per_run_evals * R;
        counts.probe_evaluations = 0;
        counts.expected_probe_evaluations =
            static_cast<long long>(R) * (N + 1) * result.config.mc_probes;
        for (int r = 0; r < R; ++r) {
            const std::size_t task =
                m * static_cast<std::size_t>(R) + static_cast<std::size_t>(r);
            const RunRecord& record = result.records[task];
            if (static_cast<int>(record.rows.size()) != N + 1) {
                throw std::logic_error("run_experiment: report row count mismatch");
            }
            counts.objective_evaluations += task_evaluations[task];
            counts.probe_evaluations +=
                static_cast<long long>(record.rows.size()) *
                result.config.mc_probes;
        }
        if (counts.objective_evaluations != counts.expected_objective_evaluations) {
            throw std::logic_error(
                "run_experiment: objective evaluation count mismatch");
        }
        if (counts.probe_evaluations != counts.expected_probe_evaluations) {
            throw std::logic_error("run_experiment: probe count mismatch");
        }
        result.counts.push_back(counts);

        std::vector<double> mean_vals(static_cast<std::size_t>(R));
        std::vector<double> std_vals(static_cast<std::size_t>(R));
        std::vector<double> worst_vals(static_cast<std::size_t>(R));
        const double ci_scale = 1.96 / std::sqrt(static_cast<double>(R));
        for (int t = 0; t <= N; ++t) {
            for (int r = 0; r < R; ++r) {
                const IncumbentRow& row =
                    result.records[m * static_cast<std::size_t>(R) +
                                   static_cast<std::size_t>(r)]
                        .rows[static_cast<std::size_t>(t)];
                mean_vals[static_cast<std::size_t>(r)] = row.mean_outcome;
                std_vals[static_cast<std::size_t>(r)] = row.std_outcome;
                worst_vals[static_cast<std::size_t>(r)] = row.worst_outcome;
            }
            const auto [mean_avg, mean_sd] =
                detail::mean_and_population_std(mean_vals);
            const auto [std_avg, std_sd] =
                detail::mean_and_population_std(std_vals);
            const auto [worst_avg, worst_sd] =
                detail::mean_and_population_std(worst_vals);
            result.aggregate.push_back({result.config.modes[m], t,  //
                                        mean_avg, ci_scale * mean_sd,
                                        std_avg, ci_scale * std_sd,
                                        worst_avg, ci_scale * worst_sd});
        }
        const AggregateRow& last = result.aggregate.back();
        result.summary.push_back({result.config.modes[m], last.mean_outcome_avg,
                                  last.worst_outcome_avg, last.std_outcome_avg});
    }

    return result;
}

// ---------------------------------------------------------------------------
// Output files
// ---------------------------------------------------------------------------

namespace detail {

/// Formats a double with 17 significant digits (lossless round-trip).
inline std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_output_file(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("could not open output file for writing: " +
                                 path);
    }
    return out;
}

inline void finish_output_file(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("failed while writing output file: " + path);
    }
}

}  // namespace detail

/// Writes runs.csv, aggregate.csv, summary.csv and config.echo into
/// output_dir, overwriting deterministically.
inline void emit_outputs(const ExperimentResult& result,
                         const std::string& output_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) {
        throw std::runtime_error("could not create output directory " +
                                 output_dir + ": " + ec.message());
    }
    const Eigen::Index d = result.config.optimizer.dimension;

    {
        const std::string path = (fs::path(output_dir) / "runs.csv").string();
        std::ofstream out = detail::open_output_file(path);
        out << "mode,run,iteration";
        for (Eigen::Index c = 0; c < d; ++c) {
            out << ",x" << c;
        }
        out << ",criterion_value,mean_outcome,std_outcome,worst_outcome\n";
        for (const RunRecord& record : result.records) {
            for (const IncumbentRow& row : record.rows) {
                out << mode_name(record.mode) << ',' << record.run_index << ','
                    << row.iteration;
                for (Eigen::Index c = 0; c < d; ++c) {
                    out << ',' << detail::fmt17(row.x_star[c]);
                }
                out << ',' << detail::fmt17(row.criterion_value) << ','
                    << detail::fmt17(row.mean_outcome) << ','
                    << detail::fmt17(row.std_outcome) << ','
                    << detail::fmt17(row.worst_outcome) << '\n';
            }
        }
        detail::finish_output_file(out, path);
    }

    {
        const std::string path = (fs::path(output_dir) / "aggregate.csv").string();
        std::ofstream out = detail::open_output_file(path);
        out << "mode,iteration,mean_outcome_avg,mean_outcome_ci95,"
               "std_outcome_avg,std_outcome_ci95,worst_outcome_avg,"
               "worst_outcome_ci95\n";
        for (const AggregateRow& row : result.aggregate) {
            out << mode_name(row.mode) << ',' << row.iteration << ','
                << detail::fmt17(row.mean_outcome_avg) << ','
                << detail::fmt17(row.mean_outcome_ci95) << ','
                << detail::fmt17(row.std_outcome_avg) << ','
                << detail::fmt17(row.std_outcome_ci95) << ','
                << detail::fmt17(row.worst_outcome_avg) << ','
                << detail::fmt17(row.worst_outcome_ci95) << '\n';
        }
        detail::finish_output_file(out, path);
    }

    {
        const std::string path = (fs::path(output_dir) / "summary.csv").string();
        std::ofstream out = detail::open_output_file(path);
        out << "mode,mean_outcome,worst_outcome,std_outcome\n";
        for (const SummaryRow& row : result.summary) {
            out << mode_name(row.mode) << ',' << detail::fmt17(row.mean_outcome)
                << ',' << detail::fmt17(row.worst_outcome) << ','
                << detail::fmt17(row.std_outcome) << '\n';
        }
        detail::finish_output_file(out, path);
    }

    {
        const std::string path = (fs::path(output_dir) / "config.echo").string();
        std::ofstream out = detail::open_output_file(path);
        const ExperimentConfig& cfg = result.config;
        out << "function = " << cfg.function << '\n';
        if (!cfg.function_file.empty()) {
            out << "function_file = " << cfg.function_file << '\n';
        }
        out << "data_dir = " << cfg.data_dir << '\n';
        out << "modes = ";
        for (std::size_t i = 0; i < cfg.modes.size(); ++i) {
            out << (i ? "," : "") << mode_name(cfg.modes[i]);
        }
        out << '\n';
        out << "runs = " << cfg.runs << '\n';
        out << "mc_probes = " << cfg.mc_probes << '\n';
        out << "base_seed = " << cfg.base_seed << '\n';
        out << "output_dir = " << cfg.output_dir << '\n';
        out << "threads = " << cfg.threads << '\n';
        out << "outcome_noise_std = " << detail::fmt17(cfg.outcome_noise_std)
            << '\n';
        out << "dimension = " << cfg.optimizer.dimension << '\n';
        out << "initial_samples = " << cfg.optimizer.initial_samples << '\n';
        out << "iterations = " << cfg.optimizer.iterations << '\n';
        out << "sigma_x = " << detail::fmt17(cfg.optimizer.input_noise.sigma_x)
            << '\n';
        out << "ut_k = " << detail::fmt17(cfg.optimizer.ut_k) << '\n';
        out << "inner_optimizer_budget = " << cfg.optimizer.inner_optimizer_budget
            << '\n';
        out << "observation_noise_variance = "
            << detail::fmt17(cfg.optimizer.observation_noise_variance) << '\n';
        out << "sampler_num_samples = " << cfg.optimizer.sampler.num_samples
            << '\n';
        out << "sampler_burn_in = " << cfg.optimizer.sampler.burn_in << '\n';
        out << "sampler_initial_burn_in = "
            << cfg.optimizer.sampler.initial_burn_in << '\n';
        out << "sampler_thinning = " << cfg.optimizer.sampler.thinning << '\n';
        out << "sampler_step_width = "
            << detail::fmt17(cfg.optimizer.sampler.initial_step_width) << '\n';
        out << "sampler_max_step_out = " << cfg.optimizer.sampler.max_step_out
            << '\n';
        out << "sampler_prior_mean = "
            << detail::fmt17(cfg.optimizer.sampler.prior_mean) << '\n';
        out << "sampler_prior_std = "
            << detail::fmt17(cfg.optimizer.sampler.prior_std) << '\n';
        for (int r = 0; r < cfg.runs; ++r) {
            out << "run_seed_" << r << " = "
                << cfg.base_seed + static_cast<std::uint64_t>(r) << '\n';
        }
        detail::finish_output_file(out, path);
    }
}

}  // namespace ubo
