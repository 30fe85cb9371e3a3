#include "fedmech/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>
#include <vector>

#include "fedmech/errors.hpp"

namespace fedmech {

namespace {

namespace fs = std::filesystem;

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("FEDMECH_LOG");
        if (!env) return LogLevel::Error;
        std::string v(env);
        if (v == "debug") return LogLevel::Debug;
        if (v == "info") return LogLevel::Info;
        return LogLevel::Error;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[fedmech] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[fedmech] " << msg << "\n";
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Task {
    ScenarioSpec spec;       // seed already substituted
    std::string mechanism;
    std::uint64_t seed;      // effective seed, printed as-is
};

struct TaskResult {
    ScenarioResult result;
    std::string error;       // empty on success
};

std::uint64_t mix_seed(std::uint64_t seed, int rep) {
    return seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(rep));
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string read_all(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

TaskResult execute(const Task& task) {
    TaskResult out;
    try {
        if (task.mechanism == "realfm") {
            out.result = run_realfm(task.spec);
        } else if (task.mechanism == "linear") {
            out.result = run_linear_baseline(task.spec);
        } else if (task.mechanism == "local") {
            out.result = run_local_baseline(task.spec);
        } else {
            out.error = "unknown-mechanism";
        }
    } catch (const ConfigError& e) {
        out.error = std::string("config-error: ") + e.what();
    } catch (const AssumptionError& e) {
        out.error = std::string("assumption-violation: ") + e.what();
    } catch (const SolverError& e) {
        out.error = std::string("solver-failure: ") + e.what();
    } catch (const std::exception& e) {
        out.error = std::string("error: ") + e.what();
    }
    return out;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute()) return path;
    return (fs::path(base_dir) / p).string();
}

struct Batch {
    std::vector<ScenarioSpec> specs;
    std::uint64_t config_hash = 1469598103934665603ULL;
};

Batch load_scenarios(const RunManifest& manifest, const std::string& base_dir) {
    Batch b;
    for (const auto& file : manifest.scenario_files) {
        std::string path = resolve(base_dir, file);
        std::string text = read_all(path);
        b.config_hash = fnv1a(b.config_hash, text);
        auto specs = parse_scenarios_text(text, path);
        b.specs.insert(b.specs.end(), specs.begin(), specs.end());
    }
    return b;
}

}  // namespace

int run_batch(const RunManifest& manifest, const std::string& base_dir) {
    auto start = std::chrono::steady_clock::now();
    if (manifest.mechanisms.empty()) {
        std::cerr << "fedmech: manifest selects no mechanisms; nothing to run\n";
        return 2;
    }
    for (const auto& mech : manifest.mechanisms) {
        if (mech != "realfm" && mech != "linear" && mech != "local") {
            std::cerr << "fedmech: unknown mechanism '" << mech << "'\n";
            return 2;
        }
    }
    Batch batch = load_scenarios(manifest, base_dir);

    std::vector<Task> tasks;
    for (const auto& spec : batch.specs) {
        std::vector<std::uint64_t> seeds =
            manifest.seeds.empty() ? std::vector<std::uint64_t>{spec.seed} : manifest.seeds;
        for (const auto& mech : manifest.mechanisms) {
            for (std::uint64_t seed : seeds) {
                for (int rep = 0; rep < manifest.repetitions; ++rep) {
                    Task t;
                    t.spec = spec;
                    t.spec.seed = mix_seed(seed, rep);
                    t.mechanism = mech;
                    t.seed = t.spec.seed;
                    tasks.push_back(std::move(t));
                }
            }
        }
    }
    log_info("running " + std::to_string(tasks.size()) + " tasks");

    std::vector<TaskResult> results(tasks.size());
    int jobs = std::max(1, manifest.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            log_debug("task " + std::to_string(i) + ": " + tasks[i].spec.id + "/" +
                      tasks[i].mechanism);
            results[i] = execute(tasks[i]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    results[i] = execute(tasks[i]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    fs::create_directories(manifest.out_dir);
    std::ofstream res_csv(fs::path(manifest.out_dir) / "results.csv");
    if (!res_csv) {
        std::cerr << "fedmech: cannot write to output directory " << manifest.out_dir << "\n";
        return 2;
    }
    res_csv << "scenario_id,mechanism,seed,device_id,cost,a_opt,m_local_opt,m_star,m_eq,"
               "accuracy_reward,monetary_reward,device_utility_net,server_utility,"
               "converged,iterations,error\n";

    int failures = 0;
    // (scenario, mechanism) -> accumulated totals over runs
    std::map<std::pair<std::string, std::string>, std::pair<Totals, int>> agg;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const Task& task = tasks[t];
        const TaskResult& tr = results[t];
        if (!tr.error.empty()) {
            ++failures;
            res_csv << task.spec.id << ',' << task.mechanism << ',' << task.seed
                    << ",,,,,,,,,,,0,0," << '"' << tr.error << '"' << "\n";
            continue;
        }
        const ScenarioResult& r = tr.result;
        auto [devices, cfg] = build(task.spec);
        for (std::size_t i = 0; i < devices.size(); ++i) {
            res_csv << task.spec.id << ',' << task.mechanism << ',' << task.seed << ','
                    << devices[i].id << ',' << fmt(devices[i].cost) << ','
                    << fmt(devices[i].accuracy.a_opt()) << ','
                    << fmt(r.outcome.local_optima[i]) << ',' << fmt(r.outcome.shaped_optima[i])
                    << ',' << fmt(r.outcome.contributions[i]) << ','
                    << fmt(r.outcome.bundles[i].accuracy_reward) << ','
                    << fmt(r.outcome.bundles[i].monetary_reward) << ','
                    << fmt(r.net_utilities[i]) << ',' << fmt(r.outcome.server_utility) << ','
                    << (r.outcome.converged ? 1 : 0) << ',' << r.outcome.iterations << ",\n";
        }
        auto& slot = agg[{task.spec.id, task.mechanism}];
        slot.first.total_contribution += r.totals.total_contribution;
        slot.first.mean_device_utility += r.totals.mean_device_utility;
        slot.first.server_utility += r.totals.server_utility;
        slot.second += 1;
    }
    res_csv.close();

    std::ofstream sum_csv(fs::path(manifest.out_dir) / "summary.csv");
    sum_csv << "scenario_id,mechanism,runs,total_contribution,mean_device_utility,"
               "server_utility\n";
    for (const auto& [key, value] : agg) {
        double n = static_cast<double>(value.second);
        sum_csv << key.first << ',' << key.second << ',' << value.second << ','
                << fmt(value.first.total_contribution / n) << ','
                << fmt(value.first.mean_device_utility / n) << ','
                << fmt(value.first.server_utility / n) << "\n";
    }
    sum_csv.close();

    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::ofstream meta(fs::path(manifest.out_dir) / "meta.txt");
    meta << "tool_version = " << kToolVersion << "\n";
    meta << "config_hash = " << batch.config_hash << "\n";
    meta << "wall_clock_seconds = " << elapsed.count() << "\n";
    meta << "tasks = " << tasks.size() << "\n";
    meta << "failures = " << failures << "\n";
    meta.close();

    return failures == 0 ? 0 : 1;
}

int check_batch(const RunManifest& manifest, const std::string& base_dir) {
    Batch batch = load_scenarios(manifest, base_dir);
    int status = 0;
    for (const auto& spec : batch.specs) {
        std::cout << "scenario " << spec.id << ":\n";
        try {
            auto [devices, cfg] = build(spec);
            std::vector<double> locals;
            bool any_participation = false;
            for (const auto& d : devices) {
                LocalOptimum lo = local_optimum(d);
                locals.push_back(lo.m_opt);
                if (lo.m_opt > 0.0) any_participation = true;
                std::cout << "  " << d.id << ": m_local_opt = " << fmt(lo.m_opt)
                          << "  utility = " << fmt(lo.utility) << "\n";
            }
            if (!any_participation) {
                std::cout << "  note: no device participates (all local optima are zero)\n";
                continue;
            }
            // Assumption 3 at the local-optimum profile
            ServerAccuracyModel server(devices.front().accuracy.k(),
                                       devices.front().accuracy.form());
            std::vector<AccuracyModel> models;
            for (const auto& d : devices) models.push_back(d.accuracy);
            AccuracyModel mix = server.mixture(models, locals);
            double total = 0.0;
            for (double m : locals) total += m;
            double server_acc = mix.eval(total);
            for (std::size_t i = 0; i < devices.size(); ++i) {
                double own = devices[i].accuracy.eval(locals[i]);
                if (own > server_acc + 1e-12) {
                    std::cout << "  warning: device " << devices[i].id
                              << " violates the server-dominance assumption\n";
                    status = 1;
                }
            }
        } catch (const std::exception& e) {
            std::cout << "  error: " << e.what() << "\n";
            status = 1;
        }
    }
    return status;
}

}  // namespace fedmech
