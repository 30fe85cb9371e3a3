#include "fedmech/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fedmech/errors.hpp"

namespace fedmech {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected a number, got '" + value + "'");
    }
}

long parse_int(const std::string& origin, int line, const std::string& key,
               const std::string& value) {
    try {
        std::size_t pos = 0;
        long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected an integer, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& origin, int line, const std::string& key,
                        const std::string& value) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected a seed, got '" + value + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// `name` or `name:args`
std::pair<std::string, std::string> split_tag(const std::string& value) {
    auto pos = value.find(':');
    if (pos == std::string::npos) return {value, ""};
    return {trim(value.substr(0, pos)), trim(value.substr(pos + 1))};
}

void apply_scenario_key(ScenarioSpec& spec, const std::string& key, const std::string& value,
                        const std::string& origin, int line) {
    if (key == "n_devices") {
        spec.n_devices = static_cast<int>(parse_int(origin, line, key, value));
    } else if (key == "base_cost") {
        spec.base_cost = parse_double(origin, line, key, value);
    } else if (key == "cost_mode") {
        auto [tag, args] = split_tag(value);
        if (tag == "uniform") {
            spec.cost_mode = CostMode::Uniform;
        } else if (tag == "gaussian") {
            spec.cost_mode = CostMode::GaussianNonUniform;
            if (!args.empty()) spec.cost_stddev_frac = parse_double(origin, line, key, args);
        } else {
            fail(origin, line, "key 'cost_mode': unknown mode '" + value + "'");
        }
    } else if (key == "payoff_mode") {
        auto [tag, args] = split_tag(value);
        if (tag == "linear") {
            spec.payoff_mode = PayoffMode::LinearBaseline;
            if (!args.empty()) spec.linear_w = parse_double(origin, line, key, args);
        } else if (tag == "power_uniform") {
            spec.payoff_mode = PayoffMode::PowerUniform;
        } else if (tag == "power_nonuniform") {
            spec.payoff_mode = PayoffMode::PowerNonUniform;
            if (!args.empty()) {
                auto parts = split(args, ',');
                if (parts.size() != 2) {
                    fail(origin, line, "key 'payoff_mode': expected power_nonuniform:LO,HI");
                }
                spec.z_lo = parse_double(origin, line, key, parts[0]);
                spec.z_hi = parse_double(origin, line, key, parts[1]);
            }
        } else {
            fail(origin, line, "key 'payoff_mode': unknown mode '" + value + "'");
        }
    } else if (key == "a_opt") {
        spec.a_opt_base = parse_double(origin, line, key, value);
    } else if (key == "k") {
        spec.k = parse_double(origin, line, key, value);
    } else if (key == "accuracy_form") {
        if (value == "generalization_bound") {
            spec.accuracy_form = AccuracyForm::GeneralizationBound;
        } else if (value == "simplified") {
            spec.accuracy_form = AccuracyForm::Simplified;
        } else {
            fail(origin, line, "key 'accuracy_form': unknown form '" + value + "'");
        }
    } else if (key == "heterogeneity") {
        auto [tag, args] = split_tag(value);
        if (tag == "homogeneous") {
            spec.heterogeneity = Heterogeneity::Homogeneous;
        } else if (tag == "aopt_spread") {
            spec.heterogeneity = Heterogeneity::AOptSpread;
            if (!args.empty()) spec.a_opt_delta = parse_double(origin, line, key, args);
        } else {
            fail(origin, line, "key 'heterogeneity': unknown mode '" + value + "'");
        }
    } else if (key == "profit_margin") {
        spec.profit_margin = parse_double(origin, line, key, value);
    } else if (key == "seed") {
        spec.seed = parse_u64(origin, line, key, value);
    } else {
        fail(origin, line, "unknown scenario key '" + key + "'");
    }
}

}  // namespace

std::vector<ScenarioSpec> parse_scenarios_text(const std::string& text,
                                               const std::string& origin) {
    std::vector<ScenarioSpec> specs;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_section = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            ScenarioSpec spec;
            spec.id = trim(line.substr(1, line.size() - 2));
            if (spec.id.empty()) fail(origin, lineno, "empty scenario id");
            specs.push_back(spec);
            have_section = true;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
        if (!have_section) fail(origin, lineno, "key outside a [scenario] section");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        apply_scenario_key(specs.back(), key, value, origin, lineno);
    }
    if (specs.empty()) throw ConfigError(origin + ": no scenarios defined");
    return specs;
}

std::vector<ScenarioSpec> parse_scenarios(const std::string& path) {
    return parse_scenarios_text(read_file(path), path);
}

RunManifest parse_manifest_text(const std::string& text, const std::string& origin) {
    RunManifest m;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "scenario") {
            m.scenario_files.push_back(value);
        } else if (key == "out") {
            m.out_dir = value;
        } else if (key == "repetitions") {
            m.repetitions = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "seeds") {
            for (const auto& s : split(value, ',')) {
                if (!s.empty()) m.seeds.push_back(parse_u64(origin, lineno, key, s));
            }
        } else if (key == "mechanisms") {
            for (const auto& s : split(value, ',')) {
                if (!s.empty()) m.mechanisms.push_back(s);
            }
        } else if (key == "jobs") {
            m.jobs = static_cast<int>(parse_int(origin, lineno, key, value));
        } else {
            fail(origin, lineno, "unknown manifest key '" + key + "'");
        }
    }
    if (m.scenario_files.empty()) throw ConfigError(origin + ": no scenario files listed");
    if (m.repetitions < 1) throw ConfigError(origin + ": repetitions must be >= 1");
    for (std::size_t i = 0; i < m.seeds.size(); ++i) {
        for (std::size_t j = i + 1; j < m.seeds.size(); ++j) {
            if (m.seeds[i] == m.seeds[j]) {
                throw ConfigError(origin + ": duplicate seed " + std::to_string(m.seeds[i]));
            }
        }
    }
    return m;
}

RunManifest parse_manifest(const std::string& path) {
    return parse_manifest_text(read_file(path), path);
}

}  // namespace fedmech
