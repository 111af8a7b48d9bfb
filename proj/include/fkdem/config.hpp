#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkdem/process.hpp"

namespace fkdem {

// Raised for malformed or inconsistent scenario files.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A simulation scenario: one contaminant (univariate) or three
// (multivariate, when the *2/*3 keys appear), a generative intake model,
// and the run window.
struct ScenarioConfig {
    std::vector<ContaminantSpec> contaminants;
    Couplings couplings;
    double gap_months = 1.0;
    ExposureModel exposure_model = ExposureModel::Constant;
    double exposure_mean = 0.0;
    std::uint64_t seed = 0;
    double horizon_months = 0.0;
    double sample_step = 1.0;
    double threshold = 0.0;

    bool multivariate() const { return contaminants.size() == 3; }

    IntakeSchedule schedule() const {
        return IntakeSchedule::generative(gap_months, exposure_model, exposure_mean, seed);
    }
};

namespace detail {

inline double config_double(const std::map<std::string, std::string>& kv,
                            const std::string& key) {
    const std::string& raw = kv.at(key);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
        throw config_error("key '" + key + "': cannot parse number from '" + raw + "'");
    }
    return v;
}

inline std::uint64_t config_u64(const std::map<std::string, std::string>& kv,
                                const std::string& key) {
    const std::string& raw = kv.at(key);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
        throw config_error("key '" + key + "': cannot parse unsigned integer from '"
                           + raw + "'");
    }
    return v;
}

// One contaminant block; suffix is "", "2" or "3".
inline ContaminantSpec config_contaminant(const std::map<std::string, std::string>& kv,
                                          const std::string& suffix) {
    const std::string name_key = "name" + suffix;
    const std::string theta_key = "theta" + suffix;
    const std::string dv_key = "dv_months" + suffix;
    const std::string alpha_key = "alpha" + suffix;
    const std::string init_key = "initial_burden" + suffix;
    const bool has_theta = kv.count(theta_key) > 0;
    const bool has_dv = kv.count(dv_key) > 0;
    if (has_theta == has_dv) {
        throw config_error("exactly one of '" + theta_key + "' and '" + dv_key
                           + "' must be given");
    }
    if (!kv.count(alpha_key)) {
        throw config_error("missing key '" + alpha_key + "'");
    }
    if (!kv.count(init_key)) {
        throw config_error("missing key '" + init_key + "'");
    }
    const std::string name =
        kv.count(name_key) ? kv.at(name_key) : ("contaminant" + (suffix.empty() ? "1" : suffix));
    try {
        if (has_theta) {
            return ContaminantSpec::from_theta(name, config_double(kv, theta_key),
                                               config_double(kv, alpha_key),
                                               config_double(kv, init_key));
        }
        return ContaminantSpec::from_half_life(name, config_double(kv, dv_key),
                                               config_double(kv, alpha_key),
                                               config_double(kv, init_key));
    } catch (const std::domain_error& e) {
        throw config_error(std::string("contaminant '") + name + "': " + e.what());
    }
}

}  // namespace detail

// key = value lines; blank lines and #-comment lines are skipped; unknown
// keys are errors. Univariate scenarios use the unsuffixed contaminant
// block; the presence of any suffixed key switches the scenario to the
// three-contaminant form, which then requires complete blocks 2 and 3.
inline ScenarioConfig parse_scenario_config(std::istream& is) {
    static const std::set<std::string> known = {
        "name", "theta", "dv_months", "alpha", "initial_burden",
        "name2", "theta2", "dv_months2", "alpha2", "initial_burden2",
        "name3", "theta3", "dv_months3", "alpha3", "initial_burden3",
        "coupling_a", "coupling_b", "coupling_c", "coupling_d", "coupling_e", "coupling_f",
        "intake_mode", "gap_months", "exposure_mean", "seed",
        "horizon_months", "sample_step", "threshold",
    };
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t row = 0;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(row) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key)) {
            throw config_error("line " + std::to_string(row) + ": unknown key '" + key + "'");
        }
        if (kv.count(key)) {
            throw config_error("line " + std::to_string(row) + ": duplicate key '" + key + "'");
        }
        if (value.empty()) {
            throw config_error("line " + std::to_string(row) + ": empty value for '" + key + "'");
        }
        kv[key] = value;
    }

    ScenarioConfig cfg;
    bool multi = false;
    for (const auto& [k, v] : kv) {
        if (k.size() > 1 && (k.back() == '2' || k.back() == '3')) multi = true;
        if (k.rfind("coupling_", 0) == 0) multi = true;
    }
    cfg.contaminants.push_back(detail::config_contaminant(kv, ""));
    if (multi) {
        cfg.contaminants.push_back(detail::config_contaminant(kv, "2"));
        cfg.contaminants.push_back(detail::config_contaminant(kv, "3"));
        auto coupling = [&](const char* key) {
            return kv.count(key) ? detail::config_double(kv, key) : 0.0;
        };
        cfg.couplings = Couplings{coupling("coupling_a"), coupling("coupling_b"),
                                  coupling("coupling_c"), coupling("coupling_d"),
                                  coupling("coupling_e"), coupling("coupling_f")};
    }

    for (const char* key : {"gap_months", "exposure_mean", "horizon_months", "sample_step"}) {
        if (!kv.count(key)) {
            throw config_error(std::string("missing key '") + key + "'");
        }
    }
    cfg.gap_months = detail::config_double(kv, "gap_months");
    cfg.exposure_mean = detail::config_double(kv, "exposure_mean");
    cfg.horizon_months = detail::config_double(kv, "horizon_months");
    cfg.sample_step = detail::config_double(kv, "sample_step");
    cfg.threshold = kv.count("threshold") ? detail::config_double(kv, "threshold")
                                          : std::numeric_limits<double>::infinity();
    cfg.seed = kv.count("seed") ? detail::config_u64(kv, "seed") : 0;
    if (kv.count("intake_mode")) {
        const std::string& mode = kv.at("intake_mode");
        if (mode == "fixed") {
            cfg.exposure_model = ExposureModel::Constant;
        } else if (mode == "uniform") {
            cfg.exposure_model = ExposureModel::Uniform;
        } else if (mode == "exponential") {
            cfg.exposure_model = ExposureModel::Exponential;
        } else {
            throw config_error("intake_mode must be fixed, uniform or exponential, got '"
                               + mode + "'");
        }
    }
    if (!(cfg.gap_months > 0.0) || !std::isfinite(cfg.gap_months)) {
        throw config_error("gap_months must be > 0");
    }
    if (!(cfg.exposure_mean >= 0.0) || !std::isfinite(cfg.exposure_mean)) {
        throw config_error("exposure_mean must be >= 0");
    }
    if (!(cfg.horizon_months > 0.0) || !std::isfinite(cfg.horizon_months)) {
        throw config_error("horizon_months must be > 0");
    }
    if (!(cfg.sample_step > 0.0) || !std::isfinite(cfg.sample_step)) {
        throw config_error("sample_step must be > 0");
    }
    return cfg;
}

inline ScenarioConfig parse_scenario_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open '" + path + "'");
    }
    return parse_scenario_config(in);
}

}  // namespace fkdem
