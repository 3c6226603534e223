#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hm/budget.hpp"

namespace hm {

struct ExperimentOptions {
    std::vector<int> ns;
    std::vector<int> ks;
    std::vector<int> ps;
    std::vector<std::uint64_t> seeds;
    int samples = -1;  // -1 = per-experiment default
    double gamma = 0.05;
    double mu = 1e-3;
    std::uint64_t budget = SearchBudget::kDefaultNodes;
    std::uint64_t seed = 1;
};

struct ExperimentOutcome {
    nlohmann::json report;
    bool pass = false;
};

const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);
ExperimentOutcome run_experiment(const std::string& name, const ExperimentOptions& opts);

}  // namespace hm
