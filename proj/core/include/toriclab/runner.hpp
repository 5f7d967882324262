#ifndef TORICLAB_RUNNER_HPP
#define TORICLAB_RUNNER_HPP

#include "toriclab/experiments.hpp"

namespace toriclab {

inline constexpr const char* kToolVersion = "toric-lab 0.1.0";

struct RunOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::string> cache_dir;
    std::optional<bool> offline;
    std::optional<int> threads;
    std::optional<u64> seed;
    std::optional<std::string> kind;  // forces the experiment kind
};

struct RunOutcome {
    int exit_code = 0;  // 0 iff every hard invariant held
    ExperimentResult result;
    std::string manifest_path;
    std::vector<std::string> artifact_paths;
};

// execute the experiment named by the config, write artifacts and manifest
RunOutcome run_experiment(const Config& cfg, const RunOverrides& overrides = {});

}  // namespace toriclab

#endif
