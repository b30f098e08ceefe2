#pragma once
#include "vshmem/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vsh {

struct ExperimentSpec {
    std::string name;
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    uint64_t seed = 1;
    // compare only
    std::string metrics_path;
    std::string baseline = "vsh";
    std::string sm_baseline = "vsh";
};

struct ExperimentOutput {
    std::vector<std::string> files;
    std::string summary;
};

const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);

// throws ConfigError, SolverError, IntegrationError, std::invalid_argument (unknown name)
ExperimentOutput run_experiment(const ExperimentSpec& spec);

// I-V tables for the write FET, access FET and read branches
ExperimentOutput dump_iv(const Config& c, const std::string& out_dir);

// eta, channel_r_on and layout fit, printed as config lines
std::string calibrate_report(const Config& c);

// fixed-format number for CSV
std::string fmt(double x);

}  // namespace vsh
