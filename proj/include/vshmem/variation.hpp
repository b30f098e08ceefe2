#pragma once
#include "vshmem/config.hpp"
#include "vshmem/magnet.hpp"

#include <cstdint>
#include <vector>

namespace vsh {

double overlap_fraction(double misalignment_pct);

struct VariationPoint {
    double misalignment_pct = 0;
    double j_scale = 1.0;
};

struct VariationRow {
    double misalignment_pct, j_scale;
    bool switched;
    double t_switch_ns;
    double t_ratio;   // vs nominal (0%, 1.0); NAN if either failed
};

struct VariationResult {
    std::vector<VariationRow> rows;
    double t_nominal_ns = NAN;
    const VariationRow* find(double mis, double j) const;
    // smallest switching j_scale above which every grid j switches; NAN if none
    double boundary(double mis) const;
};

struct GridSpec {
    std::vector<double> misalign{0, 10, 20, 30, 40, 50};
    std::vector<double> j_scale{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
};

// drive enters FL_W of the EIRW stack; nominal row computed first
VariationResult run_variation_map(const Config& c, const DriveSpec& drive, const GridSpec& g);
VariationResult run_variation_map_serial(const Config& c, const DriveSpec& drive, const GridSpec& g);

struct McSigmas {
    double Ku = 0, Ms = 0, t = 0;   // relative
};

struct McResult {
    int n = 0, passed = 0;
    double yield_pct() const { return n ? 100.0 * passed / n : 0.0; }
    std::vector<uint8_t> ok;
};

McResult monte_carlo(const Config& c, const DriveSpec& drive, const McSigmas& s, int n_samples, uint64_t seed);
McResult monte_carlo_serial(const Config& c, const DriveSpec& drive, const McSigmas& s, int n_samples, uint64_t seed);

// default write drive for the EIRW stack
DriveSpec eirw_write_drive(const Config& c);

}  // namespace vsh
