#pragma once
#include "vshmem/array.hpp"
#include "vshmem/config.hpp"
#include "vshmem/magnet.hpp"

#include <string>
#include <vector>

namespace vsh {

// write path of one cell: charge current, spin current into the driven arm, switching time
struct WritePoint {
    double i_c = 0, i_spin = 0, t_switch = NAN;
    bool switched = false;
};
WritePoint write_point(const Config& c, Flavor f, double i_c);
DeviceWrite device_write(const Config& c, Flavor f);

struct LatencyRow {
    double i_c;
    WritePoint vsh, eirw;
    double ratio() const { return eirw.t_switch / vsh.t_switch; }
};
std::vector<double> wt_sweep_currents(const Config& c);
std::vector<LatencyRow> latency_sweep(const Config& c, const std::vector<double>& currents);
std::vector<LatencyRow> latency_sweep_serial(const Config& c, const std::vector<double>& currents);

struct IcrPair {
    double vsh = NAN, eirw = NAN;
};
IcrPair read_critical_currents(const Config& c);

struct Fig7Row {
    int n_ones;
    double i_p, i_ap, i_ref, v_x;
};
std::vector<Fig7Row> pattern_sweep(const ArrayConfig& ac);
std::vector<Fig7Row> pattern_sweep_serial(const ArrayConfig& ac);

struct Fig9Row {
    int n_fin;
    double sm_se, sm_diff, rdm_se, rdm_diff;   // EIRW / VSH ratios
    double rdm_vsh_se, rdm_eirw_se;            // percent
};
Fig9Row margins_at(const Config& c, int n_fin, const IcrPair& icr);
std::vector<Fig9Row> margin_sweep(const Config& c, const std::vector<int>& fins, const IcrPair& icr);

struct Fig10Row {
    int rows, cols;
    Flavor flavor;
    Mode mode;
    EventMetrics m;
};
std::vector<Fig10Row> scaling_sweep(const Config& c, const std::vector<int>& sizes);
std::vector<Fig10Row> scaling_sweep_serial(const Config& c, const std::vector<int>& sizes);
std::vector<Fig10Row> scaling_from_writes(const Config& c, const std::vector<int>& sizes,
                                          const DeviceWrite& wv, const DeviceWrite& we);

struct SizeRatios {
    int size;
    Mode mode;
    double rt, re, wt, we;   // EIRW / VSH
};
std::vector<SizeRatios> size_ratios(const std::vector<Fig10Row>& rows);

// device-level iso-RDM sense-margin ratio EIRW/VSH
double iso_rdm_sm_ratio(const Config& c, const IcrPair& icr, Mode m = Mode::SingleEnded, double rdm_pct = 80.0);
// bisection on channel_r_on to hit a target iso-RDM ratio
double calibrate_channel_r_on(const Config& c, const IcrPair& icr, double target = 1.9);

struct CompareInput {
    std::string design;
    double wt, we, rt, re, area, sm;
};
struct CompareRow {
    std::string design;
    double wt, we, rt, re, area, sm;
};
std::vector<CompareRow> compare_designs(const std::vector<CompareInput>& in, const std::string& baseline,
                                        const std::string& sm_baseline);
std::vector<CompareInput> read_metrics_csv(const std::string& path);

}  // namespace vsh
