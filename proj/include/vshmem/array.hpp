#pragma once
#include "vshmem/config.hpp"
#include "vshmem/transport.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsh {

struct ArrayConfig {
    Config cfg;
    Flavor flavor = Flavor::EIRW;
    Mode mode = Mode::SingleEnded;
    int rows = 256, cols = 256;
    int n_fin = 20;
    int word_bits() const { return cfg.tech.word_bits; }
    int words_per_row() const { return cols / word_bits(); }
};

ArrayConfig make_array(const Config& c, Flavor f, Mode m);
ArrayConfig make_array(const Config& c, Flavor f, Mode m, int rows, int cols, int n_fin);

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// one-node star: SL at v_sl, branches into node x, shared n-FET from x to ground
struct StarNetwork {
    double v_sl = 0;
    double v_gate = 0;
    int n_fin = 1;
    std::vector<double> r_branch;   // kohm
    bool shared_fet = true;         // false: x grounded (per-cell path, VSH)
};

struct StarSolution {
    double v_x = 0;
    std::vector<double> i_branch;   // uA
    double i_fet = 0;
    double residual = 0;            // uA, KCL at x
};

StarSolution solve_star(const StarNetwork& net, const TechnologyParams& tech, double tol_v = 1e-12);

struct ReadSolution {
    double v_x = 0;
    std::vector<double> i_bit;     // per data bit (SL side for differential)
    double i_p = 0, i_ap = 0;      // P / AP branch currents in this solve
    double i_ref = NAN;            // single-ended only
    std::vector<double> sm_per_bit;
    int n_ones = 0;
    double i_total = 0;            // all branches incl. references
    double residual = 0;
};

// logic 1 = P (low resistance)
ReadSolution solve_read_word(const ArrayConfig& ac, const std::vector<int>& pattern);
std::vector<int> pattern_with_ones(int bits, int n_ones);
double reference_current(const ArrayConfig& ac, int n_ones);

struct MarginSummary {
    double sm_word = 0;     // uA, min over patterns/bits
    double i_ap_max = 0;    // uA, worst read-disturb current
    int worst_sm_n = 0, worst_rdm_n = 0;
};
MarginSummary word_margins(const ArrayConfig& ac);

double sense_margin_se(double i_p, double i_ap);
double sense_margin_diff(double i_p, double i_ap);
double read_disturb_margin(double i_cr, double i_ap);  // percent

// device-level (no shared FET, single cell at V_READ)
struct DeviceRead {
    double i_p, i_ap;
};
DeviceRead device_read(const Config& c, Flavor f, double v_read);
double device_sm(const Config& c, Flavor f, Mode m, double v_read);
// SM at the V_READ where RDM hits rdm_pct
double iso_rdm_sm(const Config& c, Flavor f, Mode m, double i_cr, double rdm_pct = 80.0);

struct Split {
    double line = 0, device = 0;
    double total() const { return line + device; }
};

struct EventMetrics {
    Split wt, we, rt, re;   // ns, fJ
    double wt_ns() const { return wt.total(); }
    double we_fJ() const { return we.total(); }
    double rt_ns() const { return rt.total(); }
    double re_fJ() const { return re.total(); }
};

struct DeviceWrite {
    double i_c = 0;        // uA charge current per cell
    double t_switch = 0;   // ns
};

struct LineRC {
    double r = 0;   // ohm
    double c = 0;   // F
};
LineRC wwl_line(const ArrayConfig& ac);
LineRC bl_line(const ArrayConfig& ac);
LineRC read_column(const ArrayConfig& ac);
double rwl_cap(const ArrayConfig& ac);

EventMetrics write_event(const ArrayConfig& ac, int row, int word, const DeviceWrite& dev);
EventMetrics read_event(const ArrayConfig& ac, int row, int word);

// Table II
struct LineBias {
    double wwl, bl, blb, rwl, sl;
};
struct BiasScheme {
    LineBias write_acc, write_unacc, read_acc, read_unacc;
    int write_data = 1;   // 1: BL=V_DD, BLB=0
};
BiasScheme table2_bias(const TechnologyParams& t);

struct BiasReport {
    bool ok = true;
    double max_write_sneak = 0;   // uA, unaccessed cells
    double max_read_sneak = 0;
    double accessed_write = 0, accessed_read = 0;
    std::vector<std::string> violations;
};
BiasReport validate_bias(const ArrayConfig& ac, const BiasScheme& b, bool write_op);

}  // namespace vsh
