#pragma once
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsh {

enum class Flavor { VSH, EIRW };
enum class Mode { SingleEnded, Differential };

const char* flavor_name(Flavor f);
const char* mode_name(Mode m);

// ingestion units: emu/cm^3, erg/cm^3, MHz/Oe, pJ/m, mJ/m^2
struct MaterialCgs {
    double Ms = 1257.3;
    double Ku = 2.3e6;
    double alpha = 0.008;
    double gamma = 17.6;
    double A_ex = 13.0;
    double J_ex = 0.35;
    double temperature = 300.0;
};

// internal SI
struct MaterialParams {
    double Ms = 0;      // A/m
    double Ku = 0;      // J/m^3
    double alpha = 0;
    double gamma = 0;   // rad/(s*T)
    double A_ex = 0;    // J/m
    double J_ex = 0;    // J/m^2
    double temperature = 0;
};

MaterialParams to_internal(const MaterialCgs& in);
MaterialCgs from_internal(const MaterialParams& p);

struct MagnetGeometry {
    double diameter = 30.0;   // nm
    double thickness = 1.3;   // nm
    double volume() const;    // nm^3
    double area() const;      // nm^2
};

struct FlavorParams {
    MagnetGeometry geom;
    double t_MgO = 1.2;             // nm
    double geometry_factor = 1.0;   // spin current per unit charge current, per arm
};

struct TechnologyParams {
    double F = 0, MP = 0;
    double V_DD = 0, V_READ = 0;
    double wire_r_per_len = 0;   // ohm/nm
    double wire_c_per_len = 0;   // F/nm
    double fin_drive = 0;        // uA/fin, saturation at V_GS = V_DD
    double fet_vth = 0;          // V
    double fin_ss_mv_dec = 0;
    double ta_resistivity = 0;   // ohm*nm
    int word_bits = 64;
};

struct WriteFetParams {
    double vth = 0;          // magnitude, p-type
    double ss_mv_dec = 0;
    double k_drive = 0;      // uA/V^2
    double r_contact = 0;    // kohm, total S+D
};

struct MtjParams {
    double ra0 = 0;        // ohm*um^2
    double lambda_t = 0;   // nm
    double tmr = 0;
    double t_ref = 0;      // nm
};

struct ReadPathParams {
    double ta_leg_length = 0;   // nm
    double ta_width = 0;        // nm
    double ta_thickness = 0;    // nm
    double channel_r_on = 0;    // kohm
};

struct SpinParams {
    double eta = 0;
    double theta_sh = 1.0;
};

struct SimParams {
    double dt_ps = 1.0;
    double tilt_deg = 1.0;
    double switch_threshold = 0.9;
    double read_pulse_ns = 20.0;
    double read_settle_ns = 5.0;
    double write_pulse_ns = 10.0;
    double write_sim_ns = 20.0;
    double icr_tol_ua = 0.05;
    double icr_max_ua = 400.0;
    double icr_vsh_target = 15.5;
};

struct ArrayParams {
    int rows = 256, cols = 256;
    int n_fin_shared = 20;
    double csa_latency_ns = 0;
    double csa_threshold = 0.9;   // fraction of full swing
    double csa_bias_ua = 0;
    double csa_min_diff_ua = 0;
    double driver_r = 0;          // kohm
    double c_backgate = 0;        // F per cell on WWL
    double c_bl_cell = 0;         // F per cell on BL/BLB
    double c_col_cell_vsh = 0;    // F per cell on the read column
    double c_col_cell_eirw = 0;
    double c_fin_gate = 0;        // F per fin on RWL
};

struct LayoutConstants {
    double fin_pitch = 0;
    double h_D = 0, h_MP = 0, h_F = 0;      // cell height
    double w_se_MP = 0, w_se_F = 0, w_se_D = 0;
    double w_diff_MP = 0, w_diff_F = 0, w_diff_D = 0;
    double arm_extra_F = 0;                 // EIRW extra width per MTJ arm
    double strip_fin = 0, strip_F = 0;      // shared FET strip per word
};

struct VariationParams {
    double sigma_Ku = 0.05, sigma_Ms = 0.03, sigma_t = 0.03;
    int mc_samples = 64;
    double wt_sweep_lo = 80, wt_sweep_hi = 600;
    int wt_sweep_n = 8;
};

struct Config {
    std::string preset = "eirw";
    MaterialCgs material_cgs;
    FlavorParams vsh, eirw;
    TechnologyParams tech;
    WriteFetParams wfet;
    MtjParams mtj;
    ReadPathParams rpath;
    SpinParams spin;
    SimParams sim;
    ArrayParams array;
    LayoutConstants layout;
    VariationParams var;

    MaterialParams material() const { return to_internal(material_cgs); }
    const FlavorParams& flavor(Flavor f) const { return f == Flavor::VSH ? vsh : eirw; }
    FlavorParams& flavor(Flavor f) { return f == Flavor::VSH ? vsh : eirw; }
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parse + preset fill + overrides; throws ConfigError
Config load_config(const std::string& path, const std::vector<std::string>& overrides = {});
Config parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                    const std::string& origin = "<string>");
void apply_preset(Config& c, const std::string& name);
void set_key(Config& c, const std::string& key, const std::string& value, const std::string& unit = "");
void validate(const Config& c);
std::vector<std::string> known_keys();
std::string dump_config(const Config& c);

}  // namespace vsh
