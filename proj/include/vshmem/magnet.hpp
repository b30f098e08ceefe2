#pragma once
#include "vshmem/config.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace vsh {

struct Vec3 {
    double x = 0, y = 0, z = 0;
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
    double norm() const { return std::sqrt(dot(*this)); }
};
inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

enum class Which { W, R };

// FL_W / FL_R pair. coupled=false -> single FL held in w (r unused)
struct CoupledStack {
    MaterialParams mat;       // FL_W (or the single FL)
    MaterialParams mat_r;     // FL_R
    MagnetGeometry gw, gr;
    Vec3 mw{0, 0, 1}, mr{0, 0, 1};
    double j_eff = 0;         // J/m^2
    double overlap_area = 0;  // nm^2
    bool coupled = false;
};

CoupledStack make_single(const MaterialParams& mat, const MagnetGeometry& g);
CoupledStack make_pair(const MaterialParams& mat, const MagnetGeometry& gw, const MagnetGeometry& gr,
                       double j_eff, double overlap_frac);
CoupledStack make_stack(const Config& c, Flavor f, double j_scale = 1.0, double overlap_frac = 1.0);

struct DriveSpec {
    double i_spin = 0;        // uA, signed; sign picks sigma = +-z
    Which target = Which::W;  // FL the spin current enters
    double eta = 1.0;
    double pulse_ns = 10;
    double sim_ns = 20;
    double dt_ps = 1.0;
    double tilt_deg = 1.0;
    double init_z = 0;        // +-1; 0 -> opposite to drive sign
    bool use_stack_state = false;  // start from stack.mw/mr instead of tilt/init_z
    double threshold = 0.9;
    bool thermal = false;
    uint64_t seed = 1;
    int sample_every = 0;     // trajectory decimation, 0 = none
};

DriveSpec read_disturb_drive(const Config& c, double i_read);
DriveSpec write_drive(const Config& c, double i_spin);

struct TrajRow {
    double t_ns;
    Vec3 mw, mr;
};

struct SwitchResult {
    bool switched = false;      // storage FL (R when coupled)
    double t_switch_ns = NAN;
    bool w_switched = false, r_switched = false;
    double t_w_ns = NAN, t_r_ns = NAN;
    double max_norm_drift = 0;  // before renormalization, per step
    Vec3 mw_end, mr_end;
    std::vector<TrajRow> traj;
};

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double anisotropy_field(const MaterialParams& m);                            // A/m
double exchange_field(const MaterialParams& m, double j_eff, double t_nm);   // A/m
// tau_STT in rad/s for i_spin in uA
double stt_prefactor(const MaterialParams& m, const MagnetGeometry& g, double eta, double i_spin_ua);

Vec3 effective_field(const CoupledStack& s, Which which, const Vec3& m_self, const Vec3& m_other);
Vec3 llg_rhs(const Vec3& m, const Vec3& H, double tau, const MaterialParams& mat);

SwitchResult integrate(const CoupledStack& s, const DriveSpec& d);

double magnetic_energy(const CoupledStack& s, const Vec3& mw, const Vec3& mr);  // J
double energy_barrier(const MagnetGeometry& g, const MaterialParams& m, bool coupled_pair);

struct CriticalResult {
    bool found = false;
    double i_cr = NAN;       // smallest switching current seen
    double lo = 0, hi = 0;   // final bracket
};

// magnitude bisection; read-disturb targets FL_R when coupled
CriticalResult critical_current_search(const CoupledStack& s, const DriveSpec& base, double i_max, double tol);
CriticalResult read_critical_current(const Config& c, Flavor f, double tol = -1);

// eta such that the uncoupled VSH read-disturb I_CR hits the configured target
double calibrate_eta(const Config& c, double tol = 0.005);

}  // namespace vsh
