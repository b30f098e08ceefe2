#pragma once
#include "vshmem/config.hpp"

#include <utility>

namespace vsh {

enum class MtjState { P, AP };

// EKV interpolation, n-type frame: I(vgs, vds) for vds of either sign (symmetric device)
double ekv_current(double vgs, double vds, double k, double vth, double n, double phit);
double slope_factor(double ss_mv_dec, double phit);

// p-type WSe2 back-gated FET with lumped contact resistance; signed drain current (uA)
double wse2_current(double v_gs, double v_ds, const WriteFetParams& p);
// write-channel charge current at Table II write bias (WWL=0, BL/BLB = V_DD/0)
double write_current(const Config& c);

// i_spin per arm; differential returns (+, -)
double spin_current(double i_c, double theta_sh, double geometry_factor);
std::pair<double, double> spin_current_diff(double i_c, double theta_sh, double geometry_factor);

double mtj_resistance(MtjState s, double t_mgo, double d_mtj, const MtjParams& p);  // kohm
double access_fet_current(double v_gs, double v_ds, int n_fin, const TechnologyParams& t);  // uA
double ta_leg_resistance(const ReadPathParams& rp, double rho);  // kohm, one leg
double series_resistance(Flavor f, const ReadPathParams& rp, const TechnologyParams& t);  // kohm

// full read branch (R_S + R_MTJ) for a flavor
double branch_resistance(const Config& c, Flavor f, MtjState s);

}  // namespace vsh
