#pragma once
#include <numbers>

namespace vsh {

constexpr double kPi = std::numbers::pi;
constexpr double kMu0 = 4e-7 * kPi;          // T*m/A
constexpr double kHbar = 1.054571817e-34;    // J*s
constexpr double kQe = 1.602176634e-19;      // C
constexpr double kBoltz = 1.380649e-23;      // J/K
constexpr double kPhiT300 = kBoltz * 300.0 / kQe;

// CGS-ish config units <-> SI
inline double emu_cc_to_A_m(double v) { return v * 1e3; }
inline double A_m_to_emu_cc(double v) { return v * 1e-3; }
inline double erg_cc_to_J_m3(double v) { return v * 0.1; }
inline double J_m3_to_erg_cc(double v) { return v * 10.0; }
inline double MHz_Oe_to_rad_sT(double v) { return v * 1e6 * 1e4; }
inline double rad_sT_to_MHz_Oe(double v) { return v * 1e-10; }
inline double mJ_m2_to_J_m2(double v) { return v * 1e-3; }
inline double J_m2_to_mJ_m2(double v) { return v * 1e3; }
inline double pJ_m_to_J_m(double v) { return v * 1e-12; }
inline double J_m_to_pJ_m(double v) { return v * 1e12; }

inline double A_m_to_Oe(double h) { return h * 4e-3 * kPi; }

}  // namespace vsh
