#include "vshmem/transport.hpp"
#include "vshmem/units.hpp"

#include <cmath>

namespace vsh {

namespace {

double Fekv(double x)
{
    if (x > 80) return 0.25 * x * x;  // ln(1+e^{x/2}) ~ x/2
    double l = std::log1p(std::exp(0.5 * x));
    return l * l;
}

}  // namespace

double slope_factor(double ss_mv_dec, double phit) { return ss_mv_dec * 1e-3 / (phit * std::log(10.0)); }

double ekv_current(double vgs, double vds, double k, double vth, double n, double phit)
{
    if (vds < 0) return -ekv_current(vgs - vds, -vds, k, vth, n, phit);
    double a = (vgs - vth) / (n * phit);
    double b = (vgs - vth - n * vds) / (n * phit);
    return 2.0 * n * k * phit * phit * (Fekv(a) - Fekv(b));
}

double wse2_current(double v_gs, double v_ds, const WriteFetParams& p)
{
    if (v_ds == 0) return 0.0;
    // mirror to n-type frame
    double vg = -v_gs, vd = -v_ds;
    double sgn = vd > 0 ? 1.0 : -1.0;
    if (vd < 0) {  // swap source/drain
        vg = vg - vd;
        vd = -vd;
    }
    double n = slope_factor(p.ss_mv_dec, kPhiT300);
    auto ich = [&](double i) {
        // i in uA, R in kohm -> mV; half the contact on each side
        double drop = i * p.r_contact * 1e-3;
        return ekv_current(vg - 0.5 * drop, vd - drop, p.k_drive, p.vth, n, kPhiT300);
    };
    double hi = ekv_current(vg, vd, p.k_drive, p.vth, n, kPhiT300);
    double i;
    if (p.r_contact <= 0) {
        i = hi;
    } else {
        double lo = 0;
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
            double mid = 0.5 * (lo + hi);
            if (ich(mid) > mid) lo = mid;
            else hi = mid;
        }
        i = 0.5 * (lo + hi);
    }
    // p-type: drain current flows out of the drain for v_ds < 0
    return -sgn * i;
}

double write_current(const Config& c)
{
    // source on BL at V_DD, gate at 0, drain on BLB at 0
    return wse2_current(-c.tech.V_DD, -c.tech.V_DD, c.wfet);
}

double spin_current(double i_c, double theta_sh, double geometry_factor) { return theta_sh * geometry_factor * i_c; }

std::pair<double, double> spin_current_diff(double i_c, double theta_sh, double geometry_factor)
{
    double s = spin_current(i_c, theta_sh, geometry_factor);
    return {s, -s};
}

double mtj_resistance(MtjState s, double t_mgo, double d_mtj, const MtjParams& p)
{
    double area_um2 = kPi / 4.0 * d_mtj * d_mtj * 1e-6;
    double rp = p.ra0 * std::exp((t_mgo - p.t_ref) / p.lambda_t) / area_um2 * 1e-3;
    return s == MtjState::AP ? rp * (1.0 + p.tmr) : rp;
}

double access_fet_current(double v_gs, double v_ds, int n_fin, const TechnologyParams& t)
{
    double n = slope_factor(t.fin_ss_mv_dec, kPhiT300);
    // k chosen so that one fin carries exactly fin_drive in deep saturation at V_GS = V_DD
    double k = t.fin_drive / (2.0 * n * kPhiT300 * kPhiT300 * Fekv((t.V_DD - t.fet_vth) / (n * kPhiT300)));
    return n_fin * ekv_current(v_gs, v_ds, k, t.fet_vth, n, kPhiT300);
}

double ta_leg_resistance(const ReadPathParams& rp, double rho)
{
    return rho * rp.ta_leg_length / (rp.ta_width * rp.ta_thickness) * 1e-3;
}

double series_resistance(Flavor f, const ReadPathParams& rp, const TechnologyParams& t)
{
    if (f == Flavor::EIRW) return 2.0 * ta_leg_resistance(rp, t.ta_resistivity);
    return rp.channel_r_on;
}

double branch_resistance(const Config& c, Flavor f, MtjState s)
{
    const auto& fp = c.flavor(f);
    return series_resistance(f, c.rpath, c.tech) + mtj_resistance(s, fp.t_MgO, fp.geom.diameter, c.mtj);
}

}  // namespace vsh
