#include "doctest.h"
#include "common.hpp"
#include "vshmem/transport.hpp"
#include "vshmem/units.hpp"

#include <cmath>

using namespace vsh;

TEST_CASE("EKV asymptotes")
{
    double k = 100, vth = 0.3, n = 1.3, pt = kPhiT300;
    // weak inversion: 2nk pt^2 exp((vgs-vth)/(n pt)) (1 - exp(-vds/pt))
    double vgs = 0.0, vds = 0.05;
    double weak = 2 * n * k * pt * pt * std::exp((vgs - vth) / (n * pt)) * (1 - std::exp(-vds / pt));
    CHECK(ekv_current(vgs, vds, k, vth, n, pt) == doctest::Approx(weak).epsilon(1e-3));
    // strong inversion saturation: k vov^2 / (2n)
    double vov = 0.6;
    CHECK(ekv_current(vth + vov, 1.5, k, vth, n, pt) == doctest::Approx(k * vov * vov / (2 * n)).epsilon(0.01));
    // source/drain swap is odd
    CHECK(ekv_current(0.8, -0.2, k, vth, n, pt) == doctest::Approx(-ekv_current(1.0, 0.2, k, vth, n, pt)).epsilon(1e-12));
}

TEST_CASE("I-V continuity across vth and saturation")
{
    auto c = default_cfg();
    double e = 1e-12;
    for (double vg : {c.tech.fet_vth, c.tech.fet_vth + 0.2}) {
        double vsat = vg - c.tech.fet_vth;
        for (double vd : {std::max(vsat, 0.01), 0.4}) {
            double a = access_fet_current(vg - e, vd - e, 1, c.tech), b = access_fet_current(vg + e, vd + e, 1, c.tech);
            CHECK(std::abs(a - b) / std::abs(b) < 1e-9);
        }
    }
    for (double vg : {-c.wfet.vth, -c.wfet.vth - 0.2}) {
        double a = wse2_current(vg - e, -0.4, c.wfet), b = wse2_current(vg + e, -0.4, c.wfet);
        CHECK(std::abs(a - b) / std::abs(b) < 1e-9);
    }
}

TEST_CASE("WSe2 write FET")
{
    auto c = default_cfg();
    CHECK(wse2_current(-0.8, 0.0, c.wfet) == 0.0);
    // gate at V_DD with the source at V_DD, and gate high over a grounded source
    CHECK(std::abs(wse2_current(0.0, -c.tech.V_DD, c.wfet)) < 1e-3);
    CHECK(std::abs(wse2_current(c.tech.V_DD, -c.tech.V_DD, c.wfet)) < 1e-3);
    CHECK(write_current(c) < 0);

    auto p = c.wfet;
    p.r_contact = 0;
    double i1 = wse2_current(-0.8, -0.8, p);
    p.k_drive *= 2;
    CHECK(wse2_current(-0.8, -0.8, p) == doctest::Approx(2 * i1).epsilon(1e-12));

    // contact drop: the solution is a fixed point of the intrinsic model
    double i = -wse2_current(-0.8, -0.6, c.wfet);
    double n = slope_factor(c.wfet.ss_mv_dec, kPhiT300);
    double drop = i * c.wfet.r_contact * 1e-3;
    double back = ekv_current(0.8 - 0.5 * drop, 0.6 - drop, c.wfet.k_drive, c.wfet.vth, n, kPhiT300);
    CHECK(back == doctest::Approx(i).epsilon(1e-9));
    CHECK(i < -wse2_current(-0.8, -0.6, p) / 2);
}

TEST_CASE("spin current")
{
    CHECK(spin_current(50, 1, 1) == 50);
    CHECK(spin_current(-37, 0.8, 0.5) == -spin_current(37, 0.8, 0.5));
    auto [up, dn] = spin_current_diff(40, 1, 0.49);
    CHECK(up > 0);
    CHECK(dn < 0);
    CHECK(up + dn == 0.0);
}

TEST_CASE("MTJ resistance")
{
    MtjParams p{1.0, 0.25, 1.0, 1.1};
    double rp = mtj_resistance(MtjState::P, 1.1, 30, p);
    CHECK(mtj_resistance(MtjState::AP, 1.1, 30, p) / rp == doctest::Approx(2.0).epsilon(1e-15));
    double area = kPi / 4 * 0.03 * 0.03;  // um^2
    CHECK(rp == doctest::Approx(1.0 / area * 1e-3).epsilon(1e-12));
    double prev = 0;
    for (double t = 0.8; t < 1.6; t += 0.1) {
        double r = mtj_resistance(MtjState::P, t, 30, p);
        CHECK(r > prev);
        prev = r;
    }
    CHECK(mtj_resistance(MtjState::P, 1.1, 21, p) > rp);
}

TEST_CASE("access FET")
{
    auto c = default_cfg();
    CHECK(access_fet_current(0.0, 0.2, 20, c.tech) < 1e-3);
    double a = access_fet_current(0.8, 0.1, 20, c.tech);
    CHECK(access_fet_current(0.8, 0.1, 40, c.tech) == doctest::Approx(2 * a).epsilon(1e-12));
    CHECK(access_fet_current(c.tech.V_DD, 5.0, 1, c.tech) == doctest::Approx(c.tech.fin_drive).epsilon(1e-9));
}

TEST_CASE("Ta leg and series resistance")
{
    ReadPathParams rp{100, 21, 0.7, 10};
    CHECK(ta_leg_resistance(rp, 2000) == doctest::Approx(2000.0 * 100 / (21 * 0.7) / 1000).epsilon(1e-12));
    CHECK(ta_leg_resistance(rp, 2000) == doctest::Approx(13.6).epsilon(0.001));
    TechnologyParams t;
    t.ta_resistivity = 2000;
    double r1 = series_resistance(Flavor::EIRW, rp, t);
    t.ta_resistivity = 4000;
    CHECK(series_resistance(Flavor::EIRW, rp, t) == doctest::Approx(2 * r1).epsilon(1e-15));
    CHECK(series_resistance(Flavor::VSH, rp, t) == 10);
}
