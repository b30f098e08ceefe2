#include "doctest.h"
#include "common.hpp"
#include "vshmem/variation.hpp"
#include "vshmem/units.hpp"

#include <cmath>

using namespace vsh;

namespace {
// lens of two unit-diameter circles, centres offset by p% of D; Simpson in theta
double lens_oracle(double pct)
{
    double d = 2.0 * pct / 100.0;  // offset in radii
    if (d >= 2) return 0;
    double a = std::acos(d / 2);   // x = cos(theta) from d/2 to 1
    int n = 20000;
    double h = a / n, s = 0;
    for (int k = 0; k <= n; ++k) {
        double t = k * h, f = 2 * std::sin(t) * std::sin(t);
        s += f * (k == 0 || k == n ? 1 : (k % 2 ? 4 : 2));
    }
    return 2 * s * h / 3 / kPi;
}
}  // namespace

TEST_CASE("overlap fraction")
{
    CHECK(overlap_fraction(0) == 1.0);
    CHECK(overlap_fraction(100) == 0.0);
    CHECK(overlap_fraction(140) == 0.0);
    CHECK(overlap_fraction(50) == doctest::Approx(0.391).epsilon(0.002));
    double prev = 1.1;
    for (double p = 0; p <= 100; p += 2.5) {
        double f = overlap_fraction(p);
        CHECK(std::abs(f - lens_oracle(p)) < 1e-6);
        if (p > 0) CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("variation map: examples and invariants")
{
    auto c = default_cfg();
    GridSpec g;
    auto v = run_variation_map(c, eirw_write_drive(c), g);
    auto s = run_variation_map_serial(c, eirw_write_drive(c), g);
    REQUIRE(v.rows.size() == g.misalign.size() * g.j_scale.size());
    REQUIRE(s.rows.size() == v.rows.size());
    for (size_t k = 0; k < v.rows.size(); ++k) {
        CHECK(v.rows[k].switched == s.rows[k].switched);
        if (v.rows[k].switched) CHECK(v.rows[k].t_switch_ns == s.rows[k].t_switch_ns);
    }

    REQUIRE(v.find(0, 1.0));
    CHECK(v.find(0, 1.0)->switched);
    CHECK(v.find(0, 1.0)->t_ratio == 1.0);
    for (double m : g.misalign) CHECK_FALSE(v.find(m, 0.3)->switched);

    // boundary exists and does not rise as misalignment shrinks
    double prev = -1;
    for (double m : g.misalign) {
        double b = v.boundary(m);
        double bb = std::isnan(b) ? 2.0 : b;
        CHECK(bb >= prev);
        prev = bb;
    }
}

TEST_CASE("monte carlo")
{
    auto c = default_cfg();
    auto d = eirw_write_drive(c);
    auto z = monte_carlo(c, d, {0, 0, 0}, 8, 5);
    CHECK(z.yield_pct() == 100.0);

    McSigmas s{0.08, 0.03, 0.03};
    auto a = monte_carlo(c, d, s, 24, 11), b = monte_carlo(c, d, s, 24, 11);
    CHECK(a.ok == b.ok);
    CHECK(a.ok == monte_carlo_serial(c, d, s, 24, 11).ok);

    double prev = 101;
    for (double sk : {0.0, 0.05, 0.1, 0.2, 0.3}) {
        double y = monte_carlo(c, d, {sk, 0, 0}, 24, 99).yield_pct();
        CHECK(y <= prev);
        prev = y;
    }
}
