#include "doctest.h"
#include "common.hpp"
#include "vshmem/array.hpp"

#include <Eigen/Dense>
#include <random>

using namespace vsh;

namespace {

// brute-force nodal analysis: every branch is R_S -- node -- R_MTJ, all into node x,
// access FET from x to ground. Newton with a finite-difference Jacobian.
std::vector<double> nodal_oracle(const std::vector<double>& rs, const std::vector<double>& rm, double v_sl, double v_g,
                                 int n_fin, const TechnologyParams& t)
{
    int nb = rs.size(), N = nb + 1;  // unknowns: mid nodes, then x
    Eigen::VectorXd v = Eigen::VectorXd::Constant(N, 0.5 * v_sl);
    auto F = [&](const Eigen::VectorXd& u) {
        Eigen::VectorXd f(N);
        double into_x = 0;
        for (int k = 0; k < nb; ++k) {
            double i1 = (v_sl - u(k)) / rs[k], i2 = (u(k) - u(nb)) / rm[k];
            f(k) = i1 - i2;
            into_x += i2;
        }
        f(nb) = into_x * 1e3 - access_fet_current(v_g, u(nb), n_fin, t);
        f(nb) *= 1e-3;
        return f;
    };
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXd f = F(v);
        Eigen::MatrixXd J(N, N);
        for (int j = 0; j < N; ++j) {
            Eigen::VectorXd w = v;
            double h = 1e-9;
            w(j) += h;
            J.col(j) = (F(w) - f) / h;
        }
        Eigen::VectorXd dv = J.fullPivLu().solve(-f);
        v += dv;
        if (dv.norm() < 1e-15) break;
    }
    std::vector<double> i(nb);
    for (int k = 0; k < nb; ++k) i[k] = (v_sl - v(k)) / rs[k] * 1e3;
    return i;
}

ArrayConfig eirw(Mode m = Mode::SingleEnded) { return make_array(default_cfg(), Flavor::EIRW, m); }

}  // namespace

TEST_CASE("star solver vs dense nodal oracle")
{
    auto c = default_cfg();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> R(5, 200), V(0.05, 0.4);
    std::uniform_int_distribution<int> NB(1, 8), NF(1, 30);
    for (int trial = 0; trial < 40; ++trial) {
        int nb = NB(rng);
        std::vector<double> rs(nb), rm(nb);
        StarNetwork net;
        net.v_sl = V(rng);
        net.v_gate = c.tech.V_DD;
        net.n_fin = NF(rng);
        for (int k = 0; k < nb; ++k) {
            rs[k] = R(rng);
            rm[k] = R(rng);
            net.r_branch.push_back(rs[k] + rm[k]);
        }
        auto s = solve_star(net, c.tech);
        auto o = nodal_oracle(rs, rm, net.v_sl, net.v_gate, net.n_fin, c.tech);
        for (int k = 0; k < nb; ++k) REQUIRE(rel(s.i_branch[k], o[k]) < 1e-3);
        CHECK(std::abs(s.residual) < 1e-6);
    }
}

TEST_CASE("single branch with an ideal access device is Ohm's law")
{
    auto c = default_cfg();
    c.tech.word_bits = 1;
    StarNetwork net;
    net.v_sl = c.tech.V_READ;
    net.v_gate = c.tech.V_DD;
    net.n_fin = 2000000000;
    double r = branch_resistance(c, Flavor::EIRW, MtjState::P);
    net.r_branch = {r};
    auto s = solve_star(net, c.tech);
    CHECK(s.i_branch[0] == doctest::Approx(c.tech.V_READ / r * 1e3).epsilon(1e-6));
}

TEST_CASE("single-ended pattern behaviour")
{
    auto ac = eirw();
    ReadSolution prev;
    for (int n = 0; n <= ac.word_bits(); ++n) {
        auto r = solve_read_word(ac, pattern_with_ones(ac.word_bits(), n));
        CHECK(r.i_ap < r.i_ref);
        CHECK(r.i_ref < r.i_p);
        if (n > 0) {
            CHECK(r.v_x > prev.v_x);
            CHECK(r.i_p < prev.i_p);
            CHECK(r.i_ap < prev.i_ap);
            CHECK(r.i_ref < prev.i_ref);
        }
        prev = r;
    }
    auto mid = solve_read_word(ac, pattern_with_ones(64, 32));
    CHECK(std::abs((mid.i_p - mid.i_ref) - (mid.i_ref - mid.i_ap)) < 1e-9);
    CHECK(reference_current(ac, 10) > reference_current(ac, 11));
}

TEST_CASE("differential read is flat across patterns")
{
    auto ac = eirw(Mode::Differential);
    int b = ac.word_bits();
    std::vector<std::vector<int>> pats{std::vector<int>(b, 0), std::vector<int>(b, 1)};
    std::vector<int> alt(b);
    for (int k = 0; k < b; ++k) alt[k] = k % 2;
    pats.push_back(alt);
    std::mt19937_64 rng(3);
    for (int r = 0; r < 10; ++r) {
        std::vector<int> p(b);
        for (auto& x : p) x = rng() & 1;
        pats.push_back(p);
    }
    double lo = 1e300, hi = 0;
    for (auto& p : pats) {
        auto r = solve_read_word(ac, p);
        for (double i : r.i_bit) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
        for (double s : r.sm_per_bit) CHECK(s == doctest::Approx(r.i_p - r.i_ap).epsilon(1e-12));
    }
    // i_bit mixes P and AP branches, so compare the P population only
    double plo = 1e300, phi = 0;
    for (auto& p : pats) {
        auto r = solve_read_word(ac, p);
        plo = std::min(plo, r.i_p);
        phi = std::max(phi, r.i_p);
    }
    CHECK((phi - plo) / phi < 0.005);
    CHECK_THROWS_AS(reference_current(ac, 3), std::logic_error);
}

TEST_CASE("margin identities")
{
    CHECK(sense_margin_se(30, 10) == 10);
    CHECK(sense_margin_diff(30, 10) == 20);
    CHECK(read_disturb_margin(15.5, 0.2 * 15.5) == doctest::Approx(80.0).epsilon(1e-14));
    CHECK(read_disturb_margin(20, 5) == 75);
    CHECK_THROWS(read_disturb_margin(0, 1));

    auto ac = eirw();
    ac.cfg.mtj.tmr = 0;
    auto r = solve_read_word(ac, pattern_with_ones(64, 20));
    CHECK(r.i_p == doctest::Approx(r.i_ap).epsilon(1e-12));
    CHECK(r.i_ref == doctest::Approx(r.i_p).epsilon(1e-12));
}

TEST_CASE("RDM drops as the shared FET grows")
{
    auto c = default_cfg();
    double prev = 0;
    for (int n : {10, 20, 30, 40, 50}) {
        auto m = word_margins(make_array(c, Flavor::EIRW, Mode::SingleEnded, 256, 256, n));
        CHECK(m.i_ap_max > prev);
        prev = m.i_ap_max;
    }
}

TEST_CASE("event metrics")
{
    auto c = default_cfg();
    auto ac = make_array(c, Flavor::EIRW, Mode::SingleEnded);
    DeviceWrite dw{120, 2.5};
    auto w = write_event(ac, 3, 1, dw);
    CHECK(w.wt_ns() == w.wt.line + w.wt.device);
    CHECK(w.we_fJ() == w.we.line + w.we.device);
    auto r = read_event(ac, 0, 0);
    CHECK(r.rt_ns() == r.rt.line + r.rt.device);
    CHECK(r.re_fJ() == r.re.line + r.re.device);
    CHECK_THROWS_AS(write_event(ac, 256, 0, dw), std::out_of_range);

    auto z = ac;
    z.cfg.tech.wire_c_per_len = 0;
    z.cfg.tech.wire_r_per_len = 0;
    z.cfg.array.c_backgate = 0;
    z.cfg.array.c_bl_cell = 0;
    z.cfg.array.driver_r = 0;
    CHECK(write_event(z, 0, 0, dw).wt_ns() == dw.t_switch);

    auto h = ac;
    h.cfg.tech.wire_c_per_len *= 0.5;
    CHECK(read_event(h, 0, 0).rt.line == doctest::Approx(0.5 * r.rt.line).epsilon(1e-12));
}

TEST_CASE("scaling trends")
{
    auto c = default_cfg();
    DeviceWrite v{120, 1.2}, e{120, 2.5};
    double pwt = INFINITY, prt = 0;
    for (int n : {256, 512, 1024}) {
        auto av = make_array(c, Flavor::VSH, Mode::SingleEnded, n, n, 20);
        auto ae = make_array(c, Flavor::EIRW, Mode::SingleEnded, n, n, 20);
        double wt = write_event(ae, 0, 0, e).wt_ns() / write_event(av, 0, 0, v).wt_ns();
        double rt = read_event(ae, 0, 0).rt_ns() / read_event(av, 0, 0).rt_ns();
        CHECK(wt < pwt);
        CHECK(wt > 1);
        if (prt > 0) CHECK(rt < prt);
        pwt = wt;
        prt = rt;
    }
}

TEST_CASE("bias scheme")
{
    auto ac = eirw();
    auto b = table2_bias(ac.cfg.tech);
    auto w = validate_bias(ac, b, true);
    CHECK(w.ok);
    CHECK(w.max_write_sneak < 1e-3);
    CHECK(w.accessed_write > 10);
    auto r = validate_bias(ac, b, false);
    CHECK(r.ok);
    // off-state floor of the access FET; unaccessed words on a grounded SL carry exactly nothing
    CHECK(r.max_read_sneak < 1e-3);
    StarNetwork off;
    off.v_sl = b.read_unacc.sl;
    off.v_gate = b.read_acc.rwl;
    off.n_fin = 20;
    off.r_branch.assign(66, 30.0);
    for (double i : solve_star(off, ac.cfg.tech).i_branch) CHECK(i == 0.0);
    CHECK(r.accessed_read > 0);

    auto bad = b;
    bad.write_unacc.blb = 0;
    auto x = validate_bias(ac, bad, true);
    CHECK_FALSE(x.ok);
    CHECK_FALSE(x.violations.empty());
}

TEST_CASE("solver failure is reported")
{
    auto c = default_cfg();
    StarNetwork net;
    net.v_sl = 0.2;
    net.v_gate = 0.8;
    net.r_branch = {-10};
    CHECK_THROWS_AS(solve_star(net, c.tech), SolverError);
}
