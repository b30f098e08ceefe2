#include "vshmem/experiments.hpp"
#include "vshmem/array.hpp"
#include "vshmem/layout.hpp"
#include "vshmem/study.hpp"
#include "vshmem/transport.hpp"
#include "vshmem/variation.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vsh {

std::string fmt(double x)
{
    if (std::isnan(x)) return "nan";
    char b[64];
    std::snprintf(b, sizeof b, "%.9g", x);
    return b;
}

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> n{"fig4_sm",     "fig4_rdm",     "fig4_wt",       "fig5_map", "fig7_pattern",
                                            "fig8_area",   "fig9_margins", "fig10_scaling", "compare"};
    return n;
}

bool is_experiment(const std::string& name)
{
    auto& n = experiment_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

struct Csv {
    std::string path;
    std::ofstream f;
    size_t cols;
    Csv(const std::string& dir, const std::string& name, const std::vector<std::string>& header)
        : path((std::filesystem::path(dir) / name).string()), f(path), cols(header.size())
    {
        if (!f) throw std::runtime_error("cannot write '" + path + "'");
        row(header);
    }
    void row(const std::vector<std::string>& v)
    {
        if (v.size() != cols) throw std::logic_error(path + ": column count mismatch");
        for (size_t k = 0; k < v.size(); ++k) f << (k ? "," : "") << v[k];
        f << '\n';
    }
};

Flavor preset_flavor(const Config& c) { return c.preset == "vsh" ? Flavor::VSH : Flavor::EIRW; }

std::vector<double> v_read_grid()
{
    std::vector<double> v;
    for (int k = 1; k <= 40; ++k) v.push_back(0.01 * k);
    return v;
}

void line(std::ostringstream& o, const std::string& what, double got, const std::string& expect)
{
    char b[160];
    std::snprintf(b, sizeof b, "  %-34s %10.4g   (expected %s)\n", what.c_str(), got, expect.c_str());
    o << b;
}

ExperimentOutput fig4_sm(const Config& c, const std::string& dir, bool rdm)
{
    ExperimentOutput out;
    auto icr = read_critical_currents(c);
    std::ostringstream s;
    if (!rdm) {
        Csv f(dir, "fig4_sm.csv", {"v_read", "sm_vsh", "sm_eirw", "rdm_vsh", "rdm_eirw"});
        for (double v : v_read_grid()) {
            auto a = device_read(c, Flavor::VSH, v), b = device_read(c, Flavor::EIRW, v);
            f.row({fmt(v), fmt(sense_margin_se(a.i_p, a.i_ap)), fmt(sense_margin_se(b.i_p, b.i_ap)),
                   fmt(read_disturb_margin(icr.vsh, a.i_ap)), fmt(read_disturb_margin(icr.eirw, b.i_ap))});
        }
        out.files.push_back(f.path);
        s << "fig4_sm: device sense margin vs read disturb margin\n";
        line(s, "SM ratio EIRW/VSH at RDM=80%", iso_rdm_sm_ratio(c, icr), "~1.9");
    } else {
        Csv f(dir, "fig4_rdm.csv", {"flavor", "coupled", "i_cr_ua", "eta"});
        f.row({"vsh", "0", fmt(icr.vsh), fmt(c.spin.eta)});
        f.row({"eirw", "1", fmt(icr.eirw), fmt(c.spin.eta)});
        out.files.push_back(f.path);
        s << "fig4_rdm: read-disturb critical current\n";
        line(s, "I_CR VSH (uA)", icr.vsh, "15.5");
        line(s, "I_CR EIRW coupled (uA)", icr.eirw, "20.3, above VSH");
    }
    out.summary = s.str();
    return out;
}

ExperimentOutput fig4_wt(const Config& c, const std::string& dir)
{
    ExperimentOutput out;
    auto rows = latency_sweep(c, wt_sweep_currents(c));
    Csv f(dir, "fig4_wt.csv", {"i_write_ua", "i_spin_vsh_ua", "i_spin_eirw_ua", "t_vsh_ns", "t_eirw_ns", "ratio"});
    double lo = 1e9, hi = 0;
    for (auto& r : rows) {
        f.row({fmt(r.i_c), fmt(r.vsh.i_spin), fmt(r.eirw.i_spin), fmt(r.vsh.t_switch), fmt(r.eirw.t_switch), fmt(r.ratio())});
        if (r.vsh.switched && r.eirw.switched) {
            lo = std::min(lo, r.ratio());
            hi = std::max(hi, r.ratio());
        }
    }
    out.files.push_back(f.path);

    auto d = eirw_write_drive(c);
    d.sample_every = 10;
    auto res = integrate(make_stack(c, Flavor::EIRW), d);
    Csv t(dir, "fig4_traj.csv", {"t_ns", "mw_x", "mw_y", "mw_z", "mr_x", "mr_y", "mr_z"});
    for (auto& p : res.traj)
        t.row({fmt(p.t_ns), fmt(p.mw.x), fmt(p.mw.y), fmt(p.mw.z), fmt(p.mr.x), fmt(p.mr.y), fmt(p.mr.z)});
    out.files.push_back(t.path);

    std::ostringstream s;
    s << "fig4_wt: write latency vs write current\n";
    line(s, "latency ratio EIRW/VSH, min", lo, ">1.7");
    line(s, "latency ratio EIRW/VSH, max", hi, ">1.7");
    out.summary = s.str();
    return out;
}

ExperimentOutput fig5_map(const Config& c, const std::string& dir, uint64_t seed)
{
    ExperimentOutput out;
    auto v = run_variation_map(c, eirw_write_drive(c), GridSpec{});
    Csv f(dir, "fig5.csv", {"misalign_pct", "j_scale", "switched", "t_switch_ns", "t_ratio"});
    for (auto& r : v.rows)
        f.row({fmt(r.misalignment_pct), fmt(r.j_scale), r.switched ? "1" : "0", fmt(r.t_switch_ns), fmt(r.t_ratio)});
    out.files.push_back(f.path);

    Csv m(dir, "fig5_mc.csv", {"sigma_scale", "n", "passed", "yield_pct"});
    for (double k : {0.0, 0.5, 1.0, 2.0}) {
        McSigmas sg{k * c.var.sigma_Ku, k * c.var.sigma_Ms, k * c.var.sigma_t};
        auto r = monte_carlo(c, eirw_write_drive(c), sg, c.var.mc_samples, seed);
        m.row({fmt(k), std::to_string(r.n), std::to_string(r.passed), fmt(r.yield_pct())});
    }
    out.files.push_back(m.path);

    std::ostringstream s;
    s << "fig5_map: coupled switching under misalignment and weakened exchange\n";
    line(s, "nominal t_switch (ns)", v.t_nominal_ns, "switches");
    for (double mis : GridSpec{}.misalign) line(s, "boundary j_scale at " + fmt(mis) + "%", v.boundary(mis), "0.3-0.4 fails");
    auto p = v.find(20, 0.6);
    line(s, "t_ratio at (20%, 0.6)", p ? p->t_ratio : NAN, "~1.0");
    p = v.find(20, 0.5);
    line(s, "t_ratio at (20%, 0.5)", p ? p->t_ratio : NAN, "1.015");
    out.summary = s.str();
    return out;
}

ExperimentOutput fig7_pattern(const Config& c, const std::string& dir)
{
    ExperimentOutput out;
    Flavor fl = preset_flavor(c);
    auto se = pattern_sweep(make_array(c, fl, Mode::SingleEnded));
    Csv f(dir, "fig7.csv", {"n_ones", "i_p", "i_ap", "i_ref"});
    for (auto& r : se) f.row({std::to_string(r.n_ones), fmt(r.i_p), fmt(r.i_ap), fmt(r.i_ref)});
    out.files.push_back(f.path);

    auto df = pattern_sweep(make_array(c, fl, Mode::Differential));
    double lo = 1e300, hi = 0;
    for (auto& r : df) {
        lo = std::min(lo, r.i_p);
        hi = std::max(hi, r.i_p);
    }
    std::ostringstream s;
    s << "fig7_pattern: " << flavor_name(fl) << " read currents vs number of stored ones\n";
    line(s, "SE I_P drop n=0 -> 64 (%)", 100 * (se.front().i_p - se.back().i_p) / se.front().i_p, "decreasing");
    line(s, "diff I_P spread (%)", 100 * (hi - lo) / hi, "~0");
    out.summary = s.str();
    return out;
}

ExperimentOutput fig8_area(const Config& c, const std::string& dir)
{
    ExperimentOutput out;
    Csv f(dir, "fig8.csv", {"n_fin", "delta_se_pct", "delta_diff_pct"});
    for (int n = 10; n <= 50; n += 5)
        f.row({std::to_string(n), fmt(area_delta(Mode::SingleEnded, n, c)), fmt(area_delta(Mode::Differential, n, c))});
    out.files.push_back(f.path);
    std::ostringstream s;
    s << "fig8_area: word area change EIRW vs VSH\n";
    line(s, "SE, 20 fins (%)", area_delta(Mode::SingleEnded, 20, c), "<1");
    line(s, "diff, 20 fins (%)", area_delta(Mode::Differential, 20, c), "~-1");
    line(s, "SE, 50 fins (%)", area_delta(Mode::SingleEnded, 50, c), "12");
    line(s, "diff, 50 fins (%)", area_delta(Mode::Differential, 50, c), "7");
    out.summary = s.str();
    return out;
}

ExperimentOutput fig9_margins(const Config& c, const std::string& dir)
{
    ExperimentOutput out;
    auto icr = read_critical_currents(c);
    auto rows = margin_sweep(c, {10, 20, 30, 40, 50}, icr);
    Csv f(dir, "fig9.csv", {"n_fin", "sm_se", "sm_diff", "rdm_se", "rdm_diff"});
    for (auto& r : rows) f.row({std::to_string(r.n_fin), fmt(r.sm_se), fmt(r.sm_diff), fmt(r.rdm_se), fmt(r.rdm_diff)});
    out.files.push_back(f.path);
    auto r20 = margins_at(c, c.array.n_fin_shared, icr);
    std::ostringstream s;
    s << "fig9_margins: EIRW/VSH margin ratios, N_FIN=" << c.array.n_fin_shared << "\n";
    line(s, "SM ratio SE", r20.sm_se, "1.3");
    line(s, "SM ratio diff", r20.sm_diff, "1.1");
    line(s, "RDM ratio SE", r20.rdm_se, "1.2-1.3");
    line(s, "RDM ratio diff", r20.rdm_diff, "1.2-1.3");
    out.summary = s.str();
    return out;
}

ExperimentOutput fig10_scaling(const Config& c, const std::string& dir)
{
    ExperimentOutput out;
    auto rows = scaling_sweep(c, {256, 512, 1024});
    Csv f(dir, "fig10.csv", {"rows", "cols", "wt", "we", "rt", "re", "flavor", "mode"});
    for (auto& r : rows)
        f.row({std::to_string(r.rows), std::to_string(r.cols), fmt(r.m.wt_ns()), fmt(r.m.we_fJ()), fmt(r.m.rt_ns()),
               fmt(r.m.re_fJ()), flavor_name(r.flavor), mode_name(r.mode)});
    out.files.push_back(f.path);
    std::ostringstream s;
    s << "fig10_scaling: EIRW/VSH event ratios\n";
    for (auto& r : size_ratios(rows)) {
        std::string tag = std::to_string(r.size) + " " + mode_name(r.mode) + " ";
        line(s, tag + "RT", r.rt, "0.58-0.61");
        line(s, tag + "RE", r.re, "0.54-0.64");
        line(s, tag + "WT", r.wt, "1.66-1.67 at 256");
        line(s, tag + "WE", r.we, "1.95-1.96 at 256");
    }
    out.summary = s.str();
    return out;
}

ExperimentOutput compare(const Config& c, const ExperimentSpec& spec)
{
    ExperimentOutput out;
    auto wv = device_write(c, Flavor::VSH), we = device_write(c, Flavor::EIRW);
    int n = c.array.rows;
    auto rows = scaling_from_writes(c, {n}, wv, we);
    std::vector<CompareInput> in;
    for (auto& r : rows) {
        if (r.mode != Mode::SingleEnded) continue;
        auto m = word_margins(make_array(c, r.flavor, r.mode));
        in.push_back({flavor_name(r.flavor), r.m.wt_ns(), r.m.we_fJ(), r.m.rt_ns(), r.m.re_fJ(),
                      word_area(r.flavor, r.mode, c.array.n_fin_shared, c).area_um2(), m.sm_word});
    }
    Csv a(spec.out_dir, "metrics_sim.csv", {"design", "wt", "we", "rt", "re", "area", "sm"});
    for (auto& r : in) a.row({r.design, fmt(r.wt), fmt(r.we), fmt(r.rt), fmt(r.re), fmt(r.area), fmt(r.sm)});
    out.files.push_back(a.path);
    if (!spec.metrics_path.empty())
        for (auto& r : read_metrics_csv(spec.metrics_path)) in.push_back(r);

    auto t = compare_designs(in, spec.baseline, spec.sm_baseline);
    Csv f(spec.out_dir, "compare.csv", {"design", "wt", "we", "rt", "re", "area", "sm"});
    for (auto& r : t) f.row({r.design, fmt(r.wt), fmt(r.we), fmt(r.rt), fmt(r.re), fmt(r.area), fmt(r.sm)});
    out.files.push_back(f.path);

    std::ostringstream s;
    s << "compare: normalized to '" << spec.baseline << "' (sm to '" << spec.sm_baseline << "')\n";
    for (auto& r : t) {
        char b[200];
        std::snprintf(b, sizeof b, "  %-10s wt %.3f  we %.3f  rt %.3f  re %.3f  area %.3f  sm %.3f\n", r.design.c_str(), r.wt,
                      r.we, r.rt, r.re, r.area, r.sm);
        s << b;
    }
    out.summary = s.str();
    return out;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentSpec& spec)
{
    if (!is_experiment(spec.name)) throw std::invalid_argument("unknown experiment '" + spec.name + "'");
    Config c = load_config(spec.config_path, spec.overrides);
    std::filesystem::create_directories(spec.out_dir);
    const auto& n = spec.name;
    if (n == "fig4_sm") return fig4_sm(c, spec.out_dir, false);
    if (n == "fig4_rdm") return fig4_sm(c, spec.out_dir, true);
    if (n == "fig4_wt") return fig4_wt(c, spec.out_dir);
    if (n == "fig5_map") return fig5_map(c, spec.out_dir, spec.seed);
    if (n == "fig7_pattern") return fig7_pattern(c, spec.out_dir);
    if (n == "fig8_area") return fig8_area(c, spec.out_dir);
    if (n == "fig9_margins") return fig9_margins(c, spec.out_dir);
    if (n == "fig10_scaling") return fig10_scaling(c, spec.out_dir);
    return compare(c, spec);
}

ExperimentOutput dump_iv(const Config& c, const std::string& dir)
{
    std::filesystem::create_directories(dir);
    ExperimentOutput out;
    {
        Csv f(dir, "iv_write_fet.csv", {"v_gs", "v_ds", "i_d_ua"});
        for (int g = 0; g <= 8; ++g)
            for (int d = 0; d <= 16; ++d) {
                double vg = -0.1 * g, vd = -0.05 * d;
                f.row({fmt(vg), fmt(vd), fmt(wse2_current(vg, vd, c.wfet))});
            }
        out.files.push_back(f.path);
    }
    {
        Csv f(dir, "iv_access_fet.csv", {"v_gs", "v_ds", "n_fin", "i_d_ua"});
        for (int g = 0; g <= 8; ++g)
            for (int d = 0; d <= 16; ++d) {
                double vg = 0.1 * g, vd = 0.05 * d;
                f.row({fmt(vg), fmt(vd), "1", fmt(access_fet_current(vg, vd, 1, c.tech))});
            }
        out.files.push_back(f.path);
    }
    {
        Csv f(dir, "iv_read_branch.csv", {"flavor", "state", "v", "i_ua"});
        for (Flavor fl : {Flavor::VSH, Flavor::EIRW})
            for (MtjState st : {MtjState::P, MtjState::AP}) {
                double r = branch_resistance(c, fl, st);
                for (int k = 0; k <= 8; ++k) {
                    double v = 0.05 * k;
                    f.row({flavor_name(fl), st == MtjState::P ? "P" : "AP", fmt(v), fmt(v / r * 1e3)});
                }
            }
        out.files.push_back(f.path);
    }
    out.summary = "dump-iv: wrote write FET, access FET and read branch tables\n";
    return out;
}

std::string calibrate_report(const Config& c_in)
{
    Config c = c_in;
    std::ostringstream o;
    double eta = calibrate_eta(c);
    c.spin.eta = eta;
    o << "eta = " << fmt(eta) << " [1]\n";
    auto icr = read_critical_currents(c);
    o << "# I_CR vsh " << fmt(icr.vsh) << " uA, eirw " << fmt(icr.eirw) << " uA\n";
    o << "channel_r_on = " << fmt(calibrate_channel_r_on(c, icr)) << " [kohm]\n";
    auto fit = fit_layout(c, default_area_targets());
    o << "strip_fin = " << fmt(fit.strip_fin) << " [1]\n";
    o << "strip_F = " << fmt(fit.strip_F) << " [1]\n";
    o << "arm_extra_F = " << fmt(fit.arm_extra_F) << " [1]\n";
    o << "# layout fit rms residual " << fmt(fit.rms_residual_pct) << " %\n";
    return o.str();
}

}  // namespace vsh
