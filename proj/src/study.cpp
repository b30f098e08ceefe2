#include "vshmem/study.hpp"
#include "vshmem/layout.hpp"
#include "vshmem/transport.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace vsh {

WritePoint write_point(const Config& c, Flavor f, double i_c)
{
    WritePoint w;
    w.i_c = i_c;
    w.i_spin = spin_current(i_c, c.spin.theta_sh, c.flavor(f).geometry_factor);
    auto s = make_stack(c, f);
    auto r = integrate(s, write_drive(c, -w.i_spin));
    w.switched = r.switched;
    w.t_switch = r.t_switch_ns;
    return w;
}

DeviceWrite device_write(const Config& c, Flavor f)
{
    double ic = std::abs(write_current(c));
    auto w = write_point(c, f, ic);
    if (!w.switched) {
        std::ostringstream o;
        o << flavor_name(f) << " cell does not switch at I_WRITE=" << ic << " uA within " << c.sim.write_sim_ns << " ns";
        throw SolverError(o.str());
    }
    return {ic, w.t_switch};
}

std::vector<double> wt_sweep_currents(const Config& c)
{
    std::vector<double> out;
    int n = c.var.wt_sweep_n;
    double r = std::log(c.var.wt_sweep_hi / c.var.wt_sweep_lo);
    for (int k = 0; k < n; ++k) out.push_back(c.var.wt_sweep_lo * std::exp(r * k / (n - 1)));
    return out;
}

std::vector<LatencyRow> latency_sweep_serial(const Config& c, const std::vector<double>& currents)
{
    std::vector<LatencyRow> out;
    for (double i : currents) out.push_back({i, write_point(c, Flavor::VSH, i), write_point(c, Flavor::EIRW, i)});
    return out;
}

std::vector<LatencyRow> latency_sweep(const Config& c, const std::vector<double>& currents)
{
    long n = currents.size();
    std::vector<LatencyRow> out(n);
    std::vector<WritePoint> pts(2 * n);
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < 2 * n; ++k) pts[k] = write_point(c, k % 2 ? Flavor::EIRW : Flavor::VSH, currents[k / 2]);
    for (long k = 0; k < n; ++k) out[k] = {currents[k], pts[2 * k], pts[2 * k + 1]};
    return out;
}

IcrPair read_critical_currents(const Config& c)
{
    IcrPair p;
    CriticalResult r[2];
#pragma omp parallel for
    for (int k = 0; k < 2; ++k) r[k] = read_critical_current(c, k ? Flavor::EIRW : Flavor::VSH);
    if (!r[0].found || !r[1].found) throw SolverError("read-disturb I_CR: no switching below icr_max_ua");
    p.vsh = r[0].i_cr;
    p.eirw = r[1].i_cr;
    return p;
}

static Fig7Row fig7_row(const ArrayConfig& ac, int n)
{
    auto r = solve_read_word(ac, pattern_with_ones(ac.word_bits(), n));
    return {n, r.i_p, r.i_ap, r.i_ref, r.v_x};
}

std::vector<Fig7Row> pattern_sweep_serial(const ArrayConfig& ac)
{
    std::vector<Fig7Row> out;
    for (int n = 0; n <= ac.word_bits(); ++n) out.push_back(fig7_row(ac, n));
    return out;
}

std::vector<Fig7Row> pattern_sweep(const ArrayConfig& ac)
{
    int bits = ac.word_bits();
    std::vector<Fig7Row> out(bits + 1);
#pragma omp parallel for
    for (int n = 0; n <= bits; ++n) out[n] = fig7_row(ac, n);
    return out;
}

Fig9Row margins_at(const Config& c, int n_fin, const IcrPair& icr)
{
    Fig9Row row{};
    row.n_fin = n_fin;
    int R = c.array.rows, C = c.array.cols;
    for (Mode m : {Mode::SingleEnded, Mode::Differential}) {
        auto e = word_margins(make_array(c, Flavor::EIRW, m, R, C, n_fin));
        auto v = word_margins(make_array(c, Flavor::VSH, m, R, C, n_fin));
        double rdm_e = read_disturb_margin(icr.eirw, e.i_ap_max);
        double rdm_v = read_disturb_margin(icr.vsh, v.i_ap_max);
        if (m == Mode::SingleEnded) {
            row.sm_se = e.sm_word / v.sm_word;
            row.rdm_se = rdm_e / rdm_v;
            row.rdm_vsh_se = rdm_v;
            row.rdm_eirw_se = rdm_e;
        } else {
            row.sm_diff = e.sm_word / v.sm_word;
            row.rdm_diff = rdm_e / rdm_v;
        }
    }
    return row;
}

std::vector<Fig9Row> margin_sweep(const Config& c, const std::vector<int>& fins, const IcrPair& icr)
{
    std::vector<Fig9Row> out(fins.size());
#pragma omp parallel for
    for (long k = 0; k < (long)fins.size(); ++k) out[k] = margins_at(c, fins[k], icr);
    return out;
}

namespace {
struct Job {
    int size;
    Flavor f;
    Mode m;
};
std::vector<Job> jobs(const std::vector<int>& sizes)
{
    std::vector<Job> j;
    for (int s : sizes)
        for (Mode m : {Mode::SingleEnded, Mode::Differential})
            for (Flavor f : {Flavor::VSH, Flavor::EIRW}) j.push_back({s, f, m});
    return j;
}
Fig10Row run_job(const Config& c, const Job& j, const DeviceWrite& wv, const DeviceWrite& we)
{
    auto ac = make_array(c, j.f, j.m, j.size, j.size, c.array.n_fin_shared);
    auto w = write_event(ac, 0, 0, j.f == Flavor::VSH ? wv : we);
    auto r = read_event(ac, 0, 0);
    EventMetrics m;
    m.wt = w.wt;
    m.we = w.we;
    m.rt = r.rt;
    m.re = r.re;
    return {j.size, j.size, j.f, j.m, m};
}
}  // namespace

std::vector<Fig10Row> scaling_from_writes(const Config& c, const std::vector<int>& sizes, const DeviceWrite& wv,
                                          const DeviceWrite& we)
{
    auto js = jobs(sizes);
    std::vector<Fig10Row> out(js.size());
#pragma omp parallel for
    for (long k = 0; k < (long)js.size(); ++k) out[k] = run_job(c, js[k], wv, we);
    return out;
}

std::vector<Fig10Row> scaling_sweep(const Config& c, const std::vector<int>& sizes)
{
    return scaling_from_writes(c, sizes, device_write(c, Flavor::VSH), device_write(c, Flavor::EIRW));
}

std::vector<Fig10Row> scaling_sweep_serial(const Config& c, const std::vector<int>& sizes)
{
    auto wv = device_write(c, Flavor::VSH), we = device_write(c, Flavor::EIRW);
    std::vector<Fig10Row> out;
    for (auto& j : jobs(sizes)) out.push_back(run_job(c, j, wv, we));
    return out;
}

std::vector<SizeRatios> size_ratios(const std::vector<Fig10Row>& rows)
{
    std::vector<SizeRatios> out;
    for (auto& e : rows) {
        if (e.flavor != Flavor::EIRW) continue;
        for (auto& v : rows) {
            if (v.flavor != Flavor::VSH || v.mode != e.mode || v.rows != e.rows) continue;
            out.push_back({e.rows, e.mode, e.m.rt_ns() / v.m.rt_ns(), e.m.re_fJ() / v.m.re_fJ(),
                           e.m.wt_ns() / v.m.wt_ns(), e.m.we_fJ() / v.m.we_fJ()});
        }
    }
    return out;
}

double iso_rdm_sm_ratio(const Config& c, const IcrPair& icr, Mode m, double rdm_pct)
{
    return iso_rdm_sm(c, Flavor::EIRW, m, icr.eirw, rdm_pct) / iso_rdm_sm(c, Flavor::VSH, m, icr.vsh, rdm_pct);
}

double calibrate_channel_r_on(const Config& c, const IcrPair& icr, double target)
{
    Config k = c;
    auto f = [&](double r) {
        k.rpath.channel_r_on = r;
        return iso_rdm_sm_ratio(k, icr) - target;
    };
    double lo = 1e-3, hi = 1e4;
    if (f(lo) > 0 || f(hi) < 0) throw SolverError("calibrate_channel_r_on: target ratio not bracketed");
    for (int it = 0; it < 200 && hi / lo > 1 + 1e-12; ++it) {
        double mid = std::sqrt(lo * hi);
        if (f(mid) > 0) hi = mid;
        else lo = mid;
    }
    return std::sqrt(lo * hi);
}

std::vector<CompareRow> compare_designs(const std::vector<CompareInput>& in, const std::string& baseline,
                                        const std::string& sm_baseline)
{
    const CompareInput *b = nullptr, *s = nullptr;
    for (auto& r : in) {
        if (r.design == baseline) b = &r;
        if (r.design == sm_baseline) s = &r;
    }
    if (!b) throw std::invalid_argument("compare: missing baseline row '" + baseline + "'");
    if (!s) throw std::invalid_argument("compare: missing sm baseline row '" + sm_baseline + "'");
    std::vector<CompareRow> out;
    for (auto& r : in)
        out.push_back({r.design, r.wt / b->wt, r.we / b->we, r.rt / b->rt, r.re / b->re, r.area / b->area, r.sm / s->sm});
    return out;
}

std::vector<CompareInput> read_metrics_csv(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open metrics file '" + path + "'");
    std::string line;
    std::getline(f, line);
    if (line.rfind("design,wt,we,rt,re,area,sm", 0) != 0)
        throw std::runtime_error("metrics file header must be design,wt,we,rt,re,area,sm");
    std::vector<CompareInput> out;
    int no = 1;
    while (std::getline(f, line)) {
        ++no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> t;
        while (std::getline(ss, tok, ',')) t.push_back(tok);
        if (t.size() != 7) throw std::runtime_error(path + ":" + std::to_string(no) + ": expected 7 columns");
        CompareInput r;
        r.design = t[0];
        double* v[] = {&r.wt, &r.we, &r.rt, &r.re, &r.area, &r.sm};
        for (int k = 0; k < 6; ++k) *v[k] = std::stod(t[k + 1]);
        out.push_back(r);
    }
    return out;
}

}  // namespace vsh
