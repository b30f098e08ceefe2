#include "vshmem/variation.hpp"
#include "vshmem/transport.hpp"
#include "vshmem/units.hpp"

#include <cmath>
#include <random>

namespace vsh {

double overlap_fraction(double misalignment_pct)
{
    double d = misalignment_pct / 100.0;
    if (d <= 0) return 1.0;
    if (d >= 1) return 0.0;
    return (2.0 * std::acos(d) - 2.0 * d * std::sqrt(1.0 - d * d)) / kPi;
}

const VariationRow* VariationResult::find(double mis, double j) const
{
    for (auto& r : rows)
        if (std::abs(r.misalignment_pct - mis) < 1e-9 && std::abs(r.j_scale - j) < 1e-9) return &r;
    return nullptr;
}

double VariationResult::boundary(double mis) const
{
    std::vector<const VariationRow*> col;
    for (auto& r : rows)
        if (std::abs(r.misalignment_pct - mis) < 1e-9) col.push_back(&r);
    // rows are emitted with j ascending per misalignment
    double b = NAN;
    for (auto it = col.rbegin(); it != col.rend(); ++it) {
        if (!(*it)->switched) break;
        b = (*it)->j_scale;
    }
    return b;
}

DriveSpec eirw_write_drive(const Config& c)
{
    double ic = std::abs(write_current(c));
    double is = spin_current(ic, c.spin.theta_sh, c.eirw.geometry_factor);
    return write_drive(c, -is);
}

namespace {

VariationRow point(const Config& c, const DriveSpec& d, double mis, double j)
{
    auto s = make_stack(c, Flavor::EIRW, j, overlap_fraction(mis));
    auto r = integrate(s, d);
    return {mis, j, r.switched, r.t_switch_ns, NAN};
}

void fill_ratio(VariationResult& out, const Config& c, const DriveSpec& d)
{
    auto nom = point(c, d, 0.0, 1.0);
    out.t_nominal_ns = nom.switched ? nom.t_switch_ns : NAN;
    for (auto& r : out.rows)
        r.t_ratio = (r.switched && nom.switched) ? r.t_switch_ns / nom.t_switch_ns : NAN;
}

}  // namespace

VariationResult run_variation_map_serial(const Config& c, const DriveSpec& drive, const GridSpec& g)
{
    VariationResult out;
    for (double m : g.misalign)
        for (double j : g.j_scale) out.rows.push_back(point(c, drive, m, j));
    fill_ratio(out, c, drive);
    return out;
}

VariationResult run_variation_map(const Config& c, const DriveSpec& drive, const GridSpec& g)
{
    VariationResult out;
    long nj = g.j_scale.size();
    long n = g.misalign.size() * nj;
    out.rows.resize(n);
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) out.rows[k] = point(c, drive, g.misalign[k / nj], g.j_scale[k % nj]);
    fill_ratio(out, c, drive);
    return out;
}

namespace {

struct McDraw {
    double zKu[2], zMs[2], zt[2];
};

// per-sample stream so results do not depend on thread count
McDraw draw(uint64_t seed, int i)
{
    std::seed_seq sq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(i)};
    std::mt19937_64 g(sq);
    std::normal_distribution<double> N(0.0, 1.0);
    McDraw d;
    for (int k = 0; k < 2; ++k) {
        d.zKu[k] = N(g);
        d.zMs[k] = N(g);
        d.zt[k] = N(g);
    }
    return d;
}

bool mc_sample(const Config& c, const DriveSpec& drive, const McSigmas& s, uint64_t seed, int i)
{
    auto z = draw(seed, i);
    auto st = make_stack(c, Flavor::EIRW);
    auto pos = [](double x) { return std::max(x, 1e-3); };
    st.mat.Ku *= pos(1 + s.Ku * z.zKu[0]);
    st.mat_r.Ku *= pos(1 + s.Ku * z.zKu[1]);
    st.mat.Ms *= pos(1 + s.Ms * z.zMs[0]);
    st.mat_r.Ms *= pos(1 + s.Ms * z.zMs[1]);
    st.gw.thickness *= pos(1 + s.t * z.zt[0]);
    st.gr.thickness *= pos(1 + s.t * z.zt[1]);
    return integrate(st, drive).switched;
}

}  // namespace

McResult monte_carlo_serial(const Config& c, const DriveSpec& drive, const McSigmas& s, int n_samples, uint64_t seed)
{
    McResult r;
    r.n = n_samples;
    r.ok.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) r.ok[i] = mc_sample(c, drive, s, seed, i);
    for (auto o : r.ok) r.passed += o;
    return r;
}

McResult monte_carlo(const Config& c, const DriveSpec& drive, const McSigmas& s, int n_samples, uint64_t seed)
{
    McResult r;
    r.n = n_samples;
    r.ok.resize(n_samples);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_samples; ++i) r.ok[i] = mc_sample(c, drive, s, seed, i);
    for (auto o : r.ok) r.passed += o;
    return r;
}

}  // namespace vsh
