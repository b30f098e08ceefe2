#include "vshmem/magnet.hpp"
#include "vshmem/units.hpp"

#include <random>
#include <sstream>

namespace vsh {

CoupledStack make_single(const MaterialParams& mat, const MagnetGeometry& g)
{
    CoupledStack s;
    s.mat = mat;
    s.mat_r = mat;
    s.gw = g;
    s.gr = g;
    s.coupled = false;
    return s;
}

CoupledStack make_pair(const MaterialParams& mat, const MagnetGeometry& gw, const MagnetGeometry& gr,
                       double j_eff, double overlap_frac)
{
    CoupledStack s;
    s.mat = mat;
    s.mat_r = mat;
    s.gw = gw;
    s.gr = gr;
    s.j_eff = j_eff;
    s.overlap_area = overlap_frac * std::min(gw.area(), gr.area());
    s.coupled = true;
    return s;
}

CoupledStack make_stack(const Config& c, Flavor f, double j_scale, double overlap_frac)
{
    auto mat = c.material();
    if (f == Flavor::VSH) return make_single(mat, c.vsh.geom);
    return make_pair(mat, c.eirw.geom, c.eirw.geom, j_scale * mat.J_ex, overlap_frac);
}

DriveSpec read_disturb_drive(const Config& c, double i_read)
{
    DriveSpec d;
    d.i_spin = i_read;   // sigma = +z, AP (-z) state is the vulnerable one
    d.target = Which::R;
    d.eta = c.spin.eta;
    d.pulse_ns = c.sim.read_pulse_ns;
    d.sim_ns = c.sim.read_pulse_ns + c.sim.read_settle_ns;
    d.dt_ps = c.sim.dt_ps;
    d.tilt_deg = c.sim.tilt_deg;
    d.threshold = c.sim.switch_threshold;
    return d;
}

DriveSpec write_drive(const Config& c, double i_spin)
{
    DriveSpec d;
    d.i_spin = i_spin;
    d.target = Which::W;
    d.eta = c.spin.eta;
    d.pulse_ns = c.sim.write_pulse_ns;
    d.sim_ns = c.sim.write_sim_ns;
    d.dt_ps = c.sim.dt_ps;
    d.tilt_deg = c.sim.tilt_deg;
    d.threshold = c.sim.switch_threshold;
    return d;
}

double anisotropy_field(const MaterialParams& m) { return 2.0 * m.Ku / (kMu0 * m.Ms); }

double exchange_field(const MaterialParams& m, double j_eff, double t_nm)
{
    return j_eff / (kMu0 * m.Ms * t_nm * 1e-9);
}

double stt_prefactor(const MaterialParams& m, const MagnetGeometry& g, double eta, double i_spin_ua)
{
    double V = g.volume() * 1e-27;
    return m.gamma * kHbar * eta * i_spin_ua * 1e-6 / (2.0 * kQe * m.Ms * V);
}

Vec3 effective_field(const CoupledStack& s, Which which, const Vec3& m_self, const Vec3& m_other)
{
    const MaterialParams& m = (which == Which::R && s.coupled) ? s.mat_r : s.mat;
    Vec3 H{0, 0, anisotropy_field(m) * m_self.z};
    if (s.coupled) {
        const MagnetGeometry& g = which == Which::W ? s.gw : s.gr;
        double frac = s.overlap_area / g.area();
        H = H + m_other * (exchange_field(m, s.j_eff, g.thickness) * frac);
    }
    return H;
}

Vec3 llg_rhs(const Vec3& m, const Vec3& H, double tau, const MaterialParams& mat)
{
    double gp = kMu0 * mat.gamma / (1.0 + mat.alpha * mat.alpha);
    Vec3 mxH = m.cross(H);
    Vec3 sz{0, 0, 1};
    Vec3 out = mxH * (-gp) - m.cross(mxH) * (gp * mat.alpha);
    if (tau != 0) out = out - m.cross(m.cross(sz)) * tau;
    return out;
}

namespace {

struct Rhs {
    const CoupledStack& s;
    double tw, tr;
    Vec3 hw_th, hr_th;
    void operator()(const Vec3& a, const Vec3& b, Vec3& da, Vec3& db) const
    {
        Vec3 Ha = effective_field(s, Which::W, a, b) + hw_th;
        da = llg_rhs(a, Ha, tw, s.mat);
        if (s.coupled) {
            Vec3 Hb = effective_field(s, Which::R, b, a) + hr_th;
            db = llg_rhs(b, Hb, tr, s.mat_r);
        } else {
            db = {};
        }
    }
};

double thermal_sigma(const MaterialParams& m, const MagnetGeometry& g, double dt)
{
    double V = g.volume() * 1e-27;
    return std::sqrt(2.0 * m.alpha * kBoltz * m.temperature / (m.gamma * kMu0 * m.Ms * V * dt));
}

}  // namespace

SwitchResult integrate(const CoupledStack& s, const DriveSpec& d)
{
    if (!(d.dt_ps > 0)) throw IntegrationError("dt_ps must be > 0");
    SwitchResult res;
    double sgn = d.i_spin >= 0 ? 1.0 : -1.0;
    double z0 = d.init_z != 0 ? (d.init_z > 0 ? 1.0 : -1.0) : -sgn;
    double th = d.tilt_deg * kPi / 180.0;
    Vec3 a{std::sin(th), 0, z0 * std::cos(th)};
    Vec3 b = a;
    if (d.use_stack_state) {
        a = s.mw * (1.0 / s.mw.norm());
        b = s.mr * (1.0 / s.mr.norm());
    }
    bool on_r = d.target == Which::R && s.coupled;
    double tau = stt_prefactor(on_r ? s.mat_r : s.mat, on_r ? s.gr : s.gw, d.eta, d.i_spin);
    double tw_on = (d.target == Which::W || !s.coupled) ? tau : 0.0;
    double tr_on = (d.target == Which::R && s.coupled) ? tau : 0.0;

    double dt = d.dt_ps * 1e-12;
    long n = std::lround(d.sim_ns * 1e-9 / dt);
    long n_pulse = std::lround(d.pulse_ns * 1e-9 / dt);
    double target = sgn;

    std::mt19937_64 rng(d.seed);
    std::normal_distribution<double> N01(0.0, 1.0);
    double sw_th = d.thermal ? thermal_sigma(s.mat, s.gw, dt) : 0;
    double sr_th = d.thermal ? thermal_sigma(s.mat_r, s.gr, dt) : 0;

    double cand_w = NAN, cand_r = NAN;
    if (d.sample_every > 0) res.traj.push_back({0.0, a, b});
    for (long i = 0; i < n; ++i) {
        bool on = i < n_pulse;
        Rhs f{s, on ? tw_on : 0.0, on ? tr_on : 0.0, {}, {}};
        if (d.thermal) {
            f.hw_th = Vec3{N01(rng), N01(rng), N01(rng)} * sw_th;
            if (s.coupled) f.hr_th = Vec3{N01(rng), N01(rng), N01(rng)} * sr_th;
        }
        Vec3 k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        f(a, b, k1a, k1b);
        f(a + k1a * (dt / 2), b + k1b * (dt / 2), k2a, k2b);
        f(a + k2a * (dt / 2), b + k2b * (dt / 2), k3a, k3b);
        f(a + k3a * dt, b + k3b * dt, k4a, k4b);
        a = a + (k1a + k2a * 2.0 + k3a * 2.0 + k4a) * (dt / 6);
        double na = a.norm();
        res.max_norm_drift = std::max(res.max_norm_drift, std::abs(na - 1.0));
        a = a * (1.0 / na);
        if (s.coupled) {
            b = b + (k1b + k2b * 2.0 + k3b * 2.0 + k4b) * (dt / 6);
            double nb = b.norm();
            res.max_norm_drift = std::max(res.max_norm_drift, std::abs(nb - 1.0));
            b = b * (1.0 / nb);
        }
        if (!std::isfinite(a.x + a.y + a.z + b.x + b.y + b.z)) {
            std::ostringstream o;
            o << "non-finite magnetization at step " << i << " m_w=(" << a.x << "," << a.y << "," << a.z << ")";
            throw IntegrationError(o.str());
        }
        double t_ns = (i + 1) * d.dt_ps * 1e-3;
        if (a.z * target > d.threshold) {
            if (std::isnan(cand_w)) cand_w = t_ns;
        } else {
            cand_w = NAN;
        }
        if (s.coupled) {
            if (b.z * target > d.threshold) {
                if (std::isnan(cand_r)) cand_r = t_ns;
            } else {
                cand_r = NAN;
            }
        }
        if (d.sample_every > 0 && (i + 1) % d.sample_every == 0) res.traj.push_back({t_ns, a, b});
    }
    res.mw_end = a;
    res.mr_end = b;
    res.w_switched = !std::isnan(cand_w);
    res.t_w_ns = cand_w;
    if (s.coupled) {
        res.r_switched = !std::isnan(cand_r);
        res.t_r_ns = cand_r;
        res.switched = res.r_switched;
        res.t_switch_ns = cand_r;
    } else {
        res.switched = res.w_switched;
        res.t_switch_ns = cand_w;
    }
    return res;
}

double magnetic_energy(const CoupledStack& s, const Vec3& mw, const Vec3& mr)
{
    double Vw = s.gw.volume() * 1e-27;
    double E = -s.mat.Ku * Vw * mw.z * mw.z;
    if (s.coupled) {
        double Vr = s.gr.volume() * 1e-27;
        E += -s.mat_r.Ku * Vr * mr.z * mr.z - s.j_eff * s.overlap_area * 1e-18 * mw.dot(mr);
    }
    return E;
}

double energy_barrier(const MagnetGeometry& g, const MaterialParams& m, bool coupled_pair)
{
    double e = m.Ku * g.volume() * 1e-27 / (kBoltz * m.temperature);
    return coupled_pair ? 2.0 * e : e;
}

CriticalResult critical_current_search(const CoupledStack& s, const DriveSpec& base, double i_max, double tol)
{
    CriticalResult r;
    auto sw = [&](double i) {
        DriveSpec d = base;
        d.i_spin = i;
        d.thermal = false;
        d.sample_every = 0;
        return integrate(s, d).switched;
    };
    double sgn = base.i_spin < 0 ? -1.0 : 1.0;
    if (!sw(sgn * i_max)) {
        r.lo = 0;
        r.hi = i_max;
        return r;
    }
    double lo = 0, hi = i_max;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (sw(sgn * mid)) hi = mid;
        else lo = mid;
    }
    r.found = true;
    r.lo = lo;
    r.hi = hi;
    r.i_cr = hi;
    return r;
}

CriticalResult read_critical_current(const Config& c, Flavor f, double tol)
{
    auto s = make_stack(c, f);
    auto d = read_disturb_drive(c, 1.0);
    return critical_current_search(s, d, c.sim.icr_max_ua, tol > 0 ? tol : c.sim.icr_tol_ua);
}

double calibrate_eta(const Config& c, double tol)
{
    // torque is linear in eta*I, so I_CR scales as 1/eta
    Config k = c;
    k.spin.eta = 1.0;
    auto r = read_critical_current(k, Flavor::VSH, tol);
    if (!r.found) throw IntegrationError("calibrate_eta: no switching below icr_max_ua");
    double icr1 = 0.5 * (r.lo + r.hi);
    return icr1 / c.sim.icr_vsh_target;
}

}  // namespace vsh
