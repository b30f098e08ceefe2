#include "vshmem/config.hpp"
#include "vshmem/units.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace vsh {

const char* flavor_name(Flavor f) { return f == Flavor::VSH ? "vsh" : "eirw"; }
const char* mode_name(Mode m) { return m == Mode::SingleEnded ? "se" : "diff"; }

MaterialParams to_internal(const MaterialCgs& in)
{
    MaterialParams p;
    p.Ms = emu_cc_to_A_m(in.Ms);
    p.Ku = erg_cc_to_J_m3(in.Ku);
    p.alpha = in.alpha;
    p.gamma = MHz_Oe_to_rad_sT(in.gamma);
    p.A_ex = pJ_m_to_J_m(in.A_ex);
    p.J_ex = mJ_m2_to_J_m2(in.J_ex);
    p.temperature = in.temperature;
    return p;
}

MaterialCgs from_internal(const MaterialParams& p)
{
    MaterialCgs c;
    c.Ms = A_m_to_emu_cc(p.Ms);
    c.Ku = J_m3_to_erg_cc(p.Ku);
    c.alpha = p.alpha;
    c.gamma = rad_sT_to_MHz_Oe(p.gamma);
    c.A_ex = J_m_to_pJ_m(p.A_ex);
    c.J_ex = J_m2_to_mJ_m2(p.J_ex);
    c.temperature = p.temperature;
    return c;
}

double MagnetGeometry::area() const { return kPi / 4.0 * diameter * diameter; }
double MagnetGeometry::volume() const { return area() * thickness; }

namespace {

struct Key {
    std::string name, unit;
    bool from_preset;
    bool integer;
    std::function<double&(Config&)> ref;
    std::function<int&(Config&)> iref;
};

std::vector<Key> make_registry()
{
    std::vector<Key> r;
    auto d = [&](const char* n, const char* u, bool pre, std::function<double&(Config&)> f) {
        r.push_back({n, u, pre, false, std::move(f), nullptr});
    };
    auto i = [&](const char* n, bool pre, std::function<int&(Config&)> f) {
        r.push_back({n, "1", pre, true, nullptr, std::move(f)});
    };
    // material (preset)
    d("Ms", "emu/cm^3", true, [](Config& c) -> double& { return c.material_cgs.Ms; });
    d("Ku", "erg/cm^3", true, [](Config& c) -> double& { return c.material_cgs.Ku; });
    d("alpha", "1", true, [](Config& c) -> double& { return c.material_cgs.alpha; });
    d("gamma", "MHz/Oe", true, [](Config& c) -> double& { return c.material_cgs.gamma; });
    d("A_ex", "pJ/m", true, [](Config& c) -> double& { return c.material_cgs.A_ex; });
    d("J_ex", "mJ/m^2", true, [](Config& c) -> double& { return c.material_cgs.J_ex; });
    d("temperature", "K", true, [](Config& c) -> double& { return c.material_cgs.temperature; });
    d("ta_resistivity", "ohm*nm", true, [](Config& c) -> double& { return c.tech.ta_resistivity; });
    for (Flavor f : {Flavor::VSH, Flavor::EIRW}) {
        std::string p = std::string(flavor_name(f)) + ".";
        r.push_back({p + "diameter", "nm", true, false, [f](Config& c) -> double& { return c.flavor(f).geom.diameter; }, nullptr});
        r.push_back({p + "thickness", "nm", true, false, [f](Config& c) -> double& { return c.flavor(f).geom.thickness; }, nullptr});
        r.push_back({p + "t_MgO", "nm", true, false, [f](Config& c) -> double& { return c.flavor(f).t_MgO; }, nullptr});
        r.push_back({p + "geometry_factor", "1", false, false, [f](Config& c) -> double& { return c.flavor(f).geometry_factor; }, nullptr});
    }
    // technology
    d("F", "nm", false, [](Config& c) -> double& { return c.tech.F; });
    d("MP", "nm", false, [](Config& c) -> double& { return c.tech.MP; });
    d("V_DD", "V", false, [](Config& c) -> double& { return c.tech.V_DD; });
    d("V_READ", "V", false, [](Config& c) -> double& { return c.tech.V_READ; });
    d("wire_r_per_len", "ohm/nm", false, [](Config& c) -> double& { return c.tech.wire_r_per_len; });
    d("wire_c_per_len", "F/nm", false, [](Config& c) -> double& { return c.tech.wire_c_per_len; });
    d("fin_drive", "uA", false, [](Config& c) -> double& { return c.tech.fin_drive; });
    d("fet_vth", "V", false, [](Config& c) -> double& { return c.tech.fet_vth; });
    d("fin_ss_mv_dec", "mV/dec", false, [](Config& c) -> double& { return c.tech.fin_ss_mv_dec; });
    i("word_bits", true, [](Config& c) -> int& { return c.tech.word_bits; });
    // write fet
    d("vth", "V", false, [](Config& c) -> double& { return c.wfet.vth; });
    d("ss_mv_dec", "mV/dec", false, [](Config& c) -> double& { return c.wfet.ss_mv_dec; });
    d("k_drive", "uA/V^2", false, [](Config& c) -> double& { return c.wfet.k_drive; });
    d("r_contact", "kohm", false, [](Config& c) -> double& { return c.wfet.r_contact; });
    // mtj
    d("ra0", "ohm*um^2", false, [](Config& c) -> double& { return c.mtj.ra0; });
    d("lambda_t", "nm", false, [](Config& c) -> double& { return c.mtj.lambda_t; });
    d("tmr", "1", false, [](Config& c) -> double& { return c.mtj.tmr; });
    d("t_ref", "nm", false, [](Config& c) -> double& { return c.mtj.t_ref; });
    // read path
    d("ta_leg_length", "nm", false, [](Config& c) -> double& { return c.rpath.ta_leg_length; });
    d("ta_width", "nm", false, [](Config& c) -> double& { return c.rpath.ta_width; });
    d("ta_thickness", "nm", false, [](Config& c) -> double& { return c.rpath.ta_thickness; });
    d("channel_r_on", "kohm", false, [](Config& c) -> double& { return c.rpath.channel_r_on; });
    // spin
    d("eta", "1", false, [](Config& c) -> double& { return c.spin.eta; });
    d("theta_sh", "1", false, [](Config& c) -> double& { return c.spin.theta_sh; });
    // sim
    d("dt_ps", "ps", true, [](Config& c) -> double& { return c.sim.dt_ps; });
    d("tilt_deg", "deg", true, [](Config& c) -> double& { return c.sim.tilt_deg; });
    d("switch_threshold", "1", true, [](Config& c) -> double& { return c.sim.switch_threshold; });
    d("read_pulse_ns", "ns", true, [](Config& c) -> double& { return c.sim.read_pulse_ns; });
    d("read_settle_ns", "ns", true, [](Config& c) -> double& { return c.sim.read_settle_ns; });
    d("write_pulse_ns", "ns", true, [](Config& c) -> double& { return c.sim.write_pulse_ns; });
    d("write_sim_ns", "ns", true, [](Config& c) -> double& { return c.sim.write_sim_ns; });
    d("icr_tol_ua", "uA", true, [](Config& c) -> double& { return c.sim.icr_tol_ua; });
    d("icr_max_ua", "uA", true, [](Config& c) -> double& { return c.sim.icr_max_ua; });
    d("icr_vsh_target", "uA", true, [](Config& c) -> double& { return c.sim.icr_vsh_target; });
    // array
    i("rows", true, [](Config& c) -> int& { return c.array.rows; });
    i("cols", true, [](Config& c) -> int& { return c.array.cols; });
    i("n_fin_shared", true, [](Config& c) -> int& { return c.array.n_fin_shared; });
    d("csa_latency_ns", "ns", false, [](Config& c) -> double& { return c.array.csa_latency_ns; });
    d("csa_threshold", "1", false, [](Config& c) -> double& { return c.array.csa_threshold; });
    d("csa_bias_ua", "uA", false, [](Config& c) -> double& { return c.array.csa_bias_ua; });
    d("csa_min_diff_ua", "uA", false, [](Config& c) -> double& { return c.array.csa_min_diff_ua; });
    d("driver_r", "kohm", false, [](Config& c) -> double& { return c.array.driver_r; });
    d("c_backgate", "F", false, [](Config& c) -> double& { return c.array.c_backgate; });
    d("c_bl_cell", "F", false, [](Config& c) -> double& { return c.array.c_bl_cell; });
    d("c_col_cell_vsh", "F", false, [](Config& c) -> double& { return c.array.c_col_cell_vsh; });
    d("c_col_cell_eirw", "F", false, [](Config& c) -> double& { return c.array.c_col_cell_eirw; });
    d("c_fin_gate", "F", false, [](Config& c) -> double& { return c.array.c_fin_gate; });
    // layout
    d("fin_pitch", "nm", false, [](Config& c) -> double& { return c.layout.fin_pitch; });
    d("h_D", "1", false, [](Config& c) -> double& { return c.layout.h_D; });
    d("h_MP", "1", false, [](Config& c) -> double& { return c.layout.h_MP; });
    d("h_F", "1", false, [](Config& c) -> double& { return c.layout.h_F; });
    d("w_se_MP", "1", false, [](Config& c) -> double& { return c.layout.w_se_MP; });
    d("w_se_F", "1", false, [](Config& c) -> double& { return c.layout.w_se_F; });
    d("w_se_D", "1", false, [](Config& c) -> double& { return c.layout.w_se_D; });
    d("w_diff_MP", "1", false, [](Config& c) -> double& { return c.layout.w_diff_MP; });
    d("w_diff_F", "1", false, [](Config& c) -> double& { return c.layout.w_diff_F; });
    d("w_diff_D", "1", false, [](Config& c) -> double& { return c.layout.w_diff_D; });
    d("arm_extra_F", "1", false, [](Config& c) -> double& { return c.layout.arm_extra_F; });
    d("strip_fin", "1", false, [](Config& c) -> double& { return c.layout.strip_fin; });
    d("strip_F", "1", false, [](Config& c) -> double& { return c.layout.strip_F; });
    // variation
    d("sigma_Ku", "1", true, [](Config& c) -> double& { return c.var.sigma_Ku; });
    d("sigma_Ms", "1", true, [](Config& c) -> double& { return c.var.sigma_Ms; });
    d("sigma_t", "1", true, [](Config& c) -> double& { return c.var.sigma_t; });
    i("mc_samples", true, [](Config& c) -> int& { return c.var.mc_samples; });
    d("wt_sweep_lo", "uA", true, [](Config& c) -> double& { return c.var.wt_sweep_lo; });
    d("wt_sweep_hi", "uA", true, [](Config& c) -> double& { return c.var.wt_sweep_hi; });
    i("wt_sweep_n", true, [](Config& c) -> int& { return c.var.wt_sweep_n; });
    return r;
}

const std::vector<Key>& registry()
{
    static const std::vector<Key> r = make_registry();
    return r;
}

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string resolve_alias(const Config& c, const std::string& key)
{
    if (key == "diameter" || key == "thickness" || key == "t_MgO" || key == "geometry_factor")
        return c.preset + "." + key;
    return key;
}

const Key* find_key(const std::string& name)
{
    for (auto& k : registry())
        if (k.name == name) return &k;
    return nullptr;
}

bool unit_ok(const std::string& want, const std::string& got)
{
    if (got.empty() || got == want) return true;
    if (want == "1" && (got == "-" || got == "dimensionless")) return true;
    if (want == "emu/cm^3" && got == "emu/cc") return true;
    if (want == "erg/cm^3" && got == "erg/cc") return true;
    return false;
}

double parse_number(const std::string& key, const std::string& v)
{
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (...) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ConfigError("bad numeric value for '" + key + "': " + v);
    if (!std::isfinite(x)) throw ConfigError("non-finite value for '" + key + "'");
    return x;
}

}  // namespace

std::vector<std::string> known_keys()
{
    std::vector<std::string> out;
    for (auto& k : registry()) out.push_back(k.name);
    return out;
}

void apply_preset(Config& c, const std::string& name)
{
    if (name != "vsh" && name != "eirw") throw ConfigError("unknown preset '" + name + "'");
    c.preset = name;
    c.material_cgs = MaterialCgs{};
    c.tech.ta_resistivity = 2000.0;
    c.tech.word_bits = 64;
    c.vsh.geom = {30.0, 1.3};
    c.vsh.t_MgO = 1.2;
    c.eirw.geom = {21.0, 1.3};
    c.eirw.t_MgO = 1.1;
    c.sim = SimParams{};
    c.var = VariationParams{};
    c.array.rows = 256;
    c.array.cols = 256;
    c.array.n_fin_shared = 20;
}

void set_key(Config& c, const std::string& key_in, const std::string& value, const std::string& unit)
{
    std::string key = resolve_alias(c, key_in);
    const Key* k = find_key(key);
    if (!k) throw ConfigError("unknown key '" + key_in + "'");
    if (!unit_ok(k->unit, unit))
        throw ConfigError("unit mismatch for '" + key_in + "': expected " + k->unit + ", got " + unit);
    double x = parse_number(key_in, value);
    if (k->integer) {
        if (std::floor(x) != x) throw ConfigError("'" + key_in + "' must be an integer");
        k->iref(c) = static_cast<int>(x);
    } else {
        k->ref(c) = x;
    }
}

void validate(const Config& c)
{
    auto pos = [](const char* n, double v) {
        if (!(v > 0)) throw ConfigError("invariant violated: " + std::string(n) + " must be > 0");
    };
    auto nonneg = [](const char* n, double v) {
        if (!(v >= 0)) throw ConfigError("invariant violated: " + std::string(n) + " must be >= 0");
    };
    const auto& m = c.material_cgs;
    pos("Ms", m.Ms);
    pos("Ku", m.Ku);
    if (!(m.alpha > 0 && m.alpha < 1)) throw ConfigError("invariant violated: alpha must be in (0,1)");
    pos("gamma", m.gamma);
    nonneg("J_ex", m.J_ex);
    pos("temperature", m.temperature);
    for (Flavor f : {Flavor::VSH, Flavor::EIRW}) {
        const auto& fp = c.flavor(f);
        std::string p = flavor_name(f);
        if (!(fp.geom.diameter > 0)) throw ConfigError("invariant violated: " + p + ".diameter must be > 0");
        if (!(fp.geom.thickness > 0)) throw ConfigError("invariant violated: " + p + ".thickness must be > 0");
        if (!(fp.t_MgO > 0)) throw ConfigError("invariant violated: " + p + ".t_MgO must be > 0");
        if (!(fp.geometry_factor > 0)) throw ConfigError("invariant violated: " + p + ".geometry_factor must be > 0");
    }
    const auto& t = c.tech;
    pos("F", t.F); pos("MP", t.MP); pos("V_DD", t.V_DD); pos("V_READ", t.V_READ);
    pos("wire_r_per_len", t.wire_r_per_len); pos("wire_c_per_len", t.wire_c_per_len);
    pos("fin_drive", t.fin_drive); pos("fet_vth", t.fet_vth); pos("fin_ss_mv_dec", t.fin_ss_mv_dec);
    pos("ta_resistivity", t.ta_resistivity);
    if (t.word_bits < 1) throw ConfigError("invariant violated: word_bits must be >= 1");
    pos("vth", c.wfet.vth); pos("ss_mv_dec", c.wfet.ss_mv_dec); pos("k_drive", c.wfet.k_drive);
    nonneg("r_contact", c.wfet.r_contact);
    pos("ra0", c.mtj.ra0); pos("lambda_t", c.mtj.lambda_t); pos("tmr", c.mtj.tmr); pos("t_ref", c.mtj.t_ref);
    pos("ta_leg_length", c.rpath.ta_leg_length); pos("ta_width", c.rpath.ta_width);
    pos("ta_thickness", c.rpath.ta_thickness); pos("channel_r_on", c.rpath.channel_r_on);
    if (!(c.spin.eta > 0 && c.spin.eta <= 1)) throw ConfigError("invariant violated: eta must be in (0,1]");
    if (!(c.spin.theta_sh > 0 && c.spin.theta_sh <= 1)) throw ConfigError("invariant violated: theta_sh must be in (0,1]");
    pos("dt_ps", c.sim.dt_ps);
    if (c.sim.write_pulse_ns > c.sim.write_sim_ns) throw ConfigError("invariant violated: write_pulse_ns must be <= write_sim_ns");
    if (!(c.sim.switch_threshold > 0 && c.sim.switch_threshold < 1))
        throw ConfigError("invariant violated: switch_threshold must be in (0,1)");
    pos("read_pulse_ns", c.sim.read_pulse_ns); pos("icr_tol_ua", c.sim.icr_tol_ua); pos("icr_max_ua", c.sim.icr_max_ua);
    if (c.array.rows < 1 || c.array.cols < 1) throw ConfigError("invariant violated: rows/cols must be >= 1");
    if (c.array.cols % t.word_bits) throw ConfigError("invariant violated: cols must be divisible by word_bits");
    if (c.array.n_fin_shared < 1) throw ConfigError("invariant violated: n_fin_shared must be >= 1");
    if (!(c.array.csa_threshold > 0 && c.array.csa_threshold < 1))
        throw ConfigError("invariant violated: csa_threshold must be in (0,1)");
    nonneg("csa_latency_ns", c.array.csa_latency_ns); nonneg("csa_bias_ua", c.array.csa_bias_ua);
    nonneg("csa_min_diff_ua", c.array.csa_min_diff_ua); nonneg("driver_r", c.array.driver_r);
    nonneg("c_backgate", c.array.c_backgate); nonneg("c_bl_cell", c.array.c_bl_cell);
    nonneg("c_col_cell_vsh", c.array.c_col_cell_vsh); nonneg("c_col_cell_eirw", c.array.c_col_cell_eirw);
    nonneg("c_fin_gate", c.array.c_fin_gate);
    const auto& L = c.layout;
    pos("fin_pitch", L.fin_pitch);
    for (auto [n, v] : {std::pair{"h_D", L.h_D}, {"h_MP", L.h_MP}, {"h_F", L.h_F}, {"w_se_MP", L.w_se_MP},
                        {"w_se_F", L.w_se_F}, {"w_se_D", L.w_se_D}, {"w_diff_MP", L.w_diff_MP},
                        {"w_diff_F", L.w_diff_F}, {"w_diff_D", L.w_diff_D}, {"arm_extra_F", L.arm_extra_F},
                        {"strip_fin", L.strip_fin}, {"strip_F", L.strip_F}})
        nonneg(n, v);
    nonneg("sigma_Ku", c.var.sigma_Ku); nonneg("sigma_Ms", c.var.sigma_Ms); nonneg("sigma_t", c.var.sigma_t);
    if (c.var.mc_samples < 1) throw ConfigError("invariant violated: mc_samples must be >= 1");
    if (c.var.wt_sweep_n < 2 || !(c.var.wt_sweep_hi > c.var.wt_sweep_lo && c.var.wt_sweep_lo > 0))
        throw ConfigError("invariant violated: wt sweep needs 0 < lo < hi and n >= 2");
}

Config parse_config(const std::string& text, const std::vector<std::string>& overrides, const std::string& origin)
{
    struct Line {
        int no;
        std::string key, value, unit;
    };
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    std::string preset;
    while (std::getline(in, raw)) {
        ++no;
        auto h = raw.find('#');
        if (h != std::string::npos) raw.resize(h);
        std::string s = trim(raw);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(no) + ": expected 'key = value [unit]'");
        Line L{no, trim(s.substr(0, eq)), "", ""};
        std::istringstream rest(trim(s.substr(eq + 1)));
        rest >> L.value;
        std::string u, extra;
        rest >> u >> extra;
        if (!extra.empty())
            throw ConfigError(origin + ":" + std::to_string(no) + ": trailing tokens after unit");
        if (u.size() >= 2 && u.front() == '[' && u.back() == ']') u = u.substr(1, u.size() - 2);
        L.unit = u;
        if (L.key.empty() || L.value.empty())
            throw ConfigError(origin + ":" + std::to_string(no) + ": empty key or value");
        if (L.key == "preset") {
            preset = L.value;
            continue;
        }
        lines.push_back(L);
    }
    Config c;
    try {
        apply_preset(c, preset.empty() ? "eirw" : preset);
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    std::map<std::string, int> seen;
    for (auto& L : lines) {
        try {
            set_key(c, L.key, L.value, L.unit);
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(L.no) + ": " + e.what());
        }
        seen[resolve_alias(c, L.key)] = L.no;
    }
    for (auto& o : overrides) {
        auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("override '" + o + "': expected key=value");
        std::string k = trim(o.substr(0, eq));
        std::string v = trim(o.substr(eq + 1));
        std::string u;
        auto sp = v.find(' ');
        if (sp != std::string::npos) {
            u = trim(v.substr(sp + 1));
            v = v.substr(0, sp);
        }
        if (k == "preset") throw ConfigError("override 'preset' not allowed; set it in the file");
        try {
            set_key(c, k, v, u);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("override: ") + e.what());
        }
        seen[resolve_alias(c, k)] = 0;
    }
    for (auto& k : registry())
        if (!k.from_preset && !seen.count(k.name))
            throw ConfigError(origin + ": missing key '" + k.name + "' (no preset default)");
    validate(c);
    return c;
}

Config load_config(const std::string& path, const std::vector<std::string>& overrides)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), overrides, path);
}

std::string dump_config(const Config& c_in)
{
    Config c = c_in;
    std::ostringstream o;
    o.precision(17);
    o << "preset = " << c.preset << "\n";
    for (auto& k : registry()) {
        o << k.name << " = ";
        if (k.integer) o << k.iref(c);
        else o << k.ref(c);
        o << " " << k.unit << "\n";
    }
    return o.str();
}

}  // namespace vsh
