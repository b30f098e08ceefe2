#include "vshmem/array.hpp"
#include "vshmem/layout.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vsh {

ArrayConfig make_array(const Config& c, Flavor f, Mode m)
{
    return make_array(c, f, m, c.array.rows, c.array.cols, c.array.n_fin_shared);
}

ArrayConfig make_array(const Config& c, Flavor f, Mode m, int rows, int cols, int n_fin)
{
    if (cols % c.tech.word_bits) throw std::invalid_argument("cols must be divisible by word_bits");
    if (n_fin < 1) throw std::invalid_argument("n_fin_shared must be >= 1");
    ArrayConfig a;
    a.cfg = c;
    a.flavor = f;
    a.mode = m;
    a.rows = rows;
    a.cols = cols;
    a.n_fin = n_fin;
    return a;
}

StarSolution solve_star(const StarNetwork& net, const TechnologyParams& tech, double tol_v)
{
    StarSolution s;
    s.i_branch.assign(net.r_branch.size(), 0.0);
    auto sum_i = [&](double vx) {
        double t = 0;
        for (double r : net.r_branch) t += (net.v_sl - vx) / r * 1e3;
        return t;
    };
    if (!net.shared_fet) {
        for (size_t k = 0; k < net.r_branch.size(); ++k) s.i_branch[k] = net.v_sl / net.r_branch[k] * 1e3;
        return s;
    }
    if (net.v_sl == 0) return s;
    auto f = [&](double vx) { return access_fet_current(net.v_gate, vx, net.n_fin, tech) - sum_i(vx); };
    double lo = std::min(0.0, net.v_sl), hi = std::max(0.0, net.v_sl);
    double flo = f(lo), fhi = f(hi);
    if (!(flo <= 0 && fhi >= 0)) {
        std::ostringstream o;
        o << "read network: no sign change on V_x bracket [" << lo << ", " << hi << "] f=(" << flo << ", " << fhi << ")";
        throw SolverError(o.str());
    }
    int it = 0;
    while (hi - lo > tol_v && it++ < 400) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0) hi = mid;
        else lo = mid;
    }
    if (hi - lo > tol_v) {
        std::ostringstream o;
        o << "read network: bisection did not converge, bracket [" << lo << ", " << hi << "]";
        throw SolverError(o.str());
    }
    s.v_x = 0.5 * (lo + hi);
    for (size_t k = 0; k < net.r_branch.size(); ++k) s.i_branch[k] = (net.v_sl - s.v_x) / net.r_branch[k] * 1e3;
    s.i_fet = access_fet_current(net.v_gate, s.v_x, net.n_fin, tech);
    double tot = 0;
    for (double i : s.i_branch) tot += i;
    s.residual = s.i_fet - tot;
    return s;
}

std::vector<int> pattern_with_ones(int bits, int n_ones)
{
    std::vector<int> p(bits, 0);
    for (int i = 0; i < n_ones && i < bits; ++i) p[i] = 1;
    return p;
}

ReadSolution solve_read_word(const ArrayConfig& ac, const std::vector<int>& pattern)
{
    const Config& c = ac.cfg;
    int bits = ac.word_bits();
    if ((int)pattern.size() != bits) throw std::invalid_argument("pattern length must equal word_bits");
    double rp = branch_resistance(c, ac.flavor, MtjState::P);
    double rap = branch_resistance(c, ac.flavor, MtjState::AP);
    StarNetwork net;
    net.v_sl = c.tech.V_READ;
    net.v_gate = c.tech.V_DD;
    net.n_fin = ac.n_fin;
    net.shared_fet = ac.flavor == Flavor::EIRW;
    ReadSolution r;
    for (int b : pattern) r.n_ones += b ? 1 : 0;
    if (ac.mode == Mode::SingleEnded) {
        for (int b : pattern) net.r_branch.push_back(b ? rp : rap);
        net.r_branch.push_back(rp);   // reference pair
        net.r_branch.push_back(rap);
    } else {
        for (int b : pattern) {
            net.r_branch.push_back(b ? rp : rap);
            net.r_branch.push_back(b ? rap : rp);
        }
    }
    auto s = solve_star(net, c.tech);
    r.v_x = s.v_x;
    r.residual = s.residual;
    for (double i : s.i_branch) r.i_total += i;
    if (ac.mode == Mode::SingleEnded) {
        r.i_p = s.i_branch[bits];
        r.i_ap = s.i_branch[bits + 1];
        r.i_ref = 0.5 * (r.i_p + r.i_ap);
        for (int k = 0; k < bits; ++k) {
            r.i_bit.push_back(s.i_branch[k]);
            r.sm_per_bit.push_back(pattern[k] ? s.i_branch[k] - r.i_ref : r.i_ref - s.i_branch[k]);
        }
    } else {
        for (int k = 0; k < bits; ++k) {
            double a = s.i_branch[2 * k], b = s.i_branch[2 * k + 1];
            r.i_bit.push_back(a);
            r.sm_per_bit.push_back(std::abs(a - b));
            if (pattern[k]) {
                r.i_p = a;
                r.i_ap = b;
            } else {
                r.i_p = b;
                r.i_ap = a;
            }
        }
    }
    return r;
}

double reference_current(const ArrayConfig& ac, int n_ones)
{
    if (ac.mode != Mode::SingleEnded)
        throw std::logic_error("reference_current: differential mode compares SL vs SLB directly");
    return solve_read_word(ac, pattern_with_ones(ac.word_bits(), n_ones)).i_ref;
}

double sense_margin_se(double i_p, double i_ap) { return 0.5 * (i_p - i_ap); }
double sense_margin_diff(double i_p, double i_ap) { return i_p - i_ap; }

double read_disturb_margin(double i_cr, double i_ap)
{
    if (!(i_cr > 0)) throw std::invalid_argument("read_disturb_margin: i_cr must be > 0");
    return (i_cr - i_ap) / i_cr * 100.0;
}

MarginSummary word_margins(const ArrayConfig& ac)
{
    MarginSummary m;
    int bits = ac.word_bits();
    if (ac.mode == Mode::Differential) {
        auto r = solve_read_word(ac, pattern_with_ones(bits, bits / 2));
        m.sm_word = *std::min_element(r.sm_per_bit.begin(), r.sm_per_bit.end());
        m.i_ap_max = r.i_ap;
        return m;
    }
    m.sm_word = INFINITY;
    for (int n = 0; n <= bits; ++n) {
        auto r = solve_read_word(ac, pattern_with_ones(bits, n));
        double sm = std::min(r.i_p - r.i_ref, r.i_ref - r.i_ap);
        for (double s : r.sm_per_bit) sm = std::min(sm, s);
        if (sm < m.sm_word) {
            m.sm_word = sm;
            m.worst_sm_n = n;
        }
        if (r.i_ap > m.i_ap_max) {
            m.i_ap_max = r.i_ap;
            m.worst_rdm_n = n;
        }
    }
    return m;
}

DeviceRead device_read(const Config& c, Flavor f, double v_read)
{
    return {v_read / branch_resistance(c, f, MtjState::P) * 1e3, v_read / branch_resistance(c, f, MtjState::AP) * 1e3};
}

double device_sm(const Config& c, Flavor f, Mode m, double v_read)
{
    auto d = device_read(c, f, v_read);
    return m == Mode::SingleEnded ? sense_margin_se(d.i_p, d.i_ap) : sense_margin_diff(d.i_p, d.i_ap);
}

double iso_rdm_sm(const Config& c, Flavor f, Mode m, double i_cr, double rdm_pct)
{
    double i_ap = (1.0 - rdm_pct / 100.0) * i_cr;
    double v = i_ap * branch_resistance(c, f, MtjState::AP) * 1e-3;
    return device_sm(c, f, m, v);
}

namespace {
double wwl_length(const ArrayConfig& ac)
{
    double w = cell_width(ac.flavor, ac.mode, ac.cfg);
    return ac.cols * w + ac.words_per_row() * strip_width(ac.flavor, ac.n_fin, ac.cfg);
}
double col_length(const ArrayConfig& ac) { return ac.rows * cell_height(ac.flavor, ac.cfg); }
double elmore_ns(double r_drv_kohm, const LineRC& l) { return (r_drv_kohm * 1e3 * l.c + 0.5 * l.r * l.c) * 1e9; }
}  // namespace

LineRC wwl_line(const ArrayConfig& ac)
{
    double len = wwl_length(ac);
    const auto& t = ac.cfg.tech;
    return {t.wire_r_per_len * len, t.wire_c_per_len * len + ac.cols * ac.cfg.array.c_backgate};
}

LineRC bl_line(const ArrayConfig& ac)
{
    double len = col_length(ac);
    const auto& t = ac.cfg.tech;
    return {t.wire_r_per_len * len, t.wire_c_per_len * len + ac.rows * ac.cfg.array.c_bl_cell};
}

LineRC read_column(const ArrayConfig& ac)
{
    double len = col_length(ac);
    const auto& t = ac.cfg.tech;
    double cc = ac.flavor == Flavor::VSH ? ac.cfg.array.c_col_cell_vsh : ac.cfg.array.c_col_cell_eirw;
    return {t.wire_r_per_len * len, t.wire_c_per_len * len + ac.rows * cc};
}

double rwl_cap(const ArrayConfig& ac)
{
    if (ac.flavor == Flavor::VSH) return wwl_line(ac).c;  // read enable is the back-gate line
    return ac.cfg.tech.wire_c_per_len * wwl_length(ac) + ac.words_per_row() * ac.n_fin * ac.cfg.array.c_fin_gate;
}

static void check_address(const ArrayConfig& ac, int row, int word)
{
    if (row < 0 || row >= ac.rows || word < 0 || word >= ac.words_per_row())
        throw std::out_of_range("address out of range");
}

EventMetrics write_event(const ArrayConfig& ac, int row, int word, const DeviceWrite& dev)
{
    check_address(ac, row, word);
    const auto& t = ac.cfg.tech;
    double bits = ac.word_bits();
    LineRC wl = wwl_line(ac), bl = bl_line(ac);
    double t_line = std::max(elmore_ns(ac.cfg.array.driver_r, wl), elmore_ns(ac.cfg.array.driver_r, bl));
    double p = bits * std::abs(dev.i_c) * t.V_DD;  // uA*V -> fJ/ns
    EventMetrics e;
    e.wt.line = t_line;
    e.wt.device = dev.t_switch;
    e.we.device = p * dev.t_switch;
    e.we.line = p * t_line + (wl.c + bits * bl.c) * t.V_DD * t.V_DD * 1e15;
    return e;
}

EventMetrics read_event(const ArrayConfig& ac, int row, int word)
{
    check_address(ac, row, word);
    const auto& c = ac.cfg;
    const auto& t = c.tech;
    int bits = ac.word_bits();
    LineRC col = read_column(ac);
    double r_cell = branch_resistance(c, ac.flavor, MtjState::AP) * 1e3;
    double kappa = -std::log(1.0 - c.array.csa_threshold);
    EventMetrics e;
    e.rt.line = kappa * (0.5 * col.r + r_cell) * col.c * 1e9;
    e.rt.device = c.array.csa_latency_ns;
    auto sol = solve_read_word(ac, pattern_with_ones(bits, bits / 2));
    double n_col = ac.mode == Mode::SingleEnded ? bits + 2 : 2 * bits;
    e.re.device = (t.V_READ * sol.i_total + bits * c.array.csa_bias_ua * t.V_DD) * e.rt.total();
    e.re.line = (n_col * col.c * t.V_READ * t.V_READ + rwl_cap(ac) * t.V_DD * t.V_DD) * 1e15;
    return e;
}

BiasScheme table2_bias(const TechnologyParams& t)
{
    BiasScheme b;
    b.write_acc = {0.0, t.V_DD, 0.0, 0.0, 0.0};
    b.write_unacc = {t.V_DD, t.V_DD, t.V_DD, 0.0, 0.0};
    b.read_acc = {t.V_DD, 0.0, 0.0, t.V_DD, t.V_READ};
    b.read_unacc = {t.V_DD, 0.0, 0.0, 0.0, 0.0};
    return b;
}

BiasReport validate_bias(const ArrayConfig& ac, const BiasScheme& b, bool write_op)
{
    if (ac.flavor != Flavor::EIRW) throw std::invalid_argument("validate_bias: bias table covers the EIRW arrays");
    const Config& c = ac.cfg;
    BiasReport rep;
    const LineBias& acc = write_op ? b.write_acc : b.read_acc;
    const LineBias& un = write_op ? b.write_unacc : b.read_unacc;
    double rap = branch_resistance(c, Flavor::EIRW, MtjState::AP);
    int branches = ac.mode == Mode::SingleEnded ? ac.word_bits() + 2 : 2 * ac.word_bits();
    const double lim = 1e-3;
    // row 0 / word 0 accessed; one unaccessed row and word stand in for the rest
    for (int r = 0; r < 2; ++r) {
        for (int w = 0; w < 2; ++w) {
            const LineBias& row = r == 0 ? acc : un;
            const LineBias& col = w == 0 ? acc : un;
            double bl = col.bl, blb = col.blb;
            if (write_op && w == 0 && r == 0 && b.write_data == 0) std::swap(bl, blb);
            double vs = std::max(bl, blb), vd = std::min(bl, blb);
            double iw = std::abs(wse2_current(row.wwl - vs, vd - vs, c.wfet));

            StarNetwork net;
            net.v_sl = col.sl;
            net.v_gate = row.rwl;
            net.n_fin = ac.n_fin;
            net.r_branch.assign(branches, rap);
            auto s = solve_star(net, c.tech);
            double ir = 0;
            for (double i : s.i_branch) ir = std::max(ir, std::abs(i));

            bool accessed = r == 0 && w == 0;
            std::ostringstream where;
            where << "row " << r << " word " << w;
            if (write_op) {
                if (accessed) rep.accessed_write = iw;
                else {
                    rep.max_write_sneak = std::max(rep.max_write_sneak, iw);
                    if (iw >= lim) rep.violations.push_back("write sneak " + std::to_string(iw) + " uA at " + where.str());
                }
                rep.max_read_sneak = std::max(rep.max_read_sneak, ir);
                if (ir >= lim) rep.violations.push_back("read-branch current " + std::to_string(ir) + " uA during write at " + where.str());
            } else {
                if (accessed) rep.accessed_read = ir;
                else {
                    rep.max_read_sneak = std::max(rep.max_read_sneak, ir);
                    if (ir >= lim) rep.violations.push_back("read sneak " + std::to_string(ir) + " uA at " + where.str());
                }
                rep.max_write_sneak = std::max(rep.max_write_sneak, iw);
                if (iw >= lim) rep.violations.push_back("write-channel current " + std::to_string(iw) + " uA during read at " + where.str());
            }
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace vsh
