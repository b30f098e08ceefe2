#include "vshmem/layout.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace vsh {

double cell_height(Flavor f, const Config& c)
{
    const auto& L = c.layout;
    return L.h_D * c.flavor(f).geom.diameter + L.h_MP * c.tech.MP + L.h_F * c.tech.F;
}

namespace {
double base_width(Flavor f, Mode m, const Config& c)
{
    const auto& L = c.layout;
    double D = c.flavor(f).geom.diameter;
    if (m == Mode::SingleEnded) return L.w_se_MP * c.tech.MP + L.w_se_F * c.tech.F + L.w_se_D * D;
    return L.w_diff_MP * c.tech.MP + L.w_diff_F * c.tech.F + L.w_diff_D * D;
}
int arms(Mode m) { return m == Mode::SingleEnded ? 1 : 2; }
}  // namespace

double cell_width(Flavor f, Mode m, const Config& c)
{
    double w = base_width(f, m, c);
    if (f == Flavor::EIRW) w += arms(m) * c.layout.arm_extra_F * c.tech.F;
    return w;
}

double strip_width(Flavor f, int n_fin, const Config& c)
{
    if (f != Flavor::EIRW || n_fin <= 0) return 0.0;
    return c.layout.strip_fin * n_fin * c.layout.fin_pitch + c.layout.strip_F * c.tech.F;
}

WordArea word_area(Flavor f, Mode m, int n_fin, const Config& c)
{
    WordArea a;
    a.cell_w = cell_width(f, m, c);
    a.cell_h = cell_height(f, c);
    a.strip_w = strip_width(f, n_fin, c);
    a.area_nm2 = a.cell_h * (c.tech.word_bits * a.cell_w + a.strip_w);
    a.area_F2 = a.area_nm2 / (c.tech.F * c.tech.F);
    return a;
}

double area_delta(Mode m, int n_fin, const Config& c)
{
    double av = word_area(Flavor::VSH, m, n_fin, c).area_nm2;
    double ae = word_area(Flavor::EIRW, m, n_fin, c).area_nm2;
    return (ae - av) / av * 100.0;
}

std::vector<AreaTarget> default_area_targets()
{
    return {{Mode::SingleEnded, 20, 0.8}, {Mode::SingleEnded, 50, 12.0},
            {Mode::Differential, 20, -1.0}, {Mode::Differential, 50, 7.0}};
}

LayoutFit fit_layout(const Config& c, const std::vector<AreaTarget>& targets)
{
    // (1 + d/100) * A_vsh = h_e * (bits*(w0 + arms*e*F) + kfin*n*fp + kF*F)
    Eigen::MatrixXd A(targets.size(), 3);
    Eigen::VectorXd b(targets.size());
    double bits = c.tech.word_bits, F = c.tech.F;
    double he = cell_height(Flavor::EIRW, c);
    for (size_t i = 0; i < targets.size(); ++i) {
        const auto& t = targets[i];
        double av = word_area(Flavor::VSH, t.mode, t.n_fin, c).area_nm2;
        double w0 = base_width(Flavor::EIRW, t.mode, c);
        A(i, 0) = he * t.n_fin * c.layout.fin_pitch;
        A(i, 1) = t.n_fin > 0 ? he * F : 0.0;
        A(i, 2) = he * bits * arms(t.mode) * F;
        b(i) = (1 + t.delta_pct / 100.0) * av - he * bits * w0;
    }
    // scale rows by A_vsh so residuals are in relative area
    for (size_t i = 0; i < targets.size(); ++i) {
        double av = word_area(Flavor::VSH, targets[i].mode, targets[i].n_fin, c).area_nm2;
        A.row(i) /= av;
        b(i) /= av;
    }
    Eigen::Vector3d x = A.colPivHouseholderQr().solve(b);
    LayoutFit f{x(0), x(1), x(2), 0};
    Eigen::VectorXd r = (A * x - b) * 100.0;
    f.rms_residual_pct = std::sqrt(r.squaredNorm() / r.size());
    return f;
}

}  // namespace vsh
