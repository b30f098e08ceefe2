#pragma once
#include "vshmem/config.hpp"

namespace vsh {

struct WordArea {
    double cell_w = 0, cell_h = 0;   // nm
    double strip_w = 0;              // nm, shared FET strip (EIRW)
    double area_nm2 = 0;
    double area_um2() const { return area_nm2 * 1e-6; }
    double area_F2 = 0;
};

double cell_height(Flavor f, const Config& c);
double cell_width(Flavor f, Mode m, const Config& c);
double strip_width(Flavor f, int n_fin, const Config& c);
WordArea word_area(Flavor f, Mode m, int n_fin, const Config& c);
double area_delta(Mode m, int n_fin, const Config& c);  // EIRW vs VSH, percent

struct AreaTarget {
    Mode mode;
    int n_fin;
    double delta_pct;
};
std::vector<AreaTarget> default_area_targets();

struct LayoutFit {
    double strip_fin = 0, strip_F = 0, arm_extra_F = 0;
    double rms_residual_pct = 0;
};
// linear least squares for (strip_fin, strip_F, arm_extra_F); other coefficients taken from c
LayoutFit fit_layout(const Config& c, const std::vector<AreaTarget>& targets);

}  // namespace vsh
