#include "doctest.h"
#include "common.hpp"
#include "vshmem/experiments.hpp"
#include "vshmem/study.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vsh;
namespace fs = std::filesystem;

namespace {
std::string slurp(const std::string& p)
{
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}
std::string tmpdir(const std::string& tag)
{
    auto d = fs::temp_directory_path() / ("vshmem_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d.string();
}
int sh(const std::string& args)
{
    std::string cmd = std::string(SIMULATE_BIN) + " " + args + " > /dev/null 2>&1";
    int r = std::system(cmd.c_str());
    return WEXITSTATUS(r);
}
ExperimentSpec spec(const std::string& name, const std::string& out)
{
    ExperimentSpec s;
    s.name = name;
    s.config_path = VSHMEM_DEFAULT_CONFIG;
    s.out_dir = out;
    return s;
}
}  // namespace

TEST_CASE("compare: normalization")
{
    std::vector<CompareInput> in{{"sram", 1, 2, 3, 4, 5, 6}, {"stt", 2, 2, 6, 2, 1, 3}, {"x", 4, 1, 3, 8, 10, 12}};
    auto t = compare_designs(in, "sram", "stt");
    CHECK(t[0].wt == 1);
    CHECK(t[0].area == 1);
    CHECK(t[1].sm == 1);
    CHECK(t[2].wt == 4);
    CHECK(t[2].re == 2);
    CHECK(t[2].sm == 4);
    auto self = compare_designs(in, "x", "x");
    for (double v : {self[2].wt, self[2].we, self[2].rt, self[2].re, self[2].area, self[2].sm}) CHECK(v == 1.0);
    CHECK_THROWS_AS(compare_designs(in, "gsh", "stt"), std::invalid_argument);
}

TEST_CASE("compare: simulated rows and external metrics")
{
    auto d = tmpdir("cmp");
    std::ofstream(d + "/ext.csv") << "design,wt,we,rt,re,area,sm\nsram,1,1,1,1,1,1\n";
    auto s = spec("compare", d);
    s.metrics_path = d + "/ext.csv";
    run_experiment(s);
    auto text = slurp(d + "/compare.csv");
    CHECK(text.rfind("design,wt,we,rt,re,area,sm\n", 0) == 0);
    CHECK(text.find("vsh,1,1,1,1,1,1\n") != std::string::npos);
    CHECK(text.find("\nsram,") != std::string::npos);
    auto rows = read_metrics_csv(d + "/metrics_sim.csv");
    REQUIRE(rows.size() == 2);
}

TEST_CASE("simulated RT ratio stays inside the reduction band at every size")
{
    auto rows = scaling_sweep(default_cfg(), {256, 512, 1024});
    for (auto& r : size_ratios(rows)) {
        CHECK(r.rt >= 0.50);
        CHECK(r.rt <= 0.61);
    }
}

TEST_CASE("every experiment emits its schema")
{
    auto d = tmpdir("schema");
    std::map<std::string, std::string> head{
        {"fig5.csv", "misalign_pct,j_scale,switched,t_switch_ns,t_ratio"},
        {"fig7.csv", "n_ones,i_p,i_ap,i_ref"},
        {"fig8.csv", "n_fin,delta_se_pct,delta_diff_pct"},
        {"fig9.csv", "n_fin,sm_se,sm_diff,rdm_se,rdm_diff"},
        {"fig10.csv", "rows,cols,wt,we,rt,re,flavor,mode"},
        {"fig4_traj.csv", "t_ns,mw_x,mw_y,mw_z,mr_x,mr_y,mr_z"},
    };
    for (auto& n : experiment_names()) {
        auto out = run_experiment(spec(n, d));
        CHECK_FALSE(out.files.empty());
        CHECK_FALSE(out.summary.empty());
    }
    for (auto& [file, h] : head) {
        std::ifstream f(d + "/" + file);
        REQUIRE(f);
        std::string line;
        std::getline(f, line);
        CHECK(line == h);
        size_t cols = std::count(h.begin(), h.end(), ',');
        int n = 0;
        while (std::getline(f, line)) {
            CHECK(std::count(line.begin(), line.end(), ',') == (long)cols);
            ++n;
        }
        CHECK(n > 0);
    }
    // fig9 fin axis, fig10 sizes
    auto f9 = slurp(d + "/fig9.csv");
    for (auto n : {"\n10,", "\n20,", "\n30,", "\n40,", "\n50,"}) CHECK(f9.find(n) != std::string::npos);
    auto f10 = slurp(d + "/fig10.csv");
    for (auto n : {"\n256,256,", "\n512,512,", "\n1024,1024,"}) CHECK(f10.find(n) != std::string::npos);
}

TEST_CASE("deterministic reruns")
{
    auto a = tmpdir("det_a"), b = tmpdir("det_b");
    for (auto n : {"fig5_map", "fig9_margins", "fig10_scaling"}) {
        auto sa = spec(n, a), sb = spec(n, b);
        sa.seed = sb.seed = 17;
        auto fa = run_experiment(sa), fb = run_experiment(sb);
        REQUIRE(fa.files.size() == fb.files.size());
        for (size_t k = 0; k < fa.files.size(); ++k) CHECK(slurp(fa.files[k]) == slurp(fb.files[k]));
    }
}

TEST_CASE("CLI exit codes")
{
    auto d = tmpdir("cli");
    std::string cfg = std::string("--config ") + VSHMEM_DEFAULT_CONFIG + " --out " + d;
    CHECK(sh("fig8_area " + cfg) == 0);
    CHECK(sh("fig99 " + cfg) == 1);
    CHECK(sh("fig8_area " + cfg + " --set nonsense=1") == 1);
    CHECK(sh("fig8_area --config /nonexistent.cfg --out " + d) == 1);
    // tiny write FET: the cell never switches inside the window
    CHECK(sh("fig10_scaling " + cfg + " --set k_drive=1") == 2);
    CHECK(sh("dump-iv " + cfg) == 0);
    CHECK(fs::exists(d + "/iv_write_fet.csv"));
    CHECK(sh("fig7_pattern " + cfg + " --threads 2 --seed 3") == 0);
    CHECK_THROWS_AS(run_experiment(spec("nope", d)), std::invalid_argument);
}
