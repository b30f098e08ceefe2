#include "CLI11.hpp"
#include "vshmem/array.hpp"
#include "vshmem/experiments.hpp"
#include "vshmem/magnet.hpp"

#include <iostream>
#include <omp.h>

int main(int argc, char** argv)
{
    CLI::App app{"VSH / EIRW-VSH MRAM simulator"};
    std::string name, config = VSHMEM_DEFAULT_CONFIG, out = ".";
    std::vector<std::string> sets;
    uint64_t seed = 1;
    int threads = 0;
    vsh::ExperimentSpec spec;

    std::string names;
    for (auto& n : vsh::experiment_names()) names += " " + n;
    app.add_option("experiment", name, "one of:" + names + ", dump-iv, calibrate, dump-config")->required();
    app.add_option("--config", config, "config file");
    app.add_option("--out", out, "output directory");
    app.add_option("--set", sets, "override key=value (repeatable)");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--metrics", spec.metrics_path, "compare: extra absolute metrics CSV");
    app.add_option("--baseline", spec.baseline, "compare: baseline design");
    app.add_option("--sm-baseline", spec.sm_baseline, "compare: sense-margin baseline design");
    CLI11_PARSE(app, argc, argv);

    if (threads > 0) omp_set_num_threads(threads);
    try {
        if (name == "dump-iv") {
            std::cout << vsh::dump_iv(vsh::load_config(config, sets), out).summary;
            return 0;
        }
        if (name == "calibrate") {
            std::cout << vsh::calibrate_report(vsh::load_config(config, sets));
            return 0;
        }
        if (name == "dump-config") {
            std::cout << vsh::dump_config(vsh::load_config(config, sets));
            return 0;
        }
        if (!vsh::is_experiment(name)) {
            std::cerr << "error: unknown experiment '" << name << "'; expected one of:" << names << "\n";
            return 1;
        }
        spec.name = name;
        spec.config_path = config;
        spec.out_dir = out;
        spec.overrides = sets;
        spec.seed = seed;
        auto r = vsh::run_experiment(spec);
        std::cout << r.summary;
        for (auto& f : r.files) std::cout << "wrote " << f << "\n";
        return 0;
    } catch (const vsh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const vsh::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const vsh::IntegrationError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
