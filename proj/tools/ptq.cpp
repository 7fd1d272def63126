// ptq: reproduce the coupler figures as CSV data and run parameter sweeps.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ptq/figures.hpp"
#include "ptq/sweep.hpp"
#include "ptq/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw ptq::IoError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    }
}

// Run metadata lives next to the data so the CSV files stay byte-identical
// between runs.
void write_sidecar(const fs::path& dir, const std::string& command, const std::vector<std::string>& written,
                   int argc, char** argv) {
    const fs::path path = dir / fmt::format("{}.run.txt", command);
    std::ofstream out(path);
    if (!out) throw ptq::IoError(fmt::format("cannot open '{}' for writing", path.string()));
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "version=" << ptq::kVersion << '\n' << "generated=" << stamp << '\n' << "command=";
    for (int i = 0; i < argc; ++i) out << (i ? " " : "") << argv[i];
    out << '\n';
#ifdef _OPENMP
    out << "openmp_threads=" << omp_get_max_threads() << '\n';
#endif
    for (const auto& f : written) out << "output=" << f << '\n';
    if (!out) throw ptq::IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Passive PT coupler: classical decay and two-photon survival near the exceptional point"};
    app.set_version_flag("--version", ptq::kVersion);
    app.require_subcommand(1);

    std::string out_dir = ".";
    ptq::FigureOptions opts;
    std::vector<double> gammas, phis, rhos;
    double sigma = 0.0;
    int nsites = 0, points = 0;
    double zmax = 0.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--points", points, "Number of z samples (>= 2)");
        sub->add_option("--zmax", zmax, "Largest propagation distance");
        sub->add_option("--kappa", opts.kappa, "Coupling constant")->capture_default_str();
        sub->add_option("--beta1", opts.beta1, "Propagation constant of W1")->capture_default_str();
        sub->add_option("--beta2", opts.beta2, "Propagation constant of W2")->capture_default_str();
        sub->add_option("--gamma", gammas, "Loss rate(s) of W2");
        sub->add_option("--phi", phis, "Entanglement phase(s) in [0, pi]");
        sub->add_option("--sigma", sigma, "Lattice hopping rate");
        sub->add_option("--rho", rhos, "W2-lattice coupling(s)");
        sub->add_option("--nsites", nsites, "Lattice sites (default: causality bound)");
    };

    auto* fig2 = app.add_subcommand("fig2", "Classical power decay");
    auto* fig3 = app.add_subcommand("fig3", "Indistinguishable two-photon survival");
    auto* fig4 = app.add_subcommand("fig4", "Entangled survival versus z (a) and versus gamma at fixed z0 (b)");
    auto* fig5 = app.add_subcommand("fig5", "Explicit lattice reservoir versus Markovian decay");
    for (auto* sub : {fig2, fig3, fig4, fig5}) add_common(sub);
    fig4->add_option("--z0", opts.z0, "Fixed distance kappa*z0 for panel (b)")->capture_default_str();
    fig4->add_option("--gamma-max", opts.gamma_max, "Largest loss rate for panel (b)")->capture_default_str();
    fig4->add_option("--gamma-points", opts.gamma_points, "Loss samples for panel (b)")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep from a JSON config");
    std::string config_path;
    std::string sweep_name = "sweep.csv";
    sweep->add_option("--config", config_path, "Sweep config file")->required();
    sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sweep->add_option("--name", sweep_name, "Output file name")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    const auto set_if = [](auto& target, const auto& value, bool present) {
        if (present) target = value;
    };

    try {
        std::vector<ptq::OutputFile> files;
        std::string command;
        if (sweep->parsed()) {
            command = "sweep";
            files.push_back({sweep_name, ptq::run_sweep(ptq::load_sweep_config(config_path))});
        } else {
            CLI::App* sub = app.get_subcommands().front();
            command = sub->get_name();
            set_if(opts.gammas, gammas, sub->count("--gamma") > 0);
            set_if(opts.phis, phis, sub->count("--phi") > 0);
            set_if(opts.rhos, rhos, sub->count("--rho") > 0);
            set_if(opts.sigma, sigma, sub->count("--sigma") > 0);
            set_if(opts.nsites, nsites, sub->count("--nsites") > 0);
            set_if(opts.points, points, sub->count("--points") > 0);
            set_if(opts.zmax, zmax, sub->count("--zmax") > 0);
            if (command == "fig2") files = ptq::figure2(opts);
            if (command == "fig3") files = ptq::figure3(opts);
            if (command == "fig4") files = ptq::figure4(opts);
            if (command == "fig5") files = ptq::figure5(opts);
        }

        ensure_directory(out_dir);
        std::vector<std::string> written;
        for (const auto& f : files) {
            const fs::path path = fs::path(out_dir) / f.name;
            ptq::write_csv_file(path.string(), f.table);
            written.push_back(path.string());
            std::cout << path.string() << '\n';
        }
        write_sidecar(out_dir, command, written, argc, argv);
    } catch (const ptq::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ptq::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
