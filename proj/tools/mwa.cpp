#include "mwa/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kNumeric = 3, kData = 4 };

}  // namespace

int main(int argc, char** argv)
{
    using namespace mwa;

    CLI::App app{"Detection statistics for particles crossing a matter-wave aperture"};
    app.require_subcommand(1);

    std::string output;

    // sweep
    cli::SweepConfig sweep_cfg;
    bool linear = false;
    auto* sweep = app.add_subcommand("sweep", "Detection ratio curves, long-format CSV");
    sweep->add_option("--beta-e0", sweep_cfg.beta_e0_list, "beta*E0 values")->delimiter(',');
    sweep->add_option("--t-max", sweep_cfg.t_max, "Largest scaled time")->capture_default_str();
    sweep->add_option("--t-min", sweep_cfg.t_min, "First scaled time on the log axis")
        ->capture_default_str();
    sweep->add_option("--points", sweep_cfg.points, "Grid points per curve")->capture_default_str();
    sweep->add_flag("--linear", linear, "Evenly spaced grid t_max*k/points instead of log spacing");
    sweep->add_option("--workers", sweep_cfg.workers, "Worker threads")->capture_default_str();

    // extrema
    double extrema_beta = 0.0;
    double extrema_tmax = 50.0;
    auto* extrema = app.add_subcommand("extrema", "Valley/peak report as JSON");
    extrema->add_option("--beta-e0", extrema_beta)->required();
    extrema->add_option("--t-max", extrema_tmax)->capture_default_str();

    auto* threshold = app.add_subcommand("threshold", "Onset of the valley/peak structure");

    // density
    ReducedParams density_params;
    int density_points = 400;
    auto* density = app.add_subcommand("density", "Residual-position density, CSV");
    density->add_option("--beta-e0", density_params.beta_e0)->required();
    density->add_option("--t-d", density_params.t_d)->required();
    density->add_option("--points", density_points)->capture_default_str();

    // mc
    cli::McConfig mc_cfg;
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate and residual histogram, JSON");
    mc->add_option("--beta-e0", mc_cfg.params.beta_e0)->required();
    mc->add_option("--t-d", mc_cfg.params.t_d)->required();
    mc->add_option("--n", mc_cfg.n)->capture_default_str();
    mc->add_option("--seed", mc_cfg.seed)->capture_default_str();
    mc->add_option("--stream-id", mc_cfg.stream_id)->capture_default_str();
    mc->add_option("--bins", mc_cfg.bins)->capture_default_str();
    mc->add_option("--workers", mc_cfg.workers)->capture_default_str();

    // fit
    cli::FitConfig fit_cfg;
    std::string fit_input;
    std::string fit_mode = "L-only";
    double mass = 0, wavelength = 0, aperture = 0, temperature = 0;
    auto* fit = app.add_subcommand("fit", "Estimate L (and optionally beta*E0) from measurements");
    fit->add_option("--input", fit_input, "Measurement CSV")->required();
    fit->add_option("--mode", fit_mode, "L-only or L-and-beta")->capture_default_str();
    auto* fit_mass = fit->add_option("--mass", mass, "kg");
    auto* fit_wl = fit->add_option("--wavelength", wavelength, "m");
    auto* fit_ap = fit->add_option("--aperture-radius", aperture, "m");
    auto* fit_temp = fit->add_option("--temperature", temperature, "K");
    fit->add_option("--workers", fit_cfg.workers)->capture_default_str();

    // physical
    PhysicalSetup setup;
    auto* phys = app.add_subcommand("physical", "Derived quantities for an SI setup, JSON");
    phys->add_option("--mass", setup.mass, "kg")->required();
    phys->add_option("--wavelength", setup.wavelength, "m")->required();
    phys->add_option("--aperture-radius", setup.aperture_radius, "m")->required();
    phys->add_option("--length-param", setup.length_param, "m (the unknown L)")->required();
    phys->add_option("--temperature", setup.temperature, "K")->required();
    phys->add_option("--screen-distance", setup.screen_distance, "m")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sweep) {
            sweep_cfg.log_axis = !linear;
            output = cli::sweep(sweep_cfg);
        } else if (*extrema) {
            output = cli::extrema(extrema_beta, extrema_tmax);
        } else if (*threshold) {
            output = cli::threshold();
        } else if (*density) {
            output = cli::density(density_params, density_points);
        } else if (*mc) {
            output = cli::mc(mc_cfg);
        } else if (*fit) {
            fit_cfg.mode = cli::parse_fit_mode(fit_mode);
            if (*fit_mass) fit_cfg.mass = mass;
            if (*fit_wl) fit_cfg.wavelength = wavelength;
            if (*fit_ap) fit_cfg.aperture_radius = aperture;
            if (*fit_temp) fit_cfg.temperature = temperature;
            std::ifstream in(fit_input);
            if (!in)
                throw cli::UsageError("fit: cannot open '" + fit_input + "'");
            output = cli::fit(cli::read_measurements(in), fit_cfg);
        } else if (*phys) {
            output = cli::physical(setup);
        }
    } catch (const cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    }

    std::cout << output;
    return kOk;
}
