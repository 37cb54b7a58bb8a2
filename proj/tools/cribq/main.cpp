#include "commands.hpp"

#include "cribq/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace cribq;

    CLI::App app{"Compression of time-bin qubits by reversible inhomogeneous broadening"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string mode = "fast";
    bool strict = false;
    int threads = 1;

    auto* sim = app.add_subcommand("simulate", "Run one storage and recall sequence");
    sim->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "Output directory (default: [output] path)");

    auto* sw = app.add_subcommand("sweep", "Evaluate metrics over a parameter grid");
    sw->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    sw->add_option("--mode", mode, "fast: closed form only; verify: add simulated values and residuals")
        ->check(CLI::IsMember({"fast", "verify"}));
    sw->add_flag("--strict", strict, "Exit 4 when a verify residual exceeds the tolerance");
    sw->add_option("--out", out_dir, "Output directory (default: [output] path)");
    sw->add_option("--threads", threads, "Worker bound")->check(CLI::PositiveNumber);

    FeasibilityInput feas;
    bool feas_json = false;
    auto* fe = app.add_subcommand("feasibility", "Bandwidth and gain budget of a Stark-broadened line");
    fe->add_option("--linewidth", feas.linewidth_Hz, "Prepared linewidth, Hz")->capture_default_str();
    fe->add_option("--max-broadening", feas.max_broadening_Hz, "Largest usable broadening, Hz")
        ->capture_default_str();
    fe->add_option("--stark", feas.stark_coeff_Hz_per_Vcm, "Stark coefficient, Hz per V/cm")->capture_default_str();
    fe->add_option("--field", feas.field_V_per_cm, "Applied field, V/cm")->capture_default_str();
    fe->add_option("--efficiency", feas.efficiency, "Demonstrated storage efficiency")->capture_default_str();
    fe->add_option("--multiple", feas.multiple, "Narrowest bandwidth in linewidths")->capture_default_str();
    fe->add_flag("--json", feas_json, "Print JSON");

    std::vector<int> only;
    auto* st = app.add_subcommand("selftest", "Run the acceptance criteria");
    st->add_option("--out", out_dir, "Directory for the emitted phase surfaces");
    st->add_option("--only", only, "Criterion numbers to run")->check(CLI::Range(1, 10));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim)
            return tool::simulate(config_path, out_dir);
        if (*sw)
            return tool::sweep(config_path, mode == "verify" ? SweepMode::verify : SweepMode::fast, strict, out_dir,
                               threads);
        if (*fe)
            return tool::feasibility(feas, feas_json);
        return tool::selftest(out_dir, only);
    } catch (const ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << '\n';
        return tool::kExitResolution;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return tool::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
