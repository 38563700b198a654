#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cca/errors.hpp"
#include "cca/scenario.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    bool seedless = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file; flags override its values");
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_flag("--seedless", flags.seedless,
                  "Reserved: the simulator uses no randomness anywhere")
        ->disable_flag_override();
}

cca::ScenarioConfig load_base(const CommonFlags& flags, const std::string& scenario) {
    cca::ScenarioConfig config;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw cca::ConfigInvalid("config: cannot open " + flags.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        config = cca::parse_config(text.str());
        if (!config.scenario.empty() && config.scenario != scenario) {
            throw cca::ConfigInvalid("config: file names scenario '" + config.scenario +
                                     "' but the '" + scenario + "' subcommand was invoked");
        }
    }
    config.scenario = scenario;
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    return config;
}

int finish(const cca::ScenarioConfig& config) {
    const auto errors = config.validate();
    if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
        return 2;
    }
    return cca::run_scenario(config);
}

}  // namespace

int main(int argc, char** argv) {
    // The flag is reserved (no RNG anywhere) and must stay value-free; CLI11's
    // disable_flag_override still lets the implied value through.
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]).rfind("--seedless=", 0) == 0) {
            std::cerr << "--seedless does not take a value\n";
            return 2;
        }
    }

    CLI::App app{"Coupled-cavity array sqrt(swap) gate simulator"};
    app.require_subcommand(1);

    CommonFlags flags;
    cca::ScenarioConfig cli;  // flag values land here; merged over the file config

    auto* spectrum = app.add_subcommand("spectrum", "Impurity-chain spectrum vs boundary defect");
    add_common(spectrum, flags);
    spectrum->add_option("--m", cli.m, "Chain length");
    spectrum->add_option("--delta-min", cli.delta_min, "Smallest impurity");
    spectrum->add_option("--delta-max", cli.delta_max, "Largest impurity");
    spectrum->add_option("--steps", cli.steps, "Grid intervals");
    std::vector<double> delta_list;
    spectrum->add_option("--delta", delta_list, "Explicit impurity values")->delimiter(',');

    auto* identities = app.add_subcommand("identities", "End-site coupling-sum identity table");
    add_common(identities, flags);
    identities->add_option("--m-max", cli.m_max, "Largest chain length");
    identities->add_option("--delta", delta_list, "Impurity values")->delimiter(',');

    auto* evolve = app.add_subcommand("evolve", "Entangling-evolution fidelity curve");
    auto* gate = app.add_subcommand("gate-fidelity", "Average gate fidelity curve and report");
    auto* tomo = app.add_subcommand("tomography", "Process-matrix reconstruction at the gate time");

    for (auto* cmd : {evolve, gate, tomo}) {
        add_common(cmd, flags);
        cmd->add_option("--n", cli.n, "Cavity count");
        cmd->add_option("--g", cli.g, "Atom-cavity coupling, units of J");
        cmd->add_option("--delta", cli.delta, "One-photon detuning, units of J");
        cmd->add_option("--omega", cli.omega, "Drive strength, units of J");
        cmd->add_option("--kappa", cli.kappa, "Cavity decay rate");
        cmd->add_option("--gamma", cli.gamma, "Atomic decay rate");
        cmd->add_option("--hz-reference", cli.hz_reference,
                        "Interpret kappa/gamma in Hz, divided by this value");
        cmd->add_option("--t-max", cli.t_max_t_units, "Horizon in gate-time units");
        cmd->add_option("--samples", cli.samples, "Output samples");
        if (cmd != tomo) cmd->add_flag("--open", cli.open_system, "Master-equation evolution");
        if (cmd == tomo) cmd->add_option("--t", cli.gate_t, "Time (default: gate time)");
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    try {
        cca::ScenarioConfig config = load_base(flags, sub->get_name());
        // A flag only overrides the config file when it was given on the
        // command line; each subcommand binds its own options to `cli`.
        auto merge = [&](const std::string& name, auto member) {
            const CLI::Option* opt = sub->get_option_no_throw(name);
            if (opt != nullptr && opt->count() > 0) config.*member = cli.*member;
        };
        merge("--m", &cca::ScenarioConfig::m);
        merge("--delta-min", &cca::ScenarioConfig::delta_min);
        merge("--delta-max", &cca::ScenarioConfig::delta_max);
        merge("--steps", &cca::ScenarioConfig::steps);
        merge("--m-max", &cca::ScenarioConfig::m_max);
        merge("--n", &cca::ScenarioConfig::n);
        merge("--g", &cca::ScenarioConfig::g);
        merge("--omega", &cca::ScenarioConfig::omega);
        merge("--open", &cca::ScenarioConfig::open_system);
        merge("--kappa", &cca::ScenarioConfig::kappa);
        merge("--gamma", &cca::ScenarioConfig::gamma);
        merge("--hz-reference", &cca::ScenarioConfig::hz_reference);
        merge("--t-max", &cca::ScenarioConfig::t_max_t_units);
        merge("--samples", &cca::ScenarioConfig::samples);
        merge("--t", &cca::ScenarioConfig::gate_t);
        const CLI::Option* opt_dv = sub->get_option_no_throw("--delta");
        if (opt_dv != nullptr && opt_dv->count() > 0) {
            if (sub == spectrum || sub == identities) {
                config.deltas = delta_list;
            } else {
                config.delta = cli.delta;
            }
        }
        return finish(config);
    } catch (const cca::ConfigInvalid& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const cca::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
