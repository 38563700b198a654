#include "cca/scenario.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cca/chain.hpp"
#include "cca/dynamics.hpp"
#include "cca/effective.hpp"
#include "cca/errors.hpp"
#include "cca/gate_analysis.hpp"
#include "cca/io.hpp"

namespace cca {

namespace {

using nlohmann::json;

const std::set<std::string> kScenarios = {"spectrum", "identities", "evolve", "gate-fidelity",
                                          "tomography"};

std::string scenario_list() {
    std::string out;
    for (const auto& s : kScenarios) out += (out.empty() ? "" : ", ") + s;
    return out;
}

}  // namespace

std::vector<std::string> ScenarioConfig::validate() const {
    std::vector<std::string> errors;
    if (!kScenarios.count(scenario)) {
        errors.push_back("scenario: unknown name '" + scenario + "' (valid: " + scenario_list() +
                         ")");
    }
    if (m < 2) errors.push_back("m: must be >= 2");
    if (m_max < 2) errors.push_back("m_max: must be >= 2");
    if (j <= 0.0) errors.push_back("j: must be > 0");
    if (steps < 1) errors.push_back("steps: must be >= 1");
    if (n < 1) errors.push_back("n: must be >= 1");
    if (g <= 0.0) errors.push_back("g: must be > 0");
    if (kappa < 0.0) errors.push_back("kappa: must be >= 0");
    if (gamma < 0.0) errors.push_back("gamma: must be >= 0");
    if (hz_reference < 0.0) errors.push_back("hz_reference: must be >= 0");
    if (samples < 2) errors.push_back("samples: must be >= 2");
    if (t_max_t_units <= 0.0) errors.push_back("t_max_t_units: must be > 0");
    if (out_dir.empty()) errors.push_back("out_dir: must not be empty");
    const bool needs_gate = scenario == "evolve" || scenario == "gate-fidelity" ||
                            scenario == "tomography";
    if (needs_gate) {
        if (delta == 0.0) errors.push_back("delta: must be nonzero for gate scenarios");
        if (omega == 0.0) errors.push_back("omega: must be nonzero for gate scenarios");
        if (n % 2 == 0 && std::abs(delta * delta - j * j) < 1e-10) {
            errors.push_back("delta: |delta^2 - j^2| < 1e-10 is resonant for even n");
        }
    }
    return errors;
}

double ScenarioConfig::kappa_in_j() const {
    return hz_reference > 0.0 ? kappa / hz_reference : kappa;
}

double ScenarioConfig::gamma_in_j() const {
    return hz_reference > 0.0 ? gamma / hz_reference : gamma;
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("config: not valid JSON: ") + e.what());
    }
    if (!parsed.is_object()) throw ConfigInvalid("config: top level must be an object");

    std::vector<std::string> errors;
    auto take_number = [&](const char* key, auto& field) {
        if (!parsed.contains(key)) return;
        const auto& v = parsed.at(key);
        if (!v.is_number()) {
            errors.push_back(std::string(key) + ": expected a number");
            return;
        }
        field = v.get<std::remove_reference_t<decltype(field)>>();
        parsed.erase(key);
    };
    auto take_bool = [&](const char* key, bool& field) {
        if (!parsed.contains(key)) return;
        const auto& v = parsed.at(key);
        if (!v.is_boolean()) {
            errors.push_back(std::string(key) + ": expected a boolean");
            return;
        }
        field = v.get<bool>();
        parsed.erase(key);
    };
    auto take_string = [&](const char* key, std::string& field) {
        if (!parsed.contains(key)) return;
        const auto& v = parsed.at(key);
        if (!v.is_string()) {
            errors.push_back(std::string(key) + ": expected a string");
            return;
        }
        field = v.get<std::string>();
        parsed.erase(key);
    };

    take_string("scenario", config.scenario);
    take_number("m", config.m);
    take_number("m_max", config.m_max);
    take_number("j", config.j);
    take_number("delta_min", config.delta_min);
    take_number("delta_max", config.delta_max);
    take_number("steps", config.steps);
    take_number("n", config.n);
    take_number("g", config.g);
    take_number("delta", config.delta);
    take_number("omega", config.omega);
    take_bool("open", config.open_system);
    take_number("kappa", config.kappa);
    take_number("gamma", config.gamma);
    take_number("hz_reference", config.hz_reference);
    take_number("t_max_t_units", config.t_max_t_units);
    take_number("samples", config.samples);
    take_number("t", config.gate_t);
    take_string("out_dir", config.out_dir);
    if (parsed.contains("deltas")) {
        const auto& v = parsed.at("deltas");
        if (v.is_array()) {
            for (const auto& x : v) {
                if (!x.is_number()) {
                    errors.push_back("deltas: array entries must be numbers");
                    break;
                }
                config.deltas.push_back(x.get<double>());
            }
        } else if (v.is_string()) {
            std::istringstream ss(v.get<std::string>());
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    config.deltas.push_back(std::stod(tok));
                } catch (...) {
                    errors.push_back("deltas: cannot parse '" + tok + "' as a number");
                }
            }
        } else {
            errors.push_back("deltas: expected array or comma-separated string");
        }
        parsed.erase("deltas");
    }
    for (auto it = parsed.begin(); it != parsed.end(); ++it) {
        errors.push_back(it.key() + ": unknown key");
    }
    for (const auto& e : config.validate()) errors.push_back(e);
    if (!errors.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw ConfigInvalid(msg);
    }
    return config;
}

ModelParams resolve_gate_params(const ScenarioConfig& config) {
    ModelParams params;
    params.n_cavities = config.n;
    params.g = config.g;
    params.j = config.j;
    params.delta = config.delta;
    params.omega1 = config.omega;
    params.omega2 = config.omega;
    params.kappa = config.kappa_in_j();
    params.gamma = config.gamma_in_j();
    // Choose the drive signs so the induced cross coupling carries the sign
    // the sqrt(swap) target needs.
    if (build_effective(params).coupling * params.delta > 0.0) params.omega1 = -params.omega1;
    return params;
}

namespace {

struct Manifest {
    json resolved;
    json timings = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void mark(const std::string& phase) {
        const auto now = std::chrono::steady_clock::now();
        timings[phase] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now - start).count();
        start = now;
    }
};

json resolved_json(const ScenarioConfig& c) {
    json out;
    out["scenario"] = c.scenario;
    out["m"] = c.m;
    out["m_max"] = c.m_max;
    out["j"] = c.j;
    out["delta_min"] = c.delta_min;
    out["delta_max"] = c.delta_max;
    out["steps"] = c.steps;
    out["deltas"] = c.deltas;
    out["n"] = c.n;
    out["g"] = c.g;
    out["delta"] = c.delta;
    out["omega"] = c.omega;
    out["open"] = c.open_system;
    out["kappa"] = c.kappa_in_j();
    out["gamma"] = c.gamma_in_j();
    out["t_max_t_units"] = c.t_max_t_units;
    out["samples"] = c.samples;
    out["t"] = c.gate_t;
    out["out_dir"] = c.out_dir;
    return out;
}

std::vector<double> delta_grid(const ScenarioConfig& c) {
    if (!c.deltas.empty()) return c.deltas;
    std::vector<double> grid;
    grid.reserve(c.steps + 1);
    for (int i = 0; i <= c.steps; ++i) {
        grid.push_back(c.delta_min + (c.delta_max - c.delta_min) * i / double(c.steps));
    }
    return grid;
}

Eigen::VectorXcd embedded_vector(const SectorBasis& basis, const std::string& label) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.dimension());
    v(basis.index_of(embed_computational_state(label, basis.n_cavities).state)) = 1.0;
    return v;
}

Eigen::VectorXcd entangled_target(const SectorBasis& basis) {
    return Complex(0.5, 0.5) * embedded_vector(basis, "01") +
           Complex(0.5, -0.5) * embedded_vector(basis, "10");
}

void run_spectrum(const ScenarioConfig& c, Manifest& manifest) {
    const auto rows = dispersion_scan(c.m, c.j, delta_grid(c));
    manifest.mark("diagonalize_ms");
    std::ostringstream csv;
    csv << "delta";
    for (int k = 1; k <= c.m; ++k) csv << ",E" << k;
    csv << "\n";
    for (const auto& row : rows) {
        csv << format_double(row.delta);
        for (int k = 0; k < c.m; ++k) csv << ',' << format_double(row.energies(k));
        csv << "\n";
    }
    write_atomic(std::filesystem::path(c.out_dir) / "spectrum.csv", csv.str());
    manifest.mark("write_ms");
}

int run_identities(const ScenarioConfig& c, Manifest& manifest) {
    const std::vector<double> deltas =
        c.deltas.empty() ? std::vector<double>{0.5, 1.0, 2.0, 5.0, 10.0} : c.deltas;
    std::ostringstream csv;
    csv << "m,delta,s_cross,s_local_1,s_local_M,closed_cross,closed_local,residual_cross,"
           "residual_local,status\n";
    bool all_pass = true;
    for (int m = 3; m <= c.m_max; ++m) {
        for (double delta : deltas) {
            csv << m << ',' << format_double(delta) << ',';
            if (m % 2 == 0 && std::abs(delta * delta - c.j * c.j) < 1e-10) {
                csv << ",,,,,,,resonant\n";
                continue;
            }
            const ChainSpec chain{m, c.j, delta, delta};
            CouplingSums sums;
            try {
                sums = coupling_sums(direct_diagonalize(chain));
            } catch (const ZeroEigenvalue&) {
                csv << ",,,,,,,zero-eigenvalue\n";
                continue;
            }
            const CouplingSums closed = closed_form_sums(m, c.j, delta);
            const double res_cross = std::abs(sums.cross - closed.cross);
            const double res_local = std::max(std::abs(sums.local_1 - closed.local_1),
                                              std::abs(sums.local_m - closed.local_m));
            const bool pass = res_cross < 1e-10 && res_local < 1e-10;
            all_pass = all_pass && pass;
            csv << format_double(sums.cross) << ',' << format_double(sums.local_1) << ','
                << format_double(sums.local_m) << ',' << format_double(closed.cross) << ','
                << format_double(closed.local_1) << ',' << format_double(res_cross) << ','
                << format_double(res_local) << ',' << (pass ? "pass" : "fail") << "\n";
        }
    }
    manifest.mark("identities_ms");
    write_atomic(std::filesystem::path(c.out_dir) / "identities.csv", csv.str());
    manifest.mark("write_ms");
    return all_pass ? 0 : 3;
}

void run_evolve(const ScenarioConfig& c, Manifest& manifest) {
    const ModelParams params = resolve_gate_params(c);
    const double t_gate = gate_time(params);
    const SectorBasis basis = enumerate_sector(c.n, 1);
    const UnitaryPropagator prop(build_hamiltonian(params, basis));
    manifest.mark("setup_ms");
    const Eigen::VectorXcd psi0 = embedded_vector(basis, "01");
    const Eigen::VectorXcd target = entangled_target(basis);
    std::ostringstream csv;
    csv << "t_over_T,t,fidelity\n";
    for (int i = 0; i < c.samples; ++i) {
        const double frac = c.t_max_t_units * i / double(c.samples - 1);
        const double t = frac * t_gate;
        const double fid = state_fidelity(prop.evolve(psi0, t), target);
        csv << format_double(frac) << ',' << format_double(t) << ',' << format_double(fid)
            << "\n";
    }
    manifest.mark("evolve_ms");
    write_atomic(std::filesystem::path(c.out_dir) / "evolve.csv", csv.str());
    manifest.mark("write_ms");
}

void run_gate_fidelity(const ScenarioConfig& c, Manifest& manifest) {
    const ModelParams params = resolve_gate_params(c);
    const double t_gate = gate_time(params);
    const Eigen::Matrix4cd ideal = ideal_sqrt_swap();
    std::vector<double> times;
    for (int i = 1; i < c.samples; ++i) {
        times.push_back(c.t_max_t_units * t_gate * i / double(c.samples - 1));
    }
    std::vector<double> fidelities;
    const bool open = c.open_system && (params.kappa > 0.0 || params.gamma > 0.0);
    if (!open) {
        for (double t : times) {
            fidelities.push_back(average_fidelity(reconstruct_channel(params, t, false), ideal));
        }
    } else {
        // One master-equation trajectory per operator-basis input, sampled at
        // every output time.
        const FullBasis basis = make_full_basis(c.n);
        const int d = basis.dimension();
        static const char* labels[] = {"00", "01", "10", "11"};
        std::array<int, 4> comp;
        for (int i = 0; i < 4; ++i) {
            const EmbeddedState e = embed_computational_state(labels[i], c.n);
            comp[i] = basis.index_of(e.sector, e.state);
        }
        std::vector<GateChannel> channels(times.size());
        for (int k = 0; k < 4; ++k) {
            for (int l = 0; l < 4; ++l) {
                Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(d, d);
                rho0(comp[k], comp[l]) = 1.0;
                const auto states = evolve_lindblad_samples(params, rho0, times);
                for (size_t s = 0; s < times.size(); ++s) {
                    for (int i = 0; i < 4; ++i) {
                        for (int p = 0; p < 4; ++p) {
                            channels[s].super(4 * i + p, 4 * k + l) =
                                states[s](comp[i], comp[p]);
                        }
                    }
                }
            }
        }
        for (const auto& ch : channels) fidelities.push_back(average_fidelity(ch, ideal));
    }
    manifest.mark("channels_ms");
    std::ostringstream csv;
    csv << "t_over_T,t,avg_fidelity\n";
    for (size_t i = 0; i < times.size(); ++i) {
        csv << format_double(times[i] / t_gate) << ',' << format_double(times[i]) << ','
            << format_double(fidelities[i]) << "\n";
    }
    write_atomic(std::filesystem::path(c.out_dir) / "gate_fidelity.csv", csv.str());

    const GateChannel at_gate = reconstruct_channel(params, t_gate, open);
    json report;
    report["params"] = resolved_json(c);
    report["t"] = t_gate;
    report["avg_fidelity"] = average_fidelity(at_gate, ideal);
    report["leakage"] = at_gate.leakage();
    write_atomic(std::filesystem::path(c.out_dir) / "report.json", report.dump(2) + "\n");
    manifest.mark("write_ms");
}

void run_tomography(const ScenarioConfig& c, Manifest& manifest) {
    const ModelParams params = resolve_gate_params(c);
    const double t = c.gate_t > 0.0 ? c.gate_t : gate_time(params);
    const bool open = params.kappa > 0.0 || params.gamma > 0.0;
    const GateChannel channel = reconstruct_channel(params, t, open);
    manifest.mark("channel_ms");
    const ChiMatrix chi = chi_tomography(channel);
    const ChiMatrix chi_ideal = chi_tomography(unitary_channel(ideal_sqrt_swap()));
    const double overlap = chi_overlap(chi, chi_ideal);
    const double fidelity = average_fidelity(channel, ideal_sqrt_swap());
    manifest.mark("tomography_ms");

    auto chi_csv = [&](bool real_part) {
        std::ostringstream csv;
        csv << "basis";
        for (int n = 0; n < 16; ++n) csv << ',' << pauli_label(n);
        csv << "\n";
        for (int m = 0; m < 16; ++m) {
            csv << pauli_label(m);
            for (int n = 0; n < 16; ++n) {
                const Complex v = chi.coeff(m, n);
                csv << ',' << format_double(real_part ? v.real() : v.imag());
            }
            csv << "\n";
        }
        return csv.str();
    };
    write_atomic(std::filesystem::path(c.out_dir) / "chi_real.csv", chi_csv(true));
    write_atomic(std::filesystem::path(c.out_dir) / "chi_imag.csv", chi_csv(false));

    json report;
    report["params"] = resolved_json(c);
    report["t"] = t;
    report["avg_fidelity"] = fidelity;
    report["chi_overlap"] = overlap;
    report["leakage"] = channel.leakage();
    write_atomic(std::filesystem::path(c.out_dir) / "report.json", report.dump(2) + "\n");
    manifest.mark("write_ms");
}

}  // namespace

int run_scenario(const ScenarioConfig& config) {
    const auto errors = config.validate();
    if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
        return 2;
    }
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    Manifest manifest;
    manifest.resolved = resolved_json(config);
    int status = 0;
    try {
        if (config.scenario == "spectrum") {
            run_spectrum(config, manifest);
        } else if (config.scenario == "identities") {
            status = run_identities(config, manifest);
        } else if (config.scenario == "evolve") {
            run_evolve(config, manifest);
        } else if (config.scenario == "gate-fidelity") {
            run_gate_fidelity(config, manifest);
        } else if (config.scenario == "tomography") {
            run_tomography(config, manifest);
        }
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    json run;
    run["scenario"] = config.scenario;
    run["resolved"] = manifest.resolved;
    run["version"] = "1.0.0";
    run["timings_ms"] = manifest.timings;
    write_atomic(std::filesystem::path(config.out_dir) / "run.json", run.dump(2) + "\n");
    return status;
}

}  // namespace cca
