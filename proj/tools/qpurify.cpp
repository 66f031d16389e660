// qpurify: purify density matrices, synthesize and simulate the preparation
// circuit, and emit Bloch-ball surface data.
//
// Exit status: 0 success, 1 IO/parse error, 2 invalid input, 3 reconstruction
// or comparison failure. Errors go to stderr as one line "<Kind>: <detail>".

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qpurify/bloch.hpp"
#include "qpurify/circuit.hpp"
#include "qpurify/core.hpp"
#include "qpurify/io.hpp"
#include "qpurify/linalg.hpp"
#include "qpurify/purifier.hpp"
#include "qpurify/random.hpp"

using namespace qpurify;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitMismatch = 3;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
            return kExitIo;
        case ErrorKind::ReconstructionFailure:
        case ErrorKind::NoConvergence:
        case ErrorKind::DegenerateBranch:
            return kExitMismatch;
        default:
            return kExitInvalid;
    }
}

void report(const char *label, double value) {
    std::cout << label << " " << format_double(value) << "\n";
}

int fail_mismatch(const std::string &detail) {
    std::cerr << "ReconstructionFailure: " << detail << "\n";
    return kExitMismatch;
}

struct PurifyArgs {
    std::string input;
    std::string method = "cholesky";
    bool reshuffle = false;
    std::string out;
    std::string coeffs;
};

int run_purify(const PurifyArgs &args) {
    ToleranceConfig tol;
    DensityMatrix rho = density_from_json(read_json_file(args.input), tol);

    std::optional<PureState> state;
    if (args.method == "spectral") {
        if (!args.coeffs.empty()) {
            throw Error(ErrorKind::ParseError, "--coeffs needs --method cholesky");
        }
        state = spectral_purify(rho, tol);
    } else if (args.reshuffle) {
        ReshuffledPurification res = reshuffled_purify(rho, tol);
        if (!args.coeffs.empty()) {
            auto j = coefficients_to_json(res.permuted_coefficients);
            j["system_order"] = res.order;
            write_text_file(args.coeffs, canonical_dump(j));
        }
        state = std::move(res.state);
    } else {
        CoefficientMatrix c = cholesky_purify(rho, tol);
        if (!args.coeffs.empty()) {
            write_text_file(args.coeffs, canonical_dump(coefficients_to_json(c)));
        }
        state = coefficients_to_state(c, tol);
    }

    write_text_file(args.out, canonical_dump(state_to_json(*state)));
    VerificationReport rep = verify_purification(*state, rho, tol);
    report("max_abs_error", rep.max_abs_error);
    if (!rep.pass) {
        return fail_mismatch("partial trace deviates from input by " + format_double(rep.max_abs_error));
    }
    return 0;
}

int run_synth(const std::string &input, const std::string &out) {
    ToleranceConfig tol;
    DensityMatrix rho = density_from_json(read_json_file(input), tol);
    CoefficientMatrix c = cholesky_purify(rho, tol);
    CircuitParameters params = extract_parameters(c, tol);
    GateSchedule schedule = schedule_from_parameters(params);

    CircuitFile file{rho.shape().d(), rho.shape().n(), params, schedule};
    write_text_file(out, canonical_dump(circuit_to_json(file)));

    size_t n = rho.dimension();
    PureState prepared = apply_schedule(schedule);
    double deviation = max_abs_diff(prepared.amplitudes(), coefficients_to_state(c, tol).amplitudes());
    VerificationReport rep = verify_purification(prepared, rho, tol);

    std::cout << "parameters " << params.parameter_count() << "\n";
    report("max_deviation", deviation);
    report("max_abs_error", rep.max_abs_error);
    if (params.parameter_count() != n * n - 1) {
        return fail_mismatch("parameter count " + std::to_string(params.parameter_count()) + " != N^2-1");
    }
    if (!rep.pass) {
        return fail_mismatch("circuit output deviates from input by " + format_double(rep.max_abs_error));
    }
    return 0;
}

int run_simulate(const std::string &circuit, const std::string &out, const std::string &expect) {
    ToleranceConfig tol;
    CircuitFile file = circuit_from_json(read_json_file(circuit));
    PureState state = apply_schedule(file.schedule);
    write_text_file(out, canonical_dump(state_to_json(state)));
    // The parameter block and the gate list must describe the same circuit.
    PureState from_params = simulate_circuit(file.parameters, SimulationMode::Product);
    double drift = max_abs_diff(state.amplitudes(), from_params.amplitudes());
    if (!(drift <= tol.recon)) {
        return fail_mismatch("schedule and parameters disagree by " + format_double(drift));
    }
    if (expect.empty()) {
        return 0;
    }
    DensityMatrix rho = density_from_json(read_json_file(expect), tol);
    VerificationReport rep = verify_purification(state, rho, tol);
    report("max_abs_error", rep.max_abs_error);
    if (!rep.pass) {
        return fail_mismatch("simulated state deviates from expected density by " +
                             format_double(rep.max_abs_error));
    }
    return 0;
}

std::pair<size_t, size_t> parse_grid(const std::string &grid) {
    size_t x = grid.find('x');
    try {
        if (x == std::string::npos) {
            throw std::invalid_argument(grid);
        }
        size_t used_t = 0;
        size_t used_p = 0;
        std::string ts = grid.substr(0, x);
        std::string ps = grid.substr(x + 1);
        unsigned long t = std::stoul(ts, &used_t);
        unsigned long p = std::stoul(ps, &used_p);
        if (used_t != ts.size() || used_p != ps.size()) {
            throw std::invalid_argument(grid);
        }
        return {t, p};
    } catch (const std::logic_error &) {
        throw Error(ErrorKind::BadRange, "grid must look like 50x50, got \"" + grid + "\"");
    }
}

int run_bloch(std::optional<double> alpha, std::optional<size_t> alphas, const std::string &grid,
              const std::string &out) {
    auto [n_theta, n_phi] = parse_grid(grid);
    std::vector<double> values;
    if (alpha) {
        values.push_back(*alpha);
    } else {
        size_t k = *alphas;
        if (k == 0) {
            throw Error(ErrorKind::BadRange, "--alphas must be positive");
        }
        for (size_t i = 0; i < k; i++) {
            values.push_back(k == 1 ? 0.0 : (std::numbers::pi / 2) * (static_cast<double>(i) / static_cast<double>(k - 1)));
        }
    }
    std::vector<BlochSample> samples;
    for (double a : values) {
        auto surface = bloch_surface(a, n_theta, n_phi);
        samples.insert(samples.end(), surface.begin(), surface.end());
    }
    write_text_file(out, bloch_csv(samples));
    std::cout << "rows " << samples.size() << "\n";
    return 0;
}

int run_random(size_t d, size_t n, uint64_t seed, std::optional<size_t> rank, const std::string &out) {
    DensityMatrix rho = random_density(QuditShape(d, n), seed, rank);
    write_text_file(out, canonical_dump(density_to_json(rho)));
    report("purity", purity(rho.matrix()));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Triangular purification of qudit density matrices"};
    app.require_subcommand(1);

    PurifyArgs purify;
    auto *purify_cmd = app.add_subcommand("purify", "Purify a density matrix and verify by partial trace");
    purify_cmd->add_option("--input", purify.input, "density matrix JSON")->required();
    purify_cmd->add_option("--method", purify.method)->check(CLI::IsMember({"cholesky", "spectral"}));
    purify_cmd->add_flag("--reshuffle", purify.reshuffle, "sort the basis by diagonal before eliminating");
    purify_cmd->add_option("--out", purify.out, "pure state JSON")->required();
    purify_cmd->add_option("--coeffs", purify.coeffs, "coefficient matrix JSON");

    std::string synth_in;
    std::string synth_out;
    auto *synth_cmd = app.add_subcommand("synth", "Synthesize the preparation circuit");
    synth_cmd->add_option("--input", synth_in)->required();
    synth_cmd->add_option("--out", synth_out)->required();

    std::string sim_circuit;
    std::string sim_out;
    std::string sim_expect;
    auto *sim_cmd = app.add_subcommand("simulate", "Run a circuit file from |0>|0>");
    sim_cmd->add_option("--circuit", sim_circuit)->required();
    sim_cmd->add_option("--out", sim_out)->required();
    sim_cmd->add_option("--expect", sim_expect, "density matrix the output must purify");

    std::optional<double> bloch_alpha;
    std::optional<size_t> bloch_alphas;
    std::string bloch_grid = "50x50";
    std::string bloch_out;
    auto *bloch_cmd = app.add_subcommand("bloch", "Emit Bloch-ball surface points as CSV");
    auto *alpha_opt = bloch_cmd->add_option("--alpha", bloch_alpha, "single mixing angle");
    auto *alphas_opt = bloch_cmd->add_option("--alphas", bloch_alphas, "evenly spaced angles over [0, pi/2]");
    alpha_opt->excludes(alphas_opt);
    bloch_cmd->add_option("--grid", bloch_grid, "THETAxPHI sample counts");
    bloch_cmd->add_option("--out", bloch_out)->required();

    size_t rnd_d = 2;
    size_t rnd_n = 1;
    uint64_t rnd_seed = 0;
    std::optional<size_t> rnd_rank;
    std::string rnd_out;
    auto *random_cmd = app.add_subcommand("random", "Draw a seeded random density matrix");
    random_cmd->add_option("--d", rnd_d)->required();
    random_cmd->add_option("--n", rnd_n)->required();
    random_cmd->add_option("--seed", rnd_seed)->required();
    random_cmd->add_option("--rank", rnd_rank);
    random_cmd->add_option("--out", rnd_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitIo;
    }

    try {
        if (*purify_cmd) {
            return run_purify(purify);
        }
        if (*synth_cmd) {
            return run_synth(synth_in, synth_out);
        }
        if (*sim_cmd) {
            return run_simulate(sim_circuit, sim_out, sim_expect);
        }
        if (*bloch_cmd) {
            if (!bloch_alpha && !bloch_alphas) {
                throw Error(ErrorKind::BadRange, "one of --alpha or --alphas is required");
            }
            return run_bloch(bloch_alpha, bloch_alphas, bloch_grid, bloch_out);
        }
        if (*random_cmd) {
            return run_random(rnd_d, rnd_n, rnd_seed, rnd_rank, rnd_out);
        }
    } catch (const Error &e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "Error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitIo;
}
