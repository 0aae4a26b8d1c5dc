/** \file
 * Command-line front end: synth / random / verify / simulate.
 *
 * Exit codes: 0 success or pass, 1 verification failure (including a
 * non-unitary input matrix), 2 input format error, 3 dimension or
 * precondition error.
 */
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "trisynth/circuit.hpp"
#include "trisynth/io.hpp"
#include "trisynth/matrix.hpp"
#include "trisynth/synthesis.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitFormat = 2;
constexpr int kExitDimension = 3;

double default_tolerance(trisynth::Index dim, std::size_t gate_count) {
    return 1e-9 * static_cast<double>(dim) * static_cast<double>(std::max<std::size_t>(1, gate_count));
}

void print_counts(const trisynth::GateCounts& counts) {
    std::cout << "single: " << counts.single_qutrit << ", ms: " << counts.ms_controlled
              << ", ucg: " << counts.ucg << ", ucr: " << counts.ucr
              << ", shift: " << counts.shift << ", rotation: " << counts.rotation << "\n";
}

void emit(const std::string& out_path, const std::string& contents) {
    if (out_path.empty()) {
        std::cout << contents;
    } else {
        trisynth::write_file(out_path, contents);
    }
}

struct SynthArgs {
    std::string input;
    std::string level = "structured";
    std::string out;
    bool do_verify = false;
    double tol = 0.0;
    bool counts = false;
    bool optimize = false;
    bool seedless_deterministic = false;
};

int cmd_synth(const SynthArgs& args) {
    const trisynth::UnitaryFile file = trisynth::read_unitary_json(trisynth::read_file(args.input));

    trisynth::Circuit circuit = trisynth::synthesize_structured(file.matrix);
    if (args.level == "elementary") {
        trisynth::SynthesisOptions opts;
        opts.skip_identity_blocks = args.optimize;
        trisynth::LowerReport report;
        circuit = trisynth::lower_circuit(circuit, trisynth::LoweringLevel::elementary, opts,
                                          &report);
        if (report.multi_control_retained > 0) {
            std::cerr << report.multi_control_retained
                      << " gates with 2 or more controls have no elementary expansion and were "
                         "kept structured\n";
        }
    }

    emit(args.out, trisynth::serialize(circuit));

    if (args.counts) {
        print_counts(trisynth::gate_counts(circuit));
    }

    if (args.do_verify) {
        const double tol = args.tol > 0.0
                               ? args.tol
                               : default_tolerance(file.matrix.rows(), circuit.gates.size());
        const trisynth::VerifyReport report = trisynth::verify(circuit, file.matrix, tol);
        std::cout << "residual: " << report.residual << "\n"
                  << "verification: " << (report.pass ? "PASS" : "FAIL") << " (tol " << tol
                  << ")\n";
        if (!report.pass) return kExitVerifyFail;
    }
    return kExitPass;
}

int cmd_random(unsigned qutrits, std::uint64_t seed, const std::string& out) {
    if (qutrits < 1) {
        throw trisynth::DimensionError("random: --qutrits must be at least 1");
    }
    if (qutrits > 12) {
        throw trisynth::DimensionError("random: --qutrits larger than 12 is not supported");
    }
    const trisynth::CMatrix m = trisynth::haar_random_unitary(trisynth::pow3(qutrits), seed);
    emit(out, trisynth::write_unitary_json(m, qutrits));
    return kExitPass;
}

int cmd_verify(const std::string& unitary_path, const std::string& circuit_path, double tol) {
    const trisynth::UnitaryFile file =
        trisynth::read_unitary_json(trisynth::read_file(unitary_path));
    const trisynth::Circuit circuit = trisynth::deserialize(trisynth::read_file(circuit_path));
    const double effective_tol =
        tol > 0.0 ? tol : default_tolerance(file.matrix.rows(), circuit.gates.size());
    const trisynth::VerifyReport report = trisynth::verify(circuit, file.matrix, effective_tol);
    std::cout << "residual: " << report.residual << "\n"
              << "verification: " << (report.pass ? "PASS" : "FAIL") << " (tol " << effective_tol
              << ")\n";
    return report.pass ? kExitPass : kExitVerifyFail;
}

int cmd_simulate(const std::string& circuit_path, const std::string& state_path,
                 long long basis_index, const std::string& out) {
    const trisynth::Circuit circuit = trisynth::deserialize(trisynth::read_file(circuit_path));
    const trisynth::Index dim = trisynth::pow3(circuit.qutrits);
    trisynth::StateVector input;
    if (!state_path.empty()) {
        input = trisynth::read_state_json(trisynth::read_file(state_path));
    } else {
        input = trisynth::StateVector::basis(dim, static_cast<trisynth::Index>(basis_index));
    }
    const trisynth::StateVector result = trisynth::apply(circuit, input);
    emit(out, trisynth::write_state_json(result));
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ternary quantum logic synthesizer: decomposes 3^n-dimensional unitaries into "
                 "qutrit circuits via the Cosine-Sine Decomposition"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand(
        "synth", "Decompose a unitary file into a circuit, optionally lowering and verifying");
    synth->add_option("input", synth_args.input, "Unitary JSON file")->required();
    synth->add_option("--level", synth_args.level, "Output level: structured | elementary")
        ->check(CLI::IsMember({"structured", "elementary"}))
        ->capture_default_str();
    synth->add_option("--out", synth_args.out, "Circuit output path (stdout if omitted)");
    synth->add_flag("--verify", synth_args.do_verify,
                    "Reconstruct the circuit matrix and report the residual");
    synth->add_option("--tol", synth_args.tol,
                      "Verification tolerance (default 1e-9 * dim * gate count)");
    synth->add_flag("--counts", synth_args.counts, "Print the gate-count table");
    synth->add_flag("--optimize", synth_args.optimize,
                    "Skip lowered MS gates whose payload is the identity");
    synth->add_flag("--seedless-deterministic", synth_args.seedless_deterministic,
                    "Guarantee byte-reproducible output (the default pipeline already is; this "
                    "flag makes the requirement explicit)");

    unsigned random_qutrits = 0;
    std::uint64_t random_seed = 0;
    std::string random_out;
    CLI::App* random = app.add_subcommand("random", "Write a seeded Haar-random unitary file");
    random->add_option("--qutrits", random_qutrits, "Number of qutrits (n >= 1)")->required();
    random->add_option("--seed", random_seed, "RNG seed")->capture_default_str();
    random->add_option("--out", random_out, "Output path (stdout if omitted)");

    std::string verify_unitary, verify_circuit;
    double verify_tol = 0.0;
    CLI::App* verify = app.add_subcommand("verify", "Check a circuit file against a unitary file");
    verify->add_option("--unitary", verify_unitary, "Unitary JSON file")->required();
    verify->add_option("--circuit", verify_circuit, "Circuit JSON file")->required();
    verify->add_option("--tol", verify_tol, "Tolerance (default 1e-9 * dim * gate count)");

    std::string sim_circuit, sim_state, sim_out;
    long long sim_basis = -1;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a circuit on a statevector");
    simulate->add_option("--circuit", sim_circuit, "Circuit JSON file")->required();
    CLI::Option* state_opt = simulate->add_option("--state", sim_state, "Input statevector file");
    CLI::Option* basis_opt =
        simulate->add_option("--basis", sim_basis, "Input computational basis index");
    state_opt->excludes(basis_opt);
    simulate->add_option("--out", sim_out, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitFormat;
    }

    try {
        if (*synth) return cmd_synth(synth_args);
        if (*random) return cmd_random(random_qutrits, random_seed, random_out);
        if (*verify) return cmd_verify(verify_unitary, verify_circuit, verify_tol);
        if (*simulate) {
            if (sim_state.empty() && sim_basis < 0) {
                throw trisynth::DimensionError("simulate: provide --state or --basis");
            }
            return cmd_simulate(sim_circuit, sim_state, sim_basis, sim_out);
        }
    } catch (const trisynth::UnitarityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const trisynth::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const trisynth::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    }
    return kExitPass;
}
