#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "trisynth/io.hpp"
#include "trisynth/synthesis.hpp"

using namespace trisynth;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "trisynth_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out_path = scratch_dir() / "stdout.txt";
    const fs::path err_path = scratch_dir() / "stderr.txt";
    const std::string cmd = std::string(TRISYNTH_CLI_PATH) + " " + args + " >" +
                            out_path.string() + " 2>" + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out_path.string());
    r.err = read_file(err_path.string());
    return r;
}

std::string path_of(const std::string& name) { return (scratch_dir() / name).string(); }

double parse_residual(const std::string& out) {
    const auto pos = out.find("residual:");
    REQUIRE(pos != std::string::npos);
    return std::stod(out.substr(pos + 9));
}

}  // namespace

TEST_CASE("cli random: determinism and reader acceptance") {
    const std::string a = path_of("r1a.json");
    const std::string b = path_of("r1b.json");
    CHECK(run_cli("random --qutrits 1 --seed 7 --out " + a).exit_code == 0);
    CHECK(run_cli("random --qutrits 1 --seed 7 --out " + b).exit_code == 0);
    CHECK(read_file(a) == read_file(b));

    const std::string big = path_of("r3.json");
    CHECK(run_cli("random --qutrits 3 --seed 5 --out " + big).exit_code == 0);
    const UnitaryFile f = read_unitary_json(read_file(big));
    CHECK(f.qutrits == 3);
    CHECK(is_unitary(f.matrix));
}

TEST_CASE("cli random: zero qutrits is a precondition error") {
    CHECK(run_cli("random --qutrits 0").exit_code == 3);
}

TEST_CASE("cli synth: identity input verifies at machine precision") {
    const std::string u = path_of("id9.json");
    write_file(u, write_unitary_json(CMatrix::Identity(9, 9), 2));
    const RunResult r = run_cli("synth " + u + " --level structured --verify --out " +
                                path_of("id9_circuit.json"));
    CHECK(r.exit_code == 0);
    CHECK(parse_residual(r.out) <= 1e-12);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("cli synth: elementary counts for a Haar input") {
    const std::string u = path_of("h9.json");
    CHECK(run_cli("random --qutrits 2 --seed 99 --out " + u).exit_code == 0);
    const RunResult r =
        run_cli("synth " + u + " --level elementary --counts --out " + path_of("h9_circ.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ms: 21") != std::string::npos);
    CHECK(r.out.find("shift: 28") != std::string::npos);
}

TEST_CASE("cli synth: --optimize drops identity payloads") {
    const std::string u = path_of("h9o.json");
    CHECK(run_cli("random --qutrits 2 --seed 123 --out " + u).exit_code == 0);
    const RunResult r = run_cli("synth " + u +
                                " --level elementary --counts --optimize --verify --out " +
                                path_of("h9o_circ.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ms: 19") != std::string::npos);
    CHECK(r.out.find("shift: 28") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("cli synth: dimension 8 input is rejected with exit 3") {
    const std::string u = path_of("bad8.json");
    write_file(u, write_unitary_json(CMatrix::Identity(8, 8), 2));
    const RunResult r = run_cli("synth " + u);
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("dimension 8 is not a power of 3") != std::string::npos);
}

TEST_CASE("cli synth: non-unitary input is rejected with exit 1 and the defect") {
    CMatrix m = CMatrix::Identity(9, 9);
    m(0, 0) = 1.5;
    const std::string u = path_of("nonunitary.json");
    write_file(u, write_unitary_json(m, 2));
    const RunResult r = run_cli("synth " + u);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("not unitary") != std::string::npos);
}

TEST_CASE("cli synth: malformed file is rejected with exit 2") {
    const std::string u = path_of("garbage.json");
    write_file(u, "{ definitely not json");
    CHECK(run_cli("synth " + u).exit_code == 2);
    CHECK(run_cli("synth " + path_of("missing_file.json")).exit_code == 2);
}

TEST_CASE("cli synth: byte-identical outputs for identical inputs") {
    const std::string u = path_of("det9.json");
    CHECK(run_cli("random --qutrits 2 --seed 7 --out " + u).exit_code == 0);
    const std::string c1 = path_of("det9_c1.json");
    const std::string c2 = path_of("det9_c2.json");
    CHECK(run_cli("synth " + u + " --level elementary --seedless-deterministic --out " + c1)
              .exit_code == 0);
    CHECK(run_cli("synth " + u + " --level elementary --seedless-deterministic --out " + c2)
              .exit_code == 0);
    CHECK(read_file(c1) == read_file(c2));
}

TEST_CASE("cli verify: synthesized pair passes, tampered circuit fails") {
    const std::string u = path_of("v9.json");
    const std::string c = path_of("v9_circ.json");
    CHECK(run_cli("random --qutrits 2 --seed 21 --out " + u).exit_code == 0);
    CHECK(run_cli("synth " + u + " --out " + c).exit_code == 0);
    CHECK(run_cli("verify --unitary " + u + " --circuit " + c).exit_code == 0);

    // perturb one rotation angle by 0.1
    Circuit circuit = deserialize(read_file(c));
    for (Gate& g : circuit.gates) {
        if (auto* r = std::get_if<UniformlyControlledRotation>(&g)) {
            r->angles[0] += 0.1;
            break;
        }
    }
    const std::string tampered = path_of("v9_tampered.json");
    write_file(tampered, serialize(circuit));
    const RunResult r = run_cli("verify --unitary " + u + " --circuit " + tampered);
    CHECK(r.exit_code == 1);
    CHECK(parse_residual(r.out) > 1e-9 * 9);
}

TEST_CASE("cli verify: dimension mismatch is exit 3") {
    const std::string u27 = path_of("w27.json");
    const std::string c9 = path_of("w9_circ.json");
    const std::string u9 = path_of("w9.json");
    CHECK(run_cli("random --qutrits 3 --seed 2 --out " + u27).exit_code == 0);
    CHECK(run_cli("random --qutrits 2 --seed 2 --out " + u9).exit_code == 0);
    CHECK(run_cli("synth " + u9 + " --out " + c9).exit_code == 0);
    CHECK(run_cli("verify --unitary " + u27 + " --circuit " + c9).exit_code == 3);
}

TEST_CASE("cli simulate: basis states through simple circuits") {
    const std::string empty = path_of("empty.json");
    write_file(empty, serialize(Circuit{2, {}}));
    const std::string out = path_of("sim_out.json");
    CHECK(run_cli("simulate --circuit " + empty + " --basis 0 --out " + out).exit_code == 0);
    StateVector s = read_state_json(read_file(out));
    CHECK(s.amplitudes(0) == Complex(1.0, 0.0));

    const std::string shift = path_of("shift.json");
    write_file(shift, serialize(Circuit{1, {SingleQutrit{0, shift_matrix(1)}}}));
    CHECK(run_cli("simulate --circuit " + shift + " --basis 0 --out " + out).exit_code == 0);
    s = read_state_json(read_file(out));
    CHECK(s.amplitudes(1) == Complex(1.0, 0.0));

    CHECK(run_cli("simulate --circuit " + empty + " --basis 9 --out " + out).exit_code == 3);
    CHECK(run_cli("simulate --circuit " + empty + " --out " + out).exit_code == 3);
}

TEST_CASE("cli simulate: random circuit against the matrix oracle") {
    const std::string u = path_of("sim9.json");
    const std::string c = path_of("sim9_circ.json");
    CHECK(run_cli("random --qutrits 2 --seed 77 --out " + u).exit_code == 0);
    CHECK(run_cli("synth " + u + " --level elementary --out " + c).exit_code == 0);

    const Circuit circuit = deserialize(read_file(c));
    const CMatrix m = circuit_to_matrix(circuit);

    const std::string out = path_of("sim9_out.json");
    CHECK(run_cli("simulate --circuit " + c + " --basis 4 --out " + out).exit_code == 0);
    const StateVector s = read_state_json(read_file(out));
    CHECK((s.amplitudes - m.col(4)).norm() <= 1e-12 * 9);
}
