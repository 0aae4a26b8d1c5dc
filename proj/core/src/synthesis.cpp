#include "trisynth/synthesis.hpp"

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>

namespace trisynth {

namespace {

int log3_or_minus_one(Index dim) {
    if (dim < 1) return -1;
    int n = 0;
    Index v = dim;
    while (v % 3 == 0) {
        v /= 3;
        ++n;
    }
    return v == 1 ? n : -1;
}

Matrix3 to_matrix3(const CMatrix& m) {
    Matrix3 out;
    out = m;
    return out;
}

/**
 * Recursive synthesis over tables of same-shaped sub-unitaries.
 *
 * A table holds the 3^k blocks of a gate uniformly controlled by `controls`
 * acting on `targets` (targets[0] is the top wire of the block). Decomposing
 * every entry with the ternary CSD and merging matching factor positions
 * across control strings turns the seven factors into seven positions: four
 * multiplexer tables (one more control each, recursed) interleaved with three
 * uniformly controlled rotations.
 */
class StructuredSynthesizer {
public:
    std::vector<Gate> gates;  // application order

    void synthesize(const std::vector<Wire>& controls, const std::vector<Wire>& targets,
                    std::vector<CMatrix> table) {
        if (targets.size() == 1) {
            emit_base(controls, targets[0], table);
            return;
        }

        std::vector<TernaryCSDFactors> factors;
        factors.reserve(table.size());
        for (CMatrix& entry : table) {
            factors.push_back(ternary_csd(entry));
        }
        table.clear();

        std::vector<Wire> inner_controls = controls;
        inner_controls.push_back(targets[0]);
        const std::vector<Wire> inner_targets(targets.begin() + 1, targets.end());
        std::vector<Wire> rotation_controls = controls;
        rotation_controls.insert(rotation_controls.end(), targets.begin() + 1, targets.end());

        auto multiplexer_table = [&](std::array<CMatrix, 3> TernaryCSDFactors::*member) {
            std::vector<CMatrix> merged;
            merged.reserve(factors.size() * 3);
            for (TernaryCSDFactors& f : factors) {
                for (CMatrix& block : f.*member) merged.push_back(std::move(block));
            }
            return merged;
        };
        auto angle_table = [&](std::vector<double> TernaryCSDFactors::*member) {
            std::vector<double> merged;
            merged.reserve(factors.size() * (f_block_count(factors)));
            for (const TernaryCSDFactors& f : factors) {
                const std::vector<double>& a = f.*member;
                merged.insert(merged.end(), a.begin(), a.end());
            }
            return merged;
        };
        auto emit_rotation = [&](RotationAxis axis, std::vector<double> angles) {
            gates.push_back(UniformlyControlledRotation{rotation_controls, targets[0], axis,
                                                        std::move(angles)});
        };

        // Matrix order is D1·MidX(σ)·D2·MidZ·D3·MidX(γ)·D4, so the circuit
        // applies D4 first and D1 last.
        synthesize(inner_controls, inner_targets, multiplexer_table(&TernaryCSDFactors::d4));
        emit_rotation(RotationAxis::R12, angle_table(&TernaryCSDFactors::gamma_x_thetas));
        synthesize(inner_controls, inner_targets, multiplexer_table(&TernaryCSDFactors::d3));
        emit_rotation(RotationAxis::R01, angle_table(&TernaryCSDFactors::mid_z_thetas));
        synthesize(inner_controls, inner_targets, multiplexer_table(&TernaryCSDFactors::d2));
        emit_rotation(RotationAxis::R12, angle_table(&TernaryCSDFactors::sigma_x_thetas));
        synthesize(inner_controls, inner_targets, multiplexer_table(&TernaryCSDFactors::d1));
    }

private:
    static std::size_t f_block_count(const std::vector<TernaryCSDFactors>& factors) {
        return factors.empty() ? 0 : factors.front().mid_z_thetas.size();
    }

    void emit_base(const std::vector<Wire>& controls, Wire target,
                   const std::vector<CMatrix>& table) {
        if (controls.empty()) {
            gates.push_back(SingleQutrit{target, to_matrix3(table.front())});
            return;
        }
        std::vector<Matrix3> entries;
        entries.reserve(table.size());
        for (const CMatrix& u : table) entries.push_back(to_matrix3(u));
        gates.push_back(UniformlyControlledGate{controls, target, std::move(entries)});
    }
};

}  // namespace

Circuit synthesize_structured(const CMatrix& w) {
    const int n = log3_or_minus_one(w.rows());
    if (w.cols() != w.rows() || n < 1) {
        throw DimensionError("synthesize_structured: dimension " + std::to_string(w.rows()) +
                             " is not a power of 3");
    }
    require_unitary(w, "synthesize_structured");

    std::vector<Wire> targets(static_cast<std::size_t>(n));
    for (unsigned i = 0; i < static_cast<unsigned>(n); ++i) targets[i] = i;

    StructuredSynthesizer synth;
    synth.synthesize({}, targets, {w});
    return Circuit{static_cast<unsigned>(n), std::move(synth.gates)};
}

namespace {

bool is_identity_payload(const Matrix3& u) {
    return (u - Matrix3::Identity()).norm() <= 1e-14;
}

// Shared shift pattern for both structured kinds: the control visits |2⟩
// once per control value, selecting payload(0), payload(1), payload(2) in
// turn; the net shift is 2+1+1+2 = 0 mod 3.
template <typename PayloadFn>
std::vector<Gate> lower_one_control(Wire control, Wire target, PayloadFn&& payload,
                                    const SynthesisOptions& opts) {
    std::vector<Gate> seq;
    seq.reserve(7);
    auto shift = [&](int amount) { seq.push_back(SingleQutrit{control, shift_matrix(amount)}); };
    auto fire = [&](std::size_t k) {
        Matrix3 u = payload(k);
        if (opts.skip_identity_blocks && is_identity_payload(u)) return;
        seq.push_back(MSControlled{control, target, std::move(u)});
    };
    shift(2);
    fire(0);
    shift(1);
    shift(1);
    fire(1);
    shift(2);
    fire(2);
    return seq;
}

}  // namespace

std::vector<Gate> lower_ucg_single_control(const UniformlyControlledGate& g,
                                           const SynthesisOptions& opts) {
    if (g.controls.size() != 1) {
        throw DimensionError("lower_ucg_single_control: gate has " +
                             std::to_string(g.controls.size()) +
                             " controls; only single-control multiplexers lower to "
                             "two-qutrit gates");
    }
    return lower_one_control(g.controls[0], g.target,
                             [&](std::size_t k) { return g.table[k]; }, opts);
}

std::vector<Gate> lower_ucr_single_control(const UniformlyControlledRotation& g,
                                           const SynthesisOptions& opts) {
    if (g.controls.size() != 1) {
        throw DimensionError("lower_ucr_single_control: gate has " +
                             std::to_string(g.controls.size()) +
                             " controls; only single-control rotations lower to "
                             "two-qutrit gates");
    }
    return lower_one_control(g.controls[0], g.target,
                             [&](std::size_t k) { return rotation_matrix(g.axis, g.angles[k]); },
                             opts);
}

Circuit lower_circuit(const Circuit& c, LoweringLevel level, const SynthesisOptions& opts,
                      LowerReport* report) {
    if (report != nullptr) *report = LowerReport{};
    if (level == LoweringLevel::structured) return c;

    Circuit out;
    out.qutrits = c.qutrits;
    for (const Gate& g : c.gates) {
        std::visit(
            [&](const auto& gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, UniformlyControlledGate>) {
                    if (gate.controls.empty()) {
                        out.gates.push_back(SingleQutrit{gate.target, gate.table.front()});
                    } else if (gate.controls.size() == 1) {
                        auto seq = lower_ucg_single_control(gate, opts);
                        out.gates.insert(out.gates.end(), std::make_move_iterator(seq.begin()),
                                         std::make_move_iterator(seq.end()));
                    } else {
                        if (report != nullptr) ++report->multi_control_retained;
                        out.gates.push_back(gate);
                    }
                } else if constexpr (std::is_same_v<T, UniformlyControlledRotation>) {
                    if (gate.controls.empty()) {
                        out.gates.push_back(
                            SingleQutrit{gate.target, rotation_matrix(gate.axis, gate.angles[0])});
                    } else if (gate.controls.size() == 1) {
                        auto seq = lower_ucr_single_control(gate, opts);
                        out.gates.insert(out.gates.end(), std::make_move_iterator(seq.begin()),
                                         std::make_move_iterator(seq.end()));
                    } else {
                        if (report != nullptr) ++report->multi_control_retained;
                        out.gates.push_back(gate);
                    }
                } else {
                    out.gates.push_back(gate);
                }
            },
            g);
    }
    return out;
}

VerifyReport verify(const Circuit& c, const CMatrix& w, double tol) {
    if (w.rows() != w.cols() || w.rows() != pow3(c.qutrits)) {
        throw DimensionError("verify: unitary dimension " + std::to_string(w.rows()) +
                             " does not match circuit over " + std::to_string(c.qutrits) +
                             " qutrits");
    }
    VerifyReport r;
    r.residual = frobenius_distance(circuit_to_matrix(c), w);
    r.pass = r.residual <= tol;
    return r;
}

}  // namespace trisynth
