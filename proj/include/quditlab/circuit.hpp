// circuit.hpp
// Compilation of qudit projective measurements onto a triangular mesh of
// Mach-Zehnder interferometers: 2x2 component matrices, single-MZI amplitude
// elimination, full-mesh phase calculation, mesh unitary assembly, and the
// source/interferometer imperfection model.

#pragma once

#include <vector>

#include "quditlab/basis.hpp"
#include "quditlab/random.hpp"
#include "quditlab/state.hpp"

namespace quditlab::circuit {

// Arm of the MZI carrying the internal phase shifter. Lower refers to the
// smaller mode index of the coupled pair.
enum class ShifterPlacement { Lower, Upper };

// Compiled mesh configuration for a 2^N-mode triangular network.
// Layer n (1..N) holds 2^(N-n) MZIs; mzi_phase(n, i) is the internal phase
// of the i-th MZI (1-based) of layer n. input_phases are the per-mode phase
// shifters in front of the mesh.
struct PhaseSettings {
    int dim = 0;  // padded to a power of two
    int k0 = 0;   // detection mode index (0-based)
    ShifterPlacement placement = ShifterPlacement::Lower;
    std::vector<std::vector<double>> theta;  // theta[n-1][i-1]
    std::vector<double> input_phases;        // phi_l, one per mode
    bool degenerate = false;                 // a 0/0 elimination was hit

    int layers() const { return static_cast<int>(theta.size()); }
    int mzi_count() const;
    double mzi_phase(int layer, int i) const { return theta[layer - 1][i - 1]; }
};

// Source / interferometer imperfection parameters.
struct NoiseModel {
    double werner_visibility = 1.0;  // v in [0,1]
    double phase_jitter_sigma = 0.0; // radians
    std::vector<double> mode_loss;   // per-mode transmission eta_k in [0,1]

    static double db_to_linear(double loss_db);
    void validate() const;
};

// 2x2 component matrices. The phase shifter acts on the second mode of the
// pair it is written against.
Mat phase_shifter(double phi);
Mat beam_splitter();
Mat mzi_matrix(double theta);  // BS * PS(theta) * BS

double wrap_phase(double phase);  // canonical [0, 2*pi)

struct EliminationResult {
    double theta = 0.0;
    double phi = 0.0;
    bool degenerate = false;  // both amplitudes were zero
};

// Single-MZI elimination: chooses (theta, phi) so that, after applying
// M_MZI(theta) * M_PS(phi) to modes (k_nops, k_ps) of `amplitudes`, the
// amplitude on k_cross vanishes. Updates `amplitudes` in place. k_cross
// must be one of the two modes. A doubly-zero pair returns theta = phi = 0
// with the degenerate flag set.
EliminationResult mzi_elimination(Vec& amplitudes, int k_ps, int k_nops,
                                  int k_cross);

struct CompileOptions {
    int k0 = -1;  // negative: default 2^(N-1)
    ShifterPlacement placement = ShifterPlacement::Lower;
};

// Mesh phases that route `psi` to the detection mode: the assembled network
// applied to psi leaves |amplitude|^2 = 1 on mode k0. States of non-power-
// of-two dimension are zero-padded to the next power of two.
PhaseSettings triangular_phases(const PureState& psi, const CompileOptions& opts = {});

// Modes coupled by the i-th MZI (1-based) of layer n (1-based): returns
// {lower, upper} physical mode indices.
std::pair<int, int> mzi_modes(const PhaseSettings& settings, int layer, int i);

// Block matrix of one mesh layer (MZI couplings only).
Mat layer_unitary(const PhaseSettings& settings, int layer);

// Full mesh unitary: ordered product of the layer matrices applied after
// the input phase diagonal. Unitary within 1e-10 by construction.
Mat network_unitary(const PhaseSettings& settings);

// Rank-one projector realized by the settings: |v><v| with v = U^dag |k0>.
Mat projector_from_settings(const PhaseSettings& settings);
PureState state_from_settings(const PhaseSettings& settings);

// Werner mixing on the state plus independent Gaussian jitter on every
// compiled phase of every basis projector. The returned bases are physical
// (generally no longer exactly orthogonal) and bypass validation.
struct NoisyExperiment {
    DensityMatrix rho;
    std::vector<MeasurementBasis> alice_bases;
    std::vector<MeasurementBasis> bob_bases;
};
NoisyExperiment apply_noise(const DensityMatrix& rho, const NoiseModel& noise,
                            const std::vector<MeasurementBasis>& alice_bases,
                            const std::vector<MeasurementBasis>& bob_bases,
                            Rng& rng);

// Reversed Hong-Ou-Mandel fringe at a given phase: the classical reference
// fringe, the two-photon fringe at the stated indistinguishability, and the
// two-photon visibility (N_max - N_min)/(N_max + N_min).
struct RhomFringe {
    double classical_rate = 0.0;
    double quantum_rate = 0.0;
    double visibility = 0.0;
};
RhomFringe rhom_fringe(double phase, double indistinguishability);

// Bhattacharyya overlap sum_i sqrt(p_i q_i) between two normalized
// distributions of equal length.
double statistical_fidelity(const std::vector<double>& p,
                            const std::vector<double>& q);

}  // namespace quditlab::circuit
