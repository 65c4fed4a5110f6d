// Copyright 2026 The sppsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPPSIM_QCA_HPP
#define SPPSIM_QCA_HPP

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sppsim/complex_tensor.hpp"

namespace sppsim {

enum class LatticeBoundary { kOpen, kPeriodic };

// Bipartite site graph carrying the bath. Red/black labels satisfy: all
// neighbours of a red site are black and vice versa.
struct Lattice {
    std::vector<std::pair<int, int>> coords;
    std::vector<std::uint8_t> is_red;
    std::vector<std::vector<std::uint32_t>> neighbors;
    LatticeBoundary boundary = LatticeBoundary::kOpen;

    std::size_t size() const {
        return coords.size();
    }

    // Data + ancilla sites of a distance-d rotated surface code patch,
    // N_d = 2d^2 - 1 sites, diagonal-step adjacency, open boundary.
    static Lattice rotated_surface_code(int d);
    static Lattice rectangular(int w, int h, LatticeBoundary boundary = LatticeBoundary::kOpen);
    static Lattice path(int n_sites);

    void validate_bipartite() const;
};

struct QcaParams {
    double a = 1e-4;   // spontaneous excitation rate
    double b = 0.5;    // relaxation rate
    double theta = 0;  // coupling angle (radians)
    std::array<double, 3> n_vec{1.0 / 1.7320508075688772, 1.0 / 1.7320508075688772,
                                1.0 / 1.7320508075688772};

    void validate() const;  // ||n||^2 = 1 within 1e-12
    std::array<double, 3> emission_probs() const {
        return {n_vec[0] * n_vec[0], n_vec[1] * n_vec[1], n_vec[2] * n_vec[2]};
    }
};

using BathState = std::vector<std::uint8_t>;

// One full PCA cycle: storm update, black half-step, red half-step, Pauli
// emission conditioned on the updated configuration. Emissions (if requested)
// use labels 0..3 = I,X,Y,Z. Draws are keyed on (seed, trajectory, cycle,
// site, phase) and are schedule-independent.
void pca_cycle(BathState& state, const QcaParams& params, const Lattice& lattice,
               std::uint64_t seed, std::uint64_t trajectory, std::uint64_t cycle,
               std::vector<std::uint8_t>* emissions);

struct DensitySeries {
    std::vector<double> eta;  // post burn-in densities, trajectories concatenated
    std::size_t sites = 0;
    std::size_t trajectories = 1;
    std::size_t recorded_per_trajectory = 0;
    double mean = 0.0;
    double variance = 0.0;
    double scaled_variance = 0.0;  // N_d * Var
    double xi_eta = 0.0;
    double fit_r2 = 0.0;
    bool xi_fittable = false;
    std::vector<double> autocorrelation;  // C(tau)/C(0), tau = 1.. window end
};

// Runs `trajectories` independent bath histories of `cycles` total cycles
// each, recording densities after `burn_in` cycles; fits C(tau) ~ e^{-tau/xi}
// on the window where C(tau)/Var > 0.02.
DensitySeries run_series(const QcaParams& params, const Lattice& lattice, std::size_t cycles,
                         std::size_t burn_in, std::uint64_t seed, std::size_t trajectories = 1);

// Hilbert-Schmidt orthogonality gate for the controlled system-environment
// interaction: V_k unitary and Tr(V_k V_l^dag) = d delta_kl within 1e-10.
bool hilbert_schmidt_check(const ComplexTensor& v0, const ComplexTensor& v1);

// --- Dense microscopic oracle (tiny lattices) ------------------------------
//
// One-cycle conditional kernel Pr(s_next, emission_string | s) for every bath
// configuration s, obtained from a full quantum simulation of the microscopic
// cycle with the system twirl implemented by explicit group averaging. The
// emission instrument is the canonical Pauli-branch decomposition of the
// twirled interaction's Kraus operators.
//
// Outcome key packs (s_next << 2V) | emission, emission base-4 with site 0
// most significant.
struct CycleKernel {
    std::size_t sites = 0;
    std::vector<std::map<std::uint64_t, double>> rows;  // indexed by s
    double max_bath_offdiag = 0.0;   // dephasing diagnostic
    double max_completeness_err = 0.0;  // |row sum - 1|
};

enum class OracleSystemState { kZeros, kPlus, kRandomProduct };

CycleKernel dense_micro_kernel(const QcaParams& params, const Lattice& lattice,
                               OracleSystemState system_state = OracleSystemState::kZeros,
                               std::uint64_t system_state_seed = 0);

// Exact PCA one-cycle kernel in the same encoding.
CycleKernel exact_pca_kernel(const QcaParams& params, const Lattice& lattice);

// Joint distribution over (bath trajectory, emission strings) for `cycles`
// cycles from initial configuration s0. Keys concatenate per-cycle outcome
// keys, first cycle most significant (3V bits per cycle).
std::map<std::uint64_t, double> kernel_joint(const CycleKernel& kernel, std::uint64_t s0,
                                             std::size_t cycles);

double total_variation(const std::map<std::uint64_t, double>& p,
                       const std::map<std::uint64_t, double>& q);

}  // namespace sppsim

#endif
