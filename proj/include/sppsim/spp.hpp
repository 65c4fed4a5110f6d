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

#ifndef SPPSIM_SPP_HPP
#define SPPSIM_SPP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sppsim/complex_tensor.hpp"
#include "sppsim/process_tensor.hpp"

namespace sppsim {

// Pauli twirl building blocks on one time slot of n qubits: the superoperators
// S_x of rho -> P_x rho P_x for every n-qubit Pauli string x. The tensor used
// for weight extraction and the reorder-fuse-transpose image of each S_x is
// its transpose; see spp.cpp for the normalization bookkeeping.
struct PauliTensor {
    std::size_t n = 1;
    std::vector<ComplexTensor> superops;  // 4^n matrices of dim 4^n
};
PauliTensor make_pauli_tensor(std::size_t n_qubits);

// Matrix product state over Pauli labels encoding unnormalized joint
// trajectory weights. Environment bonds are expressed in an orthonormal
// Hermitian operator basis, which makes every site tensor exactly real.
// Boundary vectors are absorbed into the first and last sites.
struct SppMps {
    std::size_t n = 1;  // qubits per time step
    std::size_t k = 0;  // slots; k+1 sites
    // site_tensors[j] is a flat [d_left, 4^n, d_right] array, row-major.
    std::vector<std::vector<double>> site_tensors;
    std::vector<std::size_t> left_dims;
    std::vector<std::size_t> right_dims;
    double normalization = 0.0;  // sum of all trajectory weights

    std::size_t labels() const {
        return std::size_t{1} << (2 * n);
    }
    double site_at(std::size_t site, std::size_t l, std::size_t x, std::size_t r) const {
        return site_tensors[site][(l * labels() + x) * right_dims[site] + r];
    }

    static SppMps from_site_matrices(std::size_t n_qubits, std::size_t slots,
                                     const std::vector<double>& left_row,
                                     const std::vector<std::vector<double>>& label_matrices,
                                     const std::vector<double>& right_col);

    std::string to_json() const;
    static SppMps from_json(const std::string& text);
};

// Dense probability table over all 4^{n(k+1)} trajectories (small instances).
struct TrajectoryDistribution {
    std::size_t n = 1;
    std::size_t k = 0;
    std::vector<double> probabilities;  // label-lexicographic, slot 0 major
};

// Group average over (4^n)^{k+1} Pauli sandwiches (Def. of the multi-time
// twirl); output has the same trace, stays Hermitian/PSD/causal.
ChoiOperator dense_multi_time_twirl(const ChoiOperator& choi);

// Same projector implemented by per-slot local contractions on the MPO's open
// system legs; environment bonds untouched.
ProcessTensorMPO twirl_mpo_local(const ProcessTensorMPO& mpo);

SppMps build_spp_mps(const SEDilation& dilation);

// Weight of one trajectory; probability is weight / normalization.
double trajectory_weight(const SppMps& mps, const std::vector<int>& labels);

// Exact ancestral sampling; deterministic given seed. Conditional mass below
// -1e-9 aborts; values in (-1e-9, 0) are clamped to zero.
std::vector<std::vector<int>> sample_trajectories(const SppMps& mps, std::uint64_t seed,
                                                  std::size_t count);

// Dense enumeration of all trajectory weights (small instances only).
std::vector<double> enumerate_weights(const SppMps& mps);
TrajectoryDistribution enumerate_distribution(const SppMps& mps);

// Re-expands Pauli label legs into operator legs; contracting the result
// yields the same Choi as twirl_mpo_local of the originating MPO.
ProcessTensorMPO reconstruct_twirled_mpo(const SppMps& mps);

// Numerical rank of each internal-bond matricization of the weight tensor
// (singular values > 1e-10 * sigma_max). Dense enumeration; small instances.
std::vector<std::size_t> bond_ranks(const SppMps& mps);

// Relative-entropy diagnostics. Values use the natural logarithm. A support
// violation is reported through the `infinite` flag, never as a large float.
struct EntropyResult {
    double value = 0.0;
    bool infinite = false;
};

// S(Y || x_j Tr_{j-bar} Y) for a unit-trace Choi operator.
EntropyResult gqmi(const ChoiOperator& choi);

// S(Y || T(Y)) for a unit-trace Choi operator.
EntropyResult twirl_rel_entropy(const ChoiOperator& choi);

// Quantum relative entropy S(rho || sigma) of unit-trace PSD matrices.
EntropyResult relative_entropy(const ComplexTensor& rho, const ComplexTensor& sigma);

enum class WorkedModel { kHeisenberg, kControlledRx, kHeisenbergField };
WorkedModel worked_model_from_string(const std::string& name);

// Single-qubit system + single-qubit environment dilations generated by the
// three worked interaction Hamiltonians, environment initialized in |+>.
SEDilation worked_hamiltonian(WorkedModel kind, double theta, std::size_t slots = 1);

}  // namespace sppsim

#endif
