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

#ifndef SPPSIM_PROCESS_TENSOR_HPP
#define SPPSIM_PROCESS_TENSOR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "sppsim/complex_tensor.hpp"

namespace sppsim {

// A k-slot process specified microscopically: k+1 joint unitaries on
// H_E (x) H_S (environment factor index-major) plus the initial environment
// state. The system dimension must be a power of two (n qubits).
struct SEDilation {
    std::size_t d_s = 2;
    std::size_t d_e = 2;
    ComplexTensor env_init;                // d_e x d_e density matrix
    std::vector<ComplexTensor> unitaries;  // k+1 unitaries, (d_e*d_s) square

    std::size_t slots() const {
        return unitaries.size() - 1;
    }
    std::size_t n_qubits() const;

    // Throws if any unitary deviates from unitarity beyond 1e-10 or env_init
    // is not a unit-trace PSD matrix within 1e-12.
    void validate() const;
};

// Temporal matrix-product-operator form of a process tensor. Site tensors have
// legs [bond_in, alpha_in, bond_out, beta_out]; the fused system legs alpha,
// beta have dimension d_s^2 and pack a (bra, ket) pair bra-major. Boundary
// vectors close the first and last bonds.
struct ProcessTensorMPO {
    std::vector<ComplexTensor> sites;
    std::vector<cplx> left_boundary;
    std::vector<cplx> right_boundary;
    std::size_t d_s = 2;
    std::size_t n = 1;  // qubits

    std::size_t slots() const {
        return sites.size() - 1;
    }
    std::size_t bond_in(std::size_t site) const {
        return sites[site].shape[0];
    }
    std::size_t bond_out(std::size_t site) const {
        return sites[site].shape[2];
    }
};

// Dense Choi operator on (x)_j (H_in_j (x) H_out_j), slot 0 index-major,
// within a slot the input factor major. The unnormalized convention carries
// trace 4^{n(k+1)}.
struct ChoiOperator {
    enum class Normalization { kUnnormalized, kUnitTrace };

    ComplexTensor matrix;
    std::size_t slots = 0;   // k
    std::size_t n = 1;       // qubits per time step
    Normalization normalization = Normalization::kUnnormalized;

    std::size_t qubit_factors() const {
        return 2 * n * (slots + 1);
    }
    ChoiOperator normalized() const;
};

struct CausalityReport {
    double max_violation = 0.0;   // max |constraint| / trace convention
    double trace_error = 0.0;     // relative deviation from the trace convention
    std::size_t family_count = 0; // (k+1)(4^n - 1)
};

struct PositivityReport {
    double min_eigenvalue = 0.0;
};

ProcessTensorMPO build_mpo(const SEDilation& dilation);

// Dense Choi from the MPO; capped at total dimension (d_s^2)^(k+1) <= 4096.
ChoiOperator mpo_to_choi(const ProcessTensorMPO& mpo);

// Contracts the process tensor against an initial system state and k
// instrument superoperators (column-stacking convention, d_s^2 square).
// Instruments must be CP (Choi PSD within 1e-10).
ComplexTensor apply_instruments(const ProcessTensorMPO& mpo, const ComplexTensor& rho_in,
                                const std::vector<ComplexTensor>& instruments);

CausalityReport check_causality(const ChoiOperator& choi);
PositivityReport check_positivity(const ChoiOperator& choi);

// Choi matrix of a superoperator in the column-stacking convention.
ComplexTensor superop_to_choi_matrix(const ComplexTensor& superop, std::size_t d);

SEDilation dilation_from_json(const std::string& json_text);
SEDilation load_dilation(const std::string& path);
std::string dilation_to_json(const SEDilation& dilation);

}  // namespace sppsim

#endif
