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

#ifndef SPPSIM_PAULI_HPP
#define SPPSIM_PAULI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sppsim/complex_tensor.hpp"

namespace sppsim {

// Label ordering is (I, X, Y, Z) per qubit, lexicographic over qubits with
// qubit 0 most significant. All tables, files and the CLI share it.
inline constexpr char kPauliChars[4] = {'I', 'X', 'Y', 'Z'};

ComplexTensor pauli_matrix(int p);                 // single qubit, p in [0,4)
ComplexTensor pauli_string_matrix(const std::vector<int>& labels);

std::string pauli_label_string(std::uint64_t index, std::size_t n_qubits);
std::uint64_t pauli_label_index(const std::string& s);

// Signed-permutation form of an n-qubit Pauli string acting on 2^n basis
// states: P|i> = phase[i] |perm[i]>.
struct PauliAction {
    std::vector<std::uint32_t> perm;
    std::vector<cplx> phase;
};
PauliAction pauli_action(const std::vector<int>& labels);

// In-place conjugation M <- P M P for Hermitian Pauli P given its action.
void pauli_conjugate_inplace(ComplexTensor& m, const PauliAction& p);

// Coefficients c[p_0,...,p_{F-1}] = Tr[(sigma_{p_0} x ... x sigma_{p_{F-1}}) M]
// for a matrix M on F qubit factors, flattened with factor 0 most significant.
// Computed by per-factor transforms in O(F 4^F).
std::vector<cplx> pauli_coefficients(const ComplexTensor& m, std::size_t n_factors);

// Inverse: M = (1/2^F) sum_p c[p] (sigma_{p_0} x ...).
ComplexTensor matrix_from_pauli_coefficients(const std::vector<cplx>& coeffs,
                                             std::size_t n_factors);

}  // namespace sppsim

#endif
