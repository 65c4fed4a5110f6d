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

#include "sppsim/pauli.hpp"

#include <stdexcept>

namespace sppsim {

ComplexTensor pauli_matrix(int p) {
    ComplexTensor m({2, 2});
    switch (p) {
        case 0:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = 1.0;
            break;
        case 1:
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            break;
        case 2:
            m.at(0, 1) = cplx(0.0, -1.0);
            m.at(1, 0) = cplx(0.0, 1.0);
            break;
        case 3:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument("pauli_matrix: label out of range");
    }
    return m;
}

ComplexTensor pauli_string_matrix(const std::vector<int>& labels) {
    ComplexTensor m = pauli_matrix(labels.empty() ? 0 : labels[0]);
    if (labels.empty()) {
        return ComplexTensor::identity(1);
    }
    for (std::size_t i = 1; i < labels.size(); i++) {
        m = kron(m, pauli_matrix(labels[i]));
    }
    return m;
}

std::string pauli_label_string(std::uint64_t index, std::size_t n_qubits) {
    std::string s(n_qubits, 'I');
    for (std::size_t q = n_qubits; q-- > 0;) {
        s[q] = kPauliChars[index & 3];
        index >>= 2;
    }
    return s;
}

std::uint64_t pauli_label_index(const std::string& s) {
    std::uint64_t idx = 0;
    for (char c : s) {
        int p;
        switch (c) {
            case 'I':
                p = 0;
                break;
            case 'X':
                p = 1;
                break;
            case 'Y':
                p = 2;
                break;
            case 'Z':
                p = 3;
                break;
            default:
                throw std::invalid_argument("pauli_label_index: invalid character");
        }
        idx = (idx << 2) | static_cast<std::uint64_t>(p);
    }
    return idx;
}

PauliAction pauli_action(const std::vector<int>& labels) {
    std::size_t n = labels.size();
    std::size_t dim = std::size_t{1} << n;
    PauliAction act;
    act.perm.resize(dim);
    act.phase.resize(dim);
    std::uint32_t flip_mask = 0;
    for (std::size_t q = 0; q < n; q++) {
        if (labels[q] == 1 || labels[q] == 2) {
            flip_mask |= 1u << (n - 1 - q);
        }
    }
    for (std::size_t i = 0; i < dim; i++) {
        act.perm[i] = static_cast<std::uint32_t>(i) ^ flip_mask;
        cplx ph = 1.0;
        for (std::size_t q = 0; q < n; q++) {
            int bit = (i >> (n - 1 - q)) & 1;
            switch (labels[q]) {
                case 2:
                    ph *= bit ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
                    break;
                case 3:
                    if (bit) {
                        ph = -ph;
                    }
                    break;
                default:
                    break;
            }
        }
        act.phase[i] = ph;
    }
    return act;
}

void pauli_conjugate_inplace(ComplexTensor& m, const PauliAction& p) {
    std::size_t dim = p.perm.size();
    if (!m.is_square_matrix() || m.rows() != dim) {
        throw std::invalid_argument("pauli_conjugate: dimension mismatch");
    }
    ComplexTensor out({dim, dim});
    // (P M P)[a, b] = phase(perm(a)) * phase(b) * M[perm(a), perm(b)]
    for (std::size_t a = 0; a < dim; a++) {
        std::size_t pa = p.perm[a];
        cplx fa = p.phase[pa];
        for (std::size_t b = 0; b < dim; b++) {
            out.at(a, b) = fa * p.phase[b] * m.at(pa, p.perm[b]);
        }
    }
    m = std::move(out);
}

std::vector<cplx> pauli_coefficients(const ComplexTensor& m, std::size_t n_factors) {
    std::size_t dim = std::size_t{1} << n_factors;
    if (!m.is_square_matrix() || m.rows() != dim) {
        throw std::invalid_argument("pauli_coefficients: dimension mismatch");
    }
    std::size_t total = std::size_t{1} << (2 * n_factors);

    // Repack M into base-4 digits (a_f, b_f) per factor, factor 0 most
    // significant, then transform each digit with W[p][(a,b)] = sigma_p[b, a].
    std::vector<cplx> u(total);
    for (std::size_t a = 0; a < dim; a++) {
        for (std::size_t b = 0; b < dim; b++) {
            std::size_t idx = 0;
            for (std::size_t f = 0; f < n_factors; f++) {
                std::size_t abit = (a >> (n_factors - 1 - f)) & 1;
                std::size_t bbit = (b >> (n_factors - 1 - f)) & 1;
                idx = (idx << 2) | (abit << 1) | bbit;
            }
            u[idx] = m.at(a, b);
        }
    }

    static const cplx W[4][4] = {
        {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)},    // I
        {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)},    // X
        {cplx(0, 0), cplx(0, 1), cplx(0, -1), cplx(0, 0)},   // Y
        {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)},   // Z
    };

    std::vector<cplx> next(total);
    for (std::size_t f = 0; f < n_factors; f++) {
        std::size_t stride = std::size_t{1} << (2 * (n_factors - 1 - f));
        for (std::size_t base = 0; base < total; base++) {
            std::size_t digit = (base / stride) & 3;
            if (digit != 0) {
                continue;
            }
            cplx in[4];
            for (std::size_t d = 0; d < 4; d++) {
                in[d] = u[base + d * stride];
            }
            for (std::size_t pnew = 0; pnew < 4; pnew++) {
                cplx s = 0.0;
                for (std::size_t d = 0; d < 4; d++) {
                    s += W[pnew][d] * in[d];
                }
                next[base + pnew * stride] = s;
            }
        }
        std::swap(u, next);
    }
    return u;
}

ComplexTensor matrix_from_pauli_coefficients(const std::vector<cplx>& coeffs,
                                             std::size_t n_factors) {
    std::size_t total = std::size_t{1} << (2 * n_factors);
    if (coeffs.size() != total) {
        throw std::invalid_argument("matrix_from_pauli_coefficients: size mismatch");
    }
    // Inverse per-factor transform: u[(a,b)] = (1/2) sum_p c[p] sigma_p[a, b].
    static const cplx V[4][4] = {
        // rows indexed by (a,b); columns by p; entries sigma_p[a,b] / 2
        {cplx(0.5, 0), cplx(0, 0), cplx(0, 0), cplx(0.5, 0)},     // (0,0)
        {cplx(0, 0), cplx(0.5, 0), cplx(0, -0.5), cplx(0, 0)},    // (0,1)
        {cplx(0, 0), cplx(0.5, 0), cplx(0, 0.5), cplx(0, 0)},     // (1,0)
        {cplx(0.5, 0), cplx(0, 0), cplx(0, 0), cplx(-0.5, 0)},    // (1,1)
    };
    std::vector<cplx> u = coeffs;
    std::vector<cplx> next(total);
    for (std::size_t f = 0; f < n_factors; f++) {
        std::size_t stride = std::size_t{1} << (2 * (n_factors - 1 - f));
        for (std::size_t base = 0; base < total; base++) {
            std::size_t digit = (base / stride) & 3;
            if (digit != 0) {
                continue;
            }
            cplx in[4];
            for (std::size_t d = 0; d < 4; d++) {
                in[d] = u[base + d * stride];
            }
            for (std::size_t ab = 0; ab < 4; ab++) {
                cplx s = 0.0;
                for (std::size_t d = 0; d < 4; d++) {
                    s += V[ab][d] * in[d];
                }
                next[base + ab * stride] = s;
            }
        }
        std::swap(u, next);
    }
    std::size_t dim = std::size_t{1} << n_factors;
    ComplexTensor m({dim, dim});
    for (std::size_t a = 0; a < dim; a++) {
        for (std::size_t b = 0; b < dim; b++) {
            std::size_t idx = 0;
            for (std::size_t f = 0; f < n_factors; f++) {
                std::size_t abit = (a >> (n_factors - 1 - f)) & 1;
                std::size_t bbit = (b >> (n_factors - 1 - f)) & 1;
                idx = (idx << 2) | (abit << 1) | bbit;
            }
            m.at(a, b) = u[idx];
        }
    }
    return m;
}

}  // namespace sppsim
