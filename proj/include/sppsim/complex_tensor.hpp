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

#ifndef SPPSIM_COMPLEX_TENSOR_HPP
#define SPPSIM_COMPLEX_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace sppsim {

using cplx = std::complex<double>;

// Dense complex tensor, row-major flat storage. Matrices are rank-2 tensors
// with shape {rows, cols}; vectors are rank-1.
//
// Conventions used throughout:
//  * vectorization is column-stacking: vec(A)[c*rows + r] = A(r, c), so a
//    fused operator-space index is (bra-index major, ket-index minor);
//  * the superoperator of rho -> A rho B is kron(B^T, A) in this convention,
//    and unitary conjugation rho -> U rho U^dag maps to kron(conj(U), U).
class ComplexTensor {
  public:
    ComplexTensor() = default;
    explicit ComplexTensor(std::vector<std::size_t> shape_in);

    static ComplexTensor zeros(std::vector<std::size_t> shape);
    static ComplexTensor identity(std::size_t dim);

    std::size_t size() const {
        return data.size();
    }
    std::size_t rank() const {
        return shape.size();
    }
    bool is_matrix() const {
        return shape.size() == 2;
    }
    bool is_square_matrix() const {
        return is_matrix() && shape[0] == shape[1];
    }
    std::size_t rows() const {
        return shape[0];
    }
    std::size_t cols() const {
        return shape[1];
    }

    cplx& at(std::size_t r, std::size_t c) {
        return data[r * shape[1] + c];
    }
    const cplx& at(std::size_t r, std::size_t c) const {
        return data[r * shape[1] + c];
    }

    // Reinterprets the flat data with a new shape of equal total size.
    ComplexTensor reshaped(std::vector<std::size_t> new_shape) const;

    // Permutes axes: result axis i is input axis perm[i].
    ComplexTensor permuted(const std::vector<std::size_t>& perm) const;

    ComplexTensor transposed() const;
    ComplexTensor conjugated() const;
    ComplexTensor dagger() const;

    ComplexTensor operator+(const ComplexTensor& other) const;
    ComplexTensor operator-(const ComplexTensor& other) const;
    ComplexTensor operator*(cplx scalar) const;
    ComplexTensor& operator*=(cplx scalar);
    ComplexTensor& operator+=(const ComplexTensor& other);

    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;

    std::vector<std::size_t> shape;
    std::vector<cplx> data;
};

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b);

// Kronecker product of two matrices; first factor is index-major.
ComplexTensor kron(const ComplexTensor& a, const ComplexTensor& b);

// Column-stacking vectorization of a square matrix and its inverse.
ComplexTensor vectorize(const ComplexTensor& op);
ComplexTensor devectorize(const ComplexTensor& vec);

// Partial trace of a matrix on a tensor-product space with factor dimensions
// `dims` (factor 0 index-major), tracing out the factors listed in `traced`.
ComplexTensor partial_trace(const ComplexTensor& op, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& traced);

// Reorder-fuse-transpose of a superoperator on a two-factor space
// (d_first kron d_second). Input is the (D^2 x D^2) superoperator matrix with
// D = d_first*d_second; output is a 4-leg tensor with legs
// [mu_in, alpha_in, mu_out, beta_out] of dims
// [d_first^2, d_second^2, d_first^2, d_second^2], where each fused leg packs a
// (bra, ket) index pair bra-major. Time flows left to right: the "in" legs of
// the map become the left legs of the tensor.
ComplexTensor rft_two_factor(const ComplexTensor& superop, std::size_t d_first,
                             std::size_t d_second);

// Reorder-fuse-transpose of a single-factor superoperator. In the
// column-stacking convention the fused grouping is already in place, so this
// is the plain transpose, kept as a named operation for clarity at call sites.
ComplexTensor rft_one_factor(const ComplexTensor& superop);

// Inverse of rft_two_factor.
ComplexTensor rft_two_factor_inverse(const ComplexTensor& tensor, std::size_t d_first,
                                     std::size_t d_second);

// Superoperator of rho -> U rho U^dag, i.e. kron(conj(U), U).
ComplexTensor unitary_superop(const ComplexTensor& u);

// Superoperator of rho -> A rho B.
ComplexTensor sandwich_superop(const ComplexTensor& a, const ComplexTensor& b);

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b);

}  // namespace sppsim

#endif
