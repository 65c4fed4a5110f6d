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

#ifndef SPPSIM_LINALG_HPP
#define SPPSIM_LINALG_HPP

#include <vector>

#include "sppsim/complex_tensor.hpp"
#include "sppsim/rng.hpp"

namespace sppsim {

// Dense real matrix, row-major.
struct RealMatrix {
    RealMatrix() = default;
    explicit RealMatrix(std::size_t n_in) : n(n_in), a(n_in * n_in, 0.0) {}

    double& at(std::size_t r, std::size_t c) {
        return a[r * n + c];
    }
    double at(std::size_t r, std::size_t c) const {
        return a[r * n + c];
    }

    std::size_t n = 0;
    std::vector<double> a;
};

RealMatrix real_matmul(const RealMatrix& x, const RealMatrix& y);
RealMatrix real_add(const RealMatrix& x, const RealMatrix& y, double sx = 1.0, double sy = 1.0);

// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and a
// unitary matrix of column eigenvectors.
struct HermitianEigen {
    std::vector<double> eigenvalues;
    ComplexTensor eigenvectors;
};

// Cyclic complex Jacobi. Throws on non-convergence after the sweep cap
// (100 * dim) rather than returning a partial result.
HermitianEigen hermitian_eigen(const ComplexTensor& m, double tol = 1e-12);

// exp(-i H) for Hermitian H, via eigendecomposition. Rejects inputs whose
// anti-Hermitian part exceeds 1e-12 (relative to the norm).
ComplexTensor expm_hermitian(const ComplexTensor& h);

// Spectrum of a real square matrix: eigenvalues sorted by descending
// magnitude, plus left/right eigenvectors of the leading eigenvalue
// normalized so <l1|r1> = 1 (when the leading eigenvalue is simple).
struct RealSpectrum {
    std::vector<cplx> eigenvalues;
    std::vector<cplx> leading_right;
    std::vector<cplx> leading_left;
    bool leading_vectors_valid = false;
};

// Householder Hessenberg reduction followed by Francis double-shift QR.
// Dense regime: dim <= 256. Throws on iteration-cap overrun.
RealSpectrum real_spectrum(const RealMatrix& m);

// Singular values (descending) of an arbitrary complex matrix, computed from
// the Hermitian eigendecomposition of A^dag A.
std::vector<double> singular_values(const ComplexTensor& m);

// Solves A x = b for complex dense A by LU with partial pivoting.
struct ComplexLu {
    explicit ComplexLu(const ComplexTensor& a);
    std::vector<cplx> solve(const std::vector<cplx>& b) const;
    cplx determinant() const;
    bool singular = false;

  private:
    std::size_t n_;
    std::vector<cplx> lu_;
    std::vector<std::size_t> piv_;
    int piv_sign_ = 1;
};

// Haar-random unitary via Gaussian matrix + QR with phase-fixed diagonal.
ComplexTensor haar_unitary(std::size_t dim, Rng& rng);

}  // namespace sppsim

#endif
