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

#ifndef SPPSIM_CORRELATION_HPP
#define SPPSIM_CORRELATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sppsim/linalg.hpp"
#include "sppsim/spp.hpp"

namespace sppsim {

// Transfer operator of a time-homogeneous SPP: per-label bond matrices A_x and
// their sum T. This is the probability-side operator (no conjugate doubling).
struct TransferOperator {
    std::size_t n = 1;                    // qubits per step
    RealMatrix t;                         // sum over labels
    std::vector<RealMatrix> label_matrices;

    std::size_t labels() const {
        return std::size_t{1} << (2 * n);
    }
    std::size_t dim() const {
        return t.n;
    }
    static TransferOperator from_label_matrices(std::size_t n_qubits,
                                                std::vector<RealMatrix> a_matrices);
};

// Observable-inserted transfer operator E_f = sum_x f(x) A_x.
struct EmissionOperator {
    RealMatrix e;
    std::vector<double> f;
};
EmissionOperator emission_operator(const TransferOperator& t, const std::vector<double>& f);

struct SpectralSummary {
    std::vector<cplx> eigenvalues;  // scaled so lambda_1 = 1, descending |.|
    double lambda_1_raw = 0.0;      // leading eigenvalue before normalization
    double lambda_star = 0.0;       // |lambda_2| after normalization
    double gap = 0.0;               // 1 - lambda_star
    double xi = 0.0;                // -1/ln(lambda_star), 0 for rank-1
    bool xi_defined = false;
    bool ergodic = true;            // false when the leading eigenvalue is degenerate
    std::size_t unit_magnitude_count = 1;
    std::vector<double> left_fixed;   // l1, with l1 . r1 = 1
    std::vector<double> right_fixed;  // r1
    double non_normality = 0.0;       // ||[T, T^T]||_F / ||T||_F^2
};

// Extract A_x at a bulk site of a time-homogeneous MPS. Boundary sites are
// rejected.
TransferOperator transfer_from_mps(const SppMps& mps, std::size_t site);

SpectralSummary spectral_summary(const TransferOperator& t);

// Two-point covariance C_{f,g}(tau) = l1 Ef~ T^{tau-1} Eg~ r1 with centred
// emissions; tau = 1 means adjacent steps. Throws when non-ergodic.
double covariance(const TransferOperator& t, const std::vector<double>& f,
                  const std::vector<double>& g, std::size_t tau);
double covariance(const TransferOperator& t, const SpectralSummary& s,
                  const std::vector<double>& f, const std::vector<double>& g, std::size_t tau);

struct TimedObservable {
    std::size_t time = 0;
    std::vector<double> f;
};

// m-point connected correlator with strictly increasing times.
double multipoint(const TransferOperator& t, const std::vector<TimedObservable>& observables);

// Stationary single-step Pauli marginals l1 A_x r1 (normalized transfer).
std::vector<double> stationary_marginals(const TransferOperator& t);

struct HmmViolation {
    std::size_t label = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
    bool negative_entry = false;  // otherwise a row-sum violation (col unused)
};

struct HmmCheckResult {
    bool is_hmm = false;
    std::vector<HmmViolation> violations;
    // On pass the transition-emission kernels K_x coincide with the inputs.
};

HmmCheckResult hmm_check(const std::vector<RealMatrix>& a_matrices, double tol = 1e-9);

// Samples stationary label sequences of the given length using the
// lambda_1-normalized operator and its fixed points. Deterministic given seed.
std::vector<std::vector<int>> sample_stationary_sequence(const TransferOperator& t,
                                                         std::size_t length, std::size_t count,
                                                         std::uint64_t seed);

}  // namespace sppsim

#endif
