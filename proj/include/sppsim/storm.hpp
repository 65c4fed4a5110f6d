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

#ifndef SPPSIM_STORM_HPP
#define SPPSIM_STORM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "sppsim/correlation.hpp"

namespace sppsim {

// Two-state latent environment (calm = 0, storm = 1) modulating single-qubit
// Pauli emissions.
struct StormParams {
    double a = 0.0;               // calm -> storm probability
    double b = 0.0;               // storm -> calm probability
    std::array<double, 4> q0{1.0, 0.0, 0.0, 0.0};  // calm emission over I,X,Y,Z
    std::array<double, 4> q1{1.0, 0.0, 0.0, 0.0};  // storm emission

    void validate() const;  // a,b in [0,1], a+b < 1, q rows sum to 1
};

struct StormHmm {
    StormParams params;
    RealMatrix t;                          // 2x2 latent transition matrix
    std::vector<RealMatrix> label_matrices;  // A_x = T diag(q0_x, q1_x)
    std::array<double, 2> stationary{1.0, 0.0};

    TransferOperator transfer() const;
    // SPP MPS with `slots`+1 sites, stationary boundary (pi row, ones column).
    SppMps to_mps(std::size_t slots) const;
};

StormHmm storm_hmm(const StormParams& params);

// Closed-form spectral data: eigenvalues {1, 1-a-b}, gap a+b,
// xi = -1/ln(1-a-b), fixed points (pi, ones).
SpectralSummary analytic_summary(const StormParams& params);

// Stationary Pauli marginals (b q0 + a q1)/(a+b).
std::array<double, 4> storm_marginals(const StormParams& params);

// Inverse parametrization: calm emissions carry q0_error_total split over
// X/Y/Z by `split`; storm emissions carry q1_error_total likewise.
struct StormProfile {
    double q0_error_total = 0.0;
    double q1_error_total = 0.03;
    std::array<double, 3> split{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

// Solves for (a, b) hitting a target correlation length at fixed total
// marginal error rate. Rejects xi below the sweep floor of 1 and infeasible
// stationary fractions.
StormParams solve_params(double xi_target, double marginal_total, const StormProfile& profile);

// Per-round per-qubit Pauli labels from independent latent chains, initial
// states drawn from the stationary distribution. Counter-based draws keyed on
// (seed, qubit, round) make any subset reproducible independently.
// Layout: stream[round][qubit] in {0,1,2,3}.
std::vector<std::vector<std::uint8_t>> sample_fault_stream(const StormHmm& hmm,
                                                           std::size_t qubits, std::size_t rounds,
                                                           std::uint64_t seed);

}  // namespace sppsim

#endif
