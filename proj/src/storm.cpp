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

#include "sppsim/storm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sppsim/rng.hpp"

namespace sppsim {

void StormParams::validate() const {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) {
        throw std::invalid_argument("StormParams: a, b must lie in [0, 1]");
    }
    if (a + b >= 1.0) {
        throw std::invalid_argument("StormParams: a + b must be < 1 so lambda_2 is in (0, 1)");
    }
    auto check_dist = [](const std::array<double, 4>& q, const char* name) {
        double s = 0.0;
        for (double v : q) {
            if (v < -1e-12) {
                throw std::invalid_argument(std::string("StormParams: negative entry in ") + name);
            }
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-12) {
            throw std::invalid_argument(std::string("StormParams: ") + name +
                                        " must sum to 1 within 1e-12");
        }
    };
    check_dist(q0, "q0");
    check_dist(q1, "q1");
}

StormHmm storm_hmm(const StormParams& params) {
    params.validate();
    StormHmm hmm;
    hmm.params = params;
    hmm.t = RealMatrix(2);
    hmm.t.at(0, 0) = 1.0 - params.a;
    hmm.t.at(0, 1) = params.a;
    hmm.t.at(1, 0) = params.b;
    hmm.t.at(1, 1) = 1.0 - params.b;
    for (std::size_t x = 0; x < 4; x++) {
        RealMatrix ax(2);
        // A_x = T diag(q0_x, q1_x): emit per the destination state.
        ax.at(0, 0) = hmm.t.at(0, 0) * params.q0[x];
        ax.at(0, 1) = hmm.t.at(0, 1) * params.q1[x];
        ax.at(1, 0) = hmm.t.at(1, 0) * params.q0[x];
        ax.at(1, 1) = hmm.t.at(1, 1) * params.q1[x];
        hmm.label_matrices.push_back(std::move(ax));
    }
    double denom = params.a + params.b;
    if (denom > 0.0) {
        hmm.stationary = {params.b / denom, params.a / denom};
    } else {
        hmm.stationary = {1.0, 0.0};  // frozen chain; calm by convention
    }
    return hmm;
}

TransferOperator StormHmm::transfer() const {
    return TransferOperator::from_label_matrices(1, label_matrices);
}

SppMps StormHmm::to_mps(std::size_t slots) const {
    std::vector<std::vector<double>> mats;
    for (const auto& a : label_matrices) {
        mats.push_back(a.a);
    }
    std::vector<double> left{stationary[0], stationary[1]};
    std::vector<double> right{1.0, 1.0};
    return SppMps::from_site_matrices(1, slots, left, mats, right);
}

SpectralSummary analytic_summary(const StormParams& params) {
    params.validate();
    SpectralSummary s;
    double lambda2 = 1.0 - params.a - params.b;
    s.eigenvalues = {cplx(1.0, 0.0), cplx(lambda2, 0.0)};
    s.lambda_1_raw = 1.0;
    s.lambda_star = std::abs(lambda2);
    s.gap = params.a + params.b;
    s.ergodic = true;
    s.unit_magnitude_count = 1;
    if (lambda2 > 0.0) {
        s.xi = -1.0 / std::log(lambda2);
        s.xi_defined = true;
    } else if (lambda2 == 0.0) {
        s.xi = 0.0;
        s.xi_defined = true;
    }
    double denom = params.a + params.b;
    double pi0 = denom > 0.0 ? params.b / denom : 1.0;
    double pi1 = denom > 0.0 ? params.a / denom : 0.0;
    s.left_fixed = {pi0, pi1};
    s.right_fixed = {1.0, 1.0};
    s.non_normality = 0.0;  // not meaningful in closed form; see spectral_summary
    return s;
}

std::array<double, 4> storm_marginals(const StormParams& params) {
    double denom = params.a + params.b;
    std::array<double, 4> out{};
    for (std::size_t x = 0; x < 4; x++) {
        if (denom > 0.0) {
            out[x] = (params.b * params.q0[x] + params.a * params.q1[x]) / denom;
        } else {
            out[x] = params.q0[x];
        }
    }
    return out;
}

StormParams solve_params(double xi_target, double marginal_total, const StormProfile& profile) {
    if (xi_target < 1.0) {
        throw std::invalid_argument(
            "solve_params: correlation-length target below the sweep floor xi = 1");
    }
    if (marginal_total <= 0.0 || marginal_total >= 1.0) {
        throw std::invalid_argument("solve_params: marginal_total must lie in (0, 1)");
    }
    if (profile.q1_error_total <= profile.q0_error_total) {
        throw std::invalid_argument("solve_params: q1_error_total must exceed q0_error_total");
    }
    double split_sum = profile.split[0] + profile.split[1] + profile.split[2];
    if (std::abs(split_sum - 1.0) > 1e-12) {
        throw std::invalid_argument("solve_params: per-Pauli split must sum to 1");
    }

    double delta = 1.0 - std::exp(-1.0 / xi_target);
    double pi1 =
        (marginal_total - profile.q0_error_total) / (profile.q1_error_total - profile.q0_error_total);
    if (pi1 < 0.0 || pi1 > 1.0) {
        throw std::invalid_argument(
            "solve_params: infeasible target, stationary storm fraction pi_1 = " +
            std::to_string(pi1) + " lies outside [0, 1]");
    }
    StormParams p;
    p.a = delta * pi1;
    p.b = delta * (1.0 - pi1);
    if (p.a + p.b >= 1.0) {
        throw std::invalid_argument("solve_params: infeasible target, a + b >= 1");
    }
    auto fill = [&](double total) {
        std::array<double, 4> q;
        q[0] = 1.0 - total;
        for (std::size_t i = 0; i < 3; i++) {
            q[i + 1] = total * profile.split[i];
        }
        return q;
    };
    p.q0 = fill(profile.q0_error_total);
    p.q1 = fill(profile.q1_error_total);
    p.validate();
    return p;
}

std::vector<std::vector<std::uint8_t>> sample_fault_stream(const StormHmm& hmm,
                                                           std::size_t qubits, std::size_t rounds,
                                                           std::uint64_t seed) {
    std::vector<std::vector<std::uint8_t>> stream(rounds, std::vector<std::uint8_t>(qubits, 0));
    const StormParams& p = hmm.params;
    for (std::size_t q = 0; q < qubits; q++) {
        // Initial latent state from the stationary distribution.
        int s = counter_unit(seed, q, 0, 0) < hmm.stationary[1] ? 1 : 0;
        for (std::size_t r = 0; r < rounds; r++) {
            double u1 = counter_unit(seed, q, r + 1, 0);
            if (s == 0) {
                s = (u1 < p.a) ? 1 : 0;
            } else {
                s = (u1 < p.b) ? 0 : 1;
            }
            double u2 = counter_unit(seed, q, r + 1, 1);
            const std::array<double, 4>& dist = (s == 0) ? p.q0 : p.q1;
            double csum = 0.0;
            std::uint8_t pick = 3;
            for (std::uint8_t x = 0; x < 4; x++) {
                csum += dist[x];
                if (u2 < csum) {
                    pick = x;
                    break;
                }
            }
            stream[r][q] = pick;
        }
    }
    return stream;
}

}  // namespace sppsim
