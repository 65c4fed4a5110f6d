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

#include "sppsim/correlation.hpp"

#include <cmath>
#include <stdexcept>

#include "sppsim/rng.hpp"

namespace sppsim {

TransferOperator TransferOperator::from_label_matrices(std::size_t n_qubits,
                                                       std::vector<RealMatrix> a_matrices) {
    std::size_t labels = std::size_t{1} << (2 * n_qubits);
    if (a_matrices.size() != labels) {
        throw std::invalid_argument("TransferOperator: need one matrix per Pauli label");
    }
    TransferOperator t;
    t.n = n_qubits;
    t.label_matrices = std::move(a_matrices);
    t.t = RealMatrix(t.label_matrices[0].n);
    for (const auto& a : t.label_matrices) {
        if (a.n != t.t.n) {
            throw std::invalid_argument("TransferOperator: inconsistent matrix dimensions");
        }
        for (std::size_t i = 0; i < t.t.a.size(); i++) {
            t.t.a[i] += a.a[i];
        }
    }
    return t;
}

EmissionOperator emission_operator(const TransferOperator& t, const std::vector<double>& f) {
    if (f.size() != t.labels()) {
        throw std::invalid_argument("emission_operator: observable size mismatch");
    }
    EmissionOperator e;
    e.f = f;
    e.e = RealMatrix(t.dim());
    for (std::size_t x = 0; x < t.labels(); x++) {
        if (f[x] == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < e.e.a.size(); i++) {
            e.e.a[i] += f[x] * t.label_matrices[x].a[i];
        }
    }
    return e;
}

TransferOperator transfer_from_mps(const SppMps& mps, std::size_t site) {
    if (mps.k < 2 || site == 0 || site >= mps.k) {
        throw std::invalid_argument("transfer_from_mps: a bulk (interior) site is required");
    }
    std::size_t d = mps.left_dims[site];
    if (mps.right_dims[site] != d) {
        throw std::invalid_argument("transfer_from_mps: site bond dimensions differ");
    }
    std::vector<RealMatrix> mats;
    for (std::size_t x = 0; x < mps.labels(); x++) {
        RealMatrix m(d);
        for (std::size_t l = 0; l < d; l++) {
            for (std::size_t r = 0; r < d; r++) {
                m.at(l, r) = mps.site_at(site, l, x, r);
            }
        }
        mats.push_back(std::move(m));
    }
    return TransferOperator::from_label_matrices(mps.n, std::move(mats));
}

SpectralSummary spectral_summary(const TransferOperator& t) {
    RealSpectrum spec = real_spectrum(t.t);
    SpectralSummary s;
    std::size_t d = t.dim();

    cplx lambda1 = spec.eigenvalues[0];
    double mag1 = std::abs(lambda1);
    if (mag1 <= 0.0) {
        throw std::runtime_error("spectral_summary: zero leading eigenvalue");
    }
    s.lambda_1_raw = lambda1.real();
    s.eigenvalues.reserve(d);
    for (const auto& ev : spec.eigenvalues) {
        s.eigenvalues.push_back(ev / mag1);
    }

    s.unit_magnitude_count = 0;
    for (const auto& ev : s.eigenvalues) {
        if (std::abs(std::abs(ev) - 1.0) < 1e-10) {
            s.unit_magnitude_count++;
        }
    }
    s.ergodic = (s.unit_magnitude_count == 1);

    if (d > 1) {
        s.lambda_star = std::abs(s.eigenvalues[1]);
    }
    s.gap = 1.0 - s.lambda_star;
    if (s.ergodic) {
        if (s.lambda_star > 0.0 && s.lambda_star < 1.0) {
            s.xi = -1.0 / std::log(s.lambda_star);
            s.xi_defined = true;
        } else if (s.lambda_star == 0.0) {
            s.xi = 0.0;
            s.xi_defined = true;
        }
        if (spec.leading_vectors_valid) {
            s.left_fixed.resize(d);
            s.right_fixed.resize(d);
            for (std::size_t i = 0; i < d; i++) {
                s.left_fixed[i] = spec.leading_left[i].real();
                s.right_fixed[i] = spec.leading_right[i].real();
            }
        }
    }

    // Non-normality indicator ||[T, T^T]||_F / ||T||_F^2.
    RealMatrix tt(d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            tt.at(i, j) = t.t.at(j, i);
        }
    }
    RealMatrix comm = real_add(real_matmul(t.t, tt), real_matmul(tt, t.t), 1.0, -1.0);
    double comm_norm = 0.0, t_norm = 0.0;
    for (double v : comm.a) {
        comm_norm += v * v;
    }
    for (double v : t.t.a) {
        t_norm += v * v;
    }
    s.non_normality = (t_norm > 0.0) ? std::sqrt(comm_norm) / t_norm : 0.0;
    return s;
}

namespace {

std::vector<double> apply_left(const std::vector<double>& row, const RealMatrix& m) {
    std::vector<double> out(m.n, 0.0);
    for (std::size_t i = 0; i < m.n; i++) {
        double v = row[i];
        if (v == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < m.n; j++) {
            out[j] += v * m.at(i, j);
        }
    }
    return out;
}

void require_ergodic(const SpectralSummary& s, const char* what) {
    if (!s.ergodic) {
        throw std::runtime_error(std::string(what) +
                                 ": transfer operator is non-ergodic (degenerate leading "
                                 "eigenvalue)");
    }
    if (s.left_fixed.empty() || s.right_fixed.empty()) {
        throw std::runtime_error(std::string(what) + ": fixed points unavailable");
    }
}

}  // namespace

double covariance(const TransferOperator& t, const SpectralSummary& s,
                  const std::vector<double>& f, const std::vector<double>& g, std::size_t tau) {
    if (tau < 1) {
        throw std::invalid_argument("covariance: tau must be >= 1");
    }
    require_ergodic(s, "covariance");
    std::size_t d = t.dim();
    double inv_lambda = 1.0 / s.lambda_1_raw;

    // lambda_1-normalized operators.
    RealMatrix tn = t.t;
    for (double& v : tn.a) {
        v *= inv_lambda;
    }
    EmissionOperator ef = emission_operator(t, f);
    EmissionOperator eg = emission_operator(t, g);
    for (double& v : ef.e.a) {
        v *= inv_lambda;
    }
    for (double& v : eg.e.a) {
        v *= inv_lambda;
    }
    // Stationary means.
    auto mean_of = [&](const RealMatrix& e) {
        std::vector<double> row = apply_left(s.left_fixed, e);
        double m = 0.0;
        for (std::size_t i = 0; i < d; i++) {
            m += row[i] * s.right_fixed[i];
        }
        return m;
    };
    double mf = mean_of(ef.e);
    double mg = mean_of(eg.e);
    RealMatrix ef_c = real_add(ef.e, tn, 1.0, -mf);
    RealMatrix eg_c = real_add(eg.e, tn, 1.0, -mg);

    std::vector<double> row = apply_left(s.left_fixed, ef_c);
    for (std::size_t step = 0; step + 1 < tau; step++) {
        row = apply_left(row, tn);
    }
    row = apply_left(row, eg_c);
    double c = 0.0;
    for (std::size_t i = 0; i < d; i++) {
        c += row[i] * s.right_fixed[i];
    }
    return c;
}

double covariance(const TransferOperator& t, const std::vector<double>& f,
                  const std::vector<double>& g, std::size_t tau) {
    SpectralSummary s = spectral_summary(t);
    return covariance(t, s, f, g, tau);
}

double multipoint(const TransferOperator& t, const std::vector<TimedObservable>& observables) {
    if (observables.size() < 2) {
        throw std::invalid_argument("multipoint: need at least two observables");
    }
    for (std::size_t i = 1; i < observables.size(); i++) {
        if (observables[i].time <= observables[i - 1].time) {
            throw std::invalid_argument("multipoint: times must be strictly increasing");
        }
    }
    SpectralSummary s = spectral_summary(t);
    require_ergodic(s, "multipoint");
    std::size_t d = t.dim();
    double inv_lambda = 1.0 / s.lambda_1_raw;
    RealMatrix tn = t.t;
    for (double& v : tn.a) {
        v *= inv_lambda;
    }

    auto centred = [&](const std::vector<double>& f) {
        EmissionOperator e = emission_operator(t, f);
        for (double& v : e.e.a) {
            v *= inv_lambda;
        }
        std::vector<double> row = apply_left(s.left_fixed, e.e);
        double m = 0.0;
        for (std::size_t i = 0; i < d; i++) {
            m += row[i] * s.right_fixed[i];
        }
        return real_add(e.e, tn, 1.0, -m);
    };

    std::vector<double> row = s.left_fixed;
    for (std::size_t i = 0; i < observables.size(); i++) {
        row = apply_left(row, centred(observables[i].f));
        if (i + 1 < observables.size()) {
            std::size_t gap_steps = observables[i + 1].time - observables[i].time - 1;
            for (std::size_t g = 0; g < gap_steps; g++) {
                row = apply_left(row, tn);
            }
        }
    }
    double c = 0.0;
    for (std::size_t i = 0; i < d; i++) {
        c += row[i] * s.right_fixed[i];
    }
    return c;
}

std::vector<double> stationary_marginals(const TransferOperator& t) {
    SpectralSummary s = spectral_summary(t);
    require_ergodic(s, "stationary_marginals");
    std::size_t d = t.dim();
    std::vector<double> out(t.labels(), 0.0);
    for (std::size_t x = 0; x < t.labels(); x++) {
        std::vector<double> row = apply_left(s.left_fixed, t.label_matrices[x]);
        double m = 0.0;
        for (std::size_t i = 0; i < d; i++) {
            m += row[i] * s.right_fixed[i];
        }
        out[x] = m / s.lambda_1_raw;
    }
    return out;
}

HmmCheckResult hmm_check(const std::vector<RealMatrix>& a_matrices, double tol) {
    HmmCheckResult result;
    if (a_matrices.empty()) {
        throw std::invalid_argument("hmm_check: no matrices");
    }
    std::size_t d = a_matrices[0].n;
    for (std::size_t x = 0; x < a_matrices.size(); x++) {
        const RealMatrix& a = a_matrices[x];
        if (a.n != d) {
            throw std::invalid_argument("hmm_check: inconsistent dimensions");
        }
        for (std::size_t i = 0; i < d; i++) {
            for (std::size_t j = 0; j < d; j++) {
                if (a.at(i, j) < -tol) {
                    result.violations.push_back(HmmViolation{x, i, j, a.at(i, j), true});
                }
            }
        }
    }
    for (std::size_t i = 0; i < d; i++) {
        double row_sum = 0.0;
        for (const auto& a : a_matrices) {
            for (std::size_t j = 0; j < d; j++) {
                row_sum += a.at(i, j);
            }
        }
        if (std::abs(row_sum - 1.0) > tol) {
            result.violations.push_back(HmmViolation{0, i, 0, row_sum, false});
        }
    }
    result.is_hmm = result.violations.empty();
    return result;
}

std::vector<std::vector<int>> sample_stationary_sequence(const TransferOperator& t,
                                                         std::size_t length, std::size_t count,
                                                         std::uint64_t seed) {
    SpectralSummary s = spectral_summary(t);
    require_ergodic(s, "sample_stationary_sequence");
    std::size_t d = t.dim();
    std::size_t labels = t.labels();
    double inv_lambda = 1.0 / s.lambda_1_raw;

    std::vector<std::vector<int>> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; c++) {
        Rng rng(counter_u64(seed, c, 0x77a1));
        std::vector<double> filt = s.left_fixed;
        std::vector<int> seq(length);
        for (std::size_t step = 0; step < length; step++) {
            double total = 0.0;
            std::vector<double> mass(labels, 0.0);
            std::vector<std::vector<double>> rows(labels);
            for (std::size_t x = 0; x < labels; x++) {
                rows[x] = apply_left(filt, t.label_matrices[x]);
                double m = 0.0;
                for (std::size_t i = 0; i < d; i++) {
                    m += rows[x][i] * s.right_fixed[i];
                }
                m *= inv_lambda;
                if (m < -1e-9) {
                    throw std::runtime_error(
                        "sample_stationary_sequence: negative conditional mass");
                }
                mass[x] = std::max(0.0, m);
                total += mass[x];
            }
            double u = rng.next_unit() * total;
            std::size_t pick = labels - 1;
            double csum = 0.0;
            for (std::size_t x = 0; x < labels; x++) {
                csum += mass[x];
                if (u < csum) {
                    pick = x;
                    break;
                }
            }
            seq[step] = static_cast<int>(pick);
            filt = rows[pick];
            double scale = 0.0;
            for (double v : filt) {
                scale += std::abs(v);
            }
            if (scale > 0.0) {
                for (double& v : filt) {
                    v /= scale;
                }
            }
        }
        out.push_back(std::move(seq));
    }
    return out;
}

}  // namespace sppsim
