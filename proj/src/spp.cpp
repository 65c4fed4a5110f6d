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

#include "sppsim/spp.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "sppsim/linalg.hpp"
#include "sppsim/pauli.hpp"
#include "sppsim/rng.hpp"

namespace sppsim {

namespace {

// Signed-permutation form of the slot superoperator S_x = kron(conj(P), P)
// acting on a fused leg of dimension 4^n: S_x[alpha, col[alpha]] = coeff[alpha]
// with coeff in {+1, -1}.
struct FusedPauliAction {
    std::vector<std::uint32_t> col;
    std::vector<double> coeff;
};

std::vector<int> label_digits(std::size_t x, std::size_t n) {
    std::vector<int> labels(n);
    for (std::size_t q = n; q-- > 0;) {
        labels[q] = static_cast<int>(x & 3);
        x >>= 2;
    }
    return labels;
}

FusedPauliAction fused_pauli_action(std::size_t x, std::size_t n) {
    PauliAction act = pauli_action(label_digits(x, n));
    std::size_t d = act.perm.size();
    FusedPauliAction out;
    out.col.resize(d * d);
    out.coeff.resize(d * d);
    for (std::size_t ap = 0; ap < d; ap++) {
        for (std::size_t a = 0; a < d; a++) {
            std::size_t alpha = ap * d + a;
            out.col[alpha] = act.perm[ap] * d + act.perm[a];
            cplx c = std::conj(act.phase[act.perm[ap]]) * act.phase[act.perm[a]];
            out.coeff[alpha] = c.real();  // always +-1 for Pauli strings
        }
    }
    return out;
}

// Orthonormal Hermitian operator basis of a d-dimensional space, as the
// unitary change of basis G[h, mu] from the fused computational basis
// (columns of vec) to Hermitian-basis coefficients.
ComplexTensor hermitian_basis_transform(std::size_t d) {
    std::vector<ComplexTensor> basis;
    for (std::size_t i = 0; i < d; i++) {
        ComplexTensor e({d, d});
        e.at(i, i) = 1.0;
        basis.push_back(e);
    }
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = i + 1; j < d; j++) {
            ComplexTensor sym({d, d});
            sym.at(i, j) = inv_sqrt2;
            sym.at(j, i) = inv_sqrt2;
            basis.push_back(sym);
            ComplexTensor asym({d, d});
            asym.at(i, j) = cplx(0.0, inv_sqrt2);
            asym.at(j, i) = cplx(0.0, -inv_sqrt2);
            basis.push_back(asym);
        }
    }
    ComplexTensor g({d * d, d * d});
    for (std::size_t h = 0; h < d * d; h++) {
        ComplexTensor v = vectorize(basis[h]);
        for (std::size_t mu = 0; mu < d * d; mu++) {
            g.at(h, mu) = std::conj(v.data[mu]);
        }
    }
    return g;
}

constexpr double kImagTolerance = 1e-10;

double assert_real(const cplx& v, double scale) {
    if (std::abs(v.imag()) > kImagTolerance * scale) {
        throw std::runtime_error(
            "build_spp_mps: site tensor has non-negligible imaginary part in the "
            "Hermitian bond gauge");
    }
    return v.real();
}

}  // namespace

PauliTensor make_pauli_tensor(std::size_t n_qubits) {
    PauliTensor pt;
    pt.n = n_qubits;
    std::size_t count = std::size_t{1} << (2 * n_qubits);
    for (std::size_t x = 0; x < count; x++) {
        ComplexTensor p = pauli_string_matrix(label_digits(x, n_qubits));
        pt.superops.push_back(kron(p.conjugated(), p));
    }
    return pt;
}

ChoiOperator dense_multi_time_twirl(const ChoiOperator& choi) {
    std::size_t n = choi.n;
    std::size_t k = choi.slots;
    std::size_t q_factors = choi.qubit_factors();
    std::size_t labels_per_slot = std::size_t{1} << (2 * n);
    std::size_t assignments = 1;
    for (std::size_t j = 0; j <= k; j++) {
        assignments *= labels_per_slot;
    }

    ComplexTensor acc({choi.matrix.rows(), choi.matrix.cols()});
    std::vector<int> labels(q_factors, 0);
    for (std::size_t a = 0; a < assignments; a++) {
        // Same Pauli string on the input and output factors of each slot.
        std::size_t rem = a;
        for (std::size_t j = k + 1; j-- > 0;) {
            std::size_t x = rem % labels_per_slot;
            rem /= labels_per_slot;
            std::vector<int> digs = label_digits(x, n);
            for (std::size_t q = 0; q < n; q++) {
                labels[2 * n * j + q] = digs[q];
                labels[2 * n * j + n + q] = digs[q];
            }
        }
        PauliAction act = pauli_action(labels);
        ComplexTensor term = choi.matrix;
        pauli_conjugate_inplace(term, act);
        acc += term;
    }
    acc *= 1.0 / static_cast<double>(assignments);

    ChoiOperator out;
    out.matrix = std::move(acc);
    out.slots = k;
    out.n = n;
    out.normalization = choi.normalization;
    return out;
}

ProcessTensorMPO twirl_mpo_local(const ProcessTensorMPO& mpo) {
    std::size_t n = mpo.n;
    std::size_t f = mpo.d_s * mpo.d_s;
    std::size_t labels = std::size_t{1} << (2 * n);
    std::vector<FusedPauliAction> actions;
    for (std::size_t x = 0; x < labels; x++) {
        actions.push_back(fused_pauli_action(x, n));
    }

    ProcessTensorMPO out = mpo;
    double norm = 1.0 / static_cast<double>(labels);
    for (auto& site : out.sites) {
        std::size_t dl = site.shape[0], dr = site.shape[2];
        ComplexTensor tw({dl, f, dr, f});
        for (const auto& act : actions) {
            for (std::size_t mu = 0; mu < dl; mu++) {
                for (std::size_t al = 0; al < f; al++) {
                    std::size_t alt = act.col[al];
                    double ca = act.coeff[al];
                    for (std::size_t mup = 0; mup < dr; mup++) {
                        const cplx* src = &site.data[((mu * f + alt) * dr + mup) * f];
                        cplx* dst = &tw.data[((mu * f + al) * dr + mup) * f];
                        for (std::size_t be = 0; be < f; be++) {
                            dst[be] += ca * act.coeff[be] * src[act.col[be]];
                        }
                    }
                }
            }
        }
        tw *= norm;
        site = std::move(tw);
    }
    return out;
}

SppMps build_spp_mps(const SEDilation& dilation) {
    ProcessTensorMPO mpo = build_mpo(dilation);
    std::size_t n = mpo.n;
    std::size_t k = mpo.slots();
    std::size_t f = mpo.d_s * mpo.d_s;
    std::size_t labels = std::size_t{1} << (2 * n);
    std::size_t de2 = dilation.d_e * dilation.d_e;

    std::vector<FusedPauliAction> actions;
    for (std::size_t x = 0; x < labels; x++) {
        actions.push_back(fused_pauli_action(x, n));
    }

    // Per-site, per-label bond matrices M_x[mu, mu'] = sum_b coeff(b) *
    // U[mu, col(b), mu', b]; the weight-extraction tensor P[alpha, beta] is
    // S_x[beta, alpha].
    std::vector<std::vector<ComplexTensor>> raw(k + 1);
    for (std::size_t j = 0; j <= k; j++) {
        const ComplexTensor& site = mpo.sites[j];
        raw[j].reserve(labels);
        for (std::size_t x = 0; x < labels; x++) {
            const auto& act = actions[x];
            ComplexTensor m({de2, de2});
            for (std::size_t mu = 0; mu < de2; mu++) {
                for (std::size_t be = 0; be < f; be++) {
                    std::size_t al = act.col[be];
                    double c = act.coeff[be];
                    const cplx* srow = &site.data[((mu * f + al) * de2) * f];
                    for (std::size_t mup = 0; mup < de2; mup++) {
                        m.at(mu, mup) += c * site.data[((mu * f + al) * de2 + mup) * f + be];
                    }
                    (void)srow;
                }
            }
            raw[j].push_back(std::move(m));
        }
    }

    ComplexTensor g = hermitian_basis_transform(dilation.d_e);
    ComplexTensor gd = g.dagger();

    SppMps mps;
    mps.n = n;
    mps.k = k;
    mps.site_tensors.resize(k + 1);
    mps.left_dims.resize(k + 1);
    mps.right_dims.resize(k + 1);

    for (std::size_t j = 0; j <= k; j++) {
        bool absorb_left = (j == 0);
        bool absorb_right = (j == k);
        std::size_t dl = absorb_left ? 1 : de2;
        std::size_t dr = absorb_right ? 1 : de2;
        mps.left_dims[j] = dl;
        mps.right_dims[j] = dr;
        mps.site_tensors[j].assign(dl * labels * dr, 0.0);
        for (std::size_t x = 0; x < labels; x++) {
            ComplexTensor m = raw[j][x];
            if (absorb_left) {
                // Row vector: left_boundary^T * M, then * G^dag.
                ComplexTensor row({1, de2});
                for (std::size_t mup = 0; mup < de2; mup++) {
                    cplx s = 0.0;
                    for (std::size_t mu = 0; mu < de2; mu++) {
                        s += mpo.left_boundary[mu] * m.at(mu, mup);
                    }
                    row.at(0, mup) = s;
                }
                m = row;
            } else {
                m = matmul(g, m);
            }
            if (absorb_right) {
                ComplexTensor col({m.rows(), 1});
                for (std::size_t mu = 0; mu < m.rows(); mu++) {
                    cplx s = 0.0;
                    for (std::size_t mup = 0; mup < de2; mup++) {
                        s += m.at(mu, mup) * mpo.right_boundary[mup];
                    }
                    col.at(mu, 0) = s;
                }
                m = col;
            } else {
                m = matmul(m, gd);
            }
            double scale = std::max(1.0, m.max_abs());
            for (std::size_t l = 0; l < dl; l++) {
                for (std::size_t r = 0; r < dr; r++) {
                    mps.site_tensors[j][(l * labels + x) * dr + r] =
                        assert_real(m.at(l, r), scale);
                }
            }
        }
    }

    // Total weight via the label-summed transfer product.
    std::vector<double> vec(1, 1.0);
    for (std::size_t j = 0; j <= k; j++) {
        std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
        std::vector<double> next(dr, 0.0);
        for (std::size_t l = 0; l < dl; l++) {
            for (std::size_t x = 0; x < labels; x++) {
                for (std::size_t r = 0; r < dr; r++) {
                    next[r] += vec[l] * mps.site_at(j, l, x, r);
                }
            }
        }
        vec = std::move(next);
    }
    mps.normalization = vec[0];
    return mps;
}

SppMps SppMps::from_site_matrices(std::size_t n_qubits, std::size_t slots,
                                  const std::vector<double>& left_row,
                                  const std::vector<std::vector<double>>& label_matrices,
                                  const std::vector<double>& right_col) {
    std::size_t labels = std::size_t{1} << (2 * n_qubits);
    if (label_matrices.size() != labels) {
        throw std::invalid_argument("from_site_matrices: need one matrix per Pauli label");
    }
    std::size_t d = left_row.size();
    if (right_col.size() != d) {
        throw std::invalid_argument("from_site_matrices: boundary dimension mismatch");
    }
    for (const auto& m : label_matrices) {
        if (m.size() != d * d) {
            throw std::invalid_argument("from_site_matrices: matrix dimension mismatch");
        }
    }
    SppMps mps;
    mps.n = n_qubits;
    mps.k = slots;
    mps.site_tensors.resize(slots + 1);
    mps.left_dims.resize(slots + 1);
    mps.right_dims.resize(slots + 1);
    for (std::size_t j = 0; j <= slots; j++) {
        bool absorb_left = (j == 0);
        bool absorb_right = (j == slots);
        std::size_t dl = absorb_left ? 1 : d;
        std::size_t dr = absorb_right ? 1 : d;
        mps.left_dims[j] = dl;
        mps.right_dims[j] = dr;
        mps.site_tensors[j].assign(dl * labels * dr, 0.0);
        for (std::size_t x = 0; x < labels; x++) {
            const auto& m = label_matrices[x];
            for (std::size_t l = 0; l < dl; l++) {
                for (std::size_t r = 0; r < dr; r++) {
                    double v = 0.0;
                    if (absorb_left && absorb_right) {
                        for (std::size_t i = 0; i < d; i++) {
                            for (std::size_t jj = 0; jj < d; jj++) {
                                v += left_row[i] * m[i * d + jj] * right_col[jj];
                            }
                        }
                    } else if (absorb_left) {
                        for (std::size_t i = 0; i < d; i++) {
                            v += left_row[i] * m[i * d + r];
                        }
                    } else if (absorb_right) {
                        for (std::size_t jj = 0; jj < d; jj++) {
                            v += m[l * d + jj] * right_col[jj];
                        }
                    } else {
                        v = m[l * d + r];
                    }
                    mps.site_tensors[j][(l * labels + x) * dr + r] = v;
                }
            }
        }
    }
    // Normalization by transfer product.
    std::vector<double> vec(1, 1.0);
    for (std::size_t j = 0; j <= slots; j++) {
        std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
        std::vector<double> next(dr, 0.0);
        for (std::size_t l = 0; l < dl; l++) {
            for (std::size_t x = 0; x < labels; x++) {
                for (std::size_t r = 0; r < dr; r++) {
                    next[r] += vec[l] * mps.site_at(j, l, x, r);
                }
            }
        }
        vec = std::move(next);
    }
    mps.normalization = vec[0];
    return mps;
}

double trajectory_weight(const SppMps& mps, const std::vector<int>& labels) {
    if (labels.size() != mps.k + 1) {
        throw std::invalid_argument("trajectory_weight: label sequence must have k+1 entries");
    }
    std::size_t label_count = mps.labels();
    std::vector<double> vec(1, 1.0);
    for (std::size_t j = 0; j <= mps.k; j++) {
        int x = labels[j];
        if (x < 0 || static_cast<std::size_t>(x) >= label_count) {
            throw std::invalid_argument("trajectory_weight: invalid Pauli label");
        }
        std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
        std::vector<double> next(dr, 0.0);
        for (std::size_t l = 0; l < dl; l++) {
            double v = vec[l];
            if (v == 0.0) {
                continue;
            }
            for (std::size_t r = 0; r < dr; r++) {
                next[r] += v * mps.site_at(j, l, static_cast<std::size_t>(x), r);
            }
        }
        vec = std::move(next);
    }
    return vec[0];
}

std::vector<std::vector<int>> sample_trajectories(const SppMps& mps, std::uint64_t seed,
                                                  std::size_t count) {
    if (mps.normalization <= 0.0) {
        throw std::invalid_argument("sample_trajectories: nonpositive total weight");
    }
    std::size_t labels = mps.labels();
    std::size_t k = mps.k;

    // Right partial contractions of the label-summed transfer matrices.
    std::vector<std::vector<double>> right(k + 2);
    right[k + 1] = {1.0};
    for (std::size_t j = k + 1; j-- > 0;) {
        std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
        std::vector<double> r(dl, 0.0);
        for (std::size_t l = 0; l < dl; l++) {
            for (std::size_t x = 0; x < labels; x++) {
                for (std::size_t rr = 0; rr < dr; rr++) {
                    r[l] += mps.site_at(j, l, x, rr) * right[j + 1][rr];
                }
            }
        }
        right[j] = std::move(r);
    }

    std::vector<std::vector<int>> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; s++) {
        Rng rng(counter_u64(seed, s, 0x5a9f));
        std::vector<int> traj(k + 1);
        std::vector<double> left(1, 1.0);
        for (std::size_t j = 0; j <= k; j++) {
            std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
            std::vector<double> mass(labels, 0.0);
            std::vector<std::vector<double>> nexts(labels, std::vector<double>(dr, 0.0));
            double total = 0.0;
            for (std::size_t x = 0; x < labels; x++) {
                for (std::size_t l = 0; l < dl; l++) {
                    double v = left[l];
                    if (v == 0.0) {
                        continue;
                    }
                    for (std::size_t r = 0; r < dr; r++) {
                        nexts[x][r] += v * mps.site_at(j, l, x, r);
                    }
                }
                double m = 0.0;
                for (std::size_t r = 0; r < dr; r++) {
                    m += nexts[x][r] * right[j + 1][r];
                }
                if (m < -1e-9) {
                    throw std::runtime_error(
                        "sample_trajectories: conditional mass below -1e-9; invalid MPS");
                }
                mass[x] = std::max(m, 0.0);
                total += mass[x];
            }
            if (total <= 0.0) {
                throw std::runtime_error("sample_trajectories: zero conditional mass");
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
            traj[j] = static_cast<int>(pick);
            left = nexts[pick];
            double scale = mass[pick];
            if (scale > 0.0) {
                for (auto& v : left) {
                    v /= scale;
                }
            }
        }
        out.push_back(std::move(traj));
    }
    return out;
}

std::vector<double> enumerate_weights(const SppMps& mps) {
    std::size_t labels = mps.labels();
    std::size_t total = 1;
    for (std::size_t j = 0; j <= mps.k; j++) {
        if (total > (std::size_t{1} << 24) / labels) {
            throw std::invalid_argument("enumerate_weights: instance too large");
        }
        total *= labels;
    }
    // Depth-first accumulation of left vectors.
    std::vector<double> out(total, 0.0);
    std::vector<int> labels_buf(mps.k + 1, 0);
    struct Frame {
        std::vector<double> vec;
    };
    std::vector<double> start(1, 1.0);
    std::size_t idx = 0;
    // Iterative odometer with cached prefixes.
    std::vector<std::vector<double>> prefix(mps.k + 2);
    prefix[0] = start;
    std::vector<std::size_t> digit(mps.k + 1, 0);
    std::size_t level = 0;
    while (true) {
        while (level <= mps.k) {
            std::size_t j = level;
            std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
            std::vector<double> next(dr, 0.0);
            for (std::size_t l = 0; l < dl; l++) {
                double v = prefix[j][l];
                if (v == 0.0) {
                    continue;
                }
                for (std::size_t r = 0; r < dr; r++) {
                    next[r] += v * mps.site_at(j, l, digit[j], r);
                }
            }
            prefix[j + 1] = std::move(next);
            level++;
        }
        out[idx++] = prefix[mps.k + 1][0];
        // Advance odometer.
        std::size_t j = mps.k + 1;
        while (j-- > 0) {
            if (++digit[j] < labels) {
                level = j;
                break;
            }
            digit[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) {
            break;
        }
    }
    return out;
}

TrajectoryDistribution enumerate_distribution(const SppMps& mps) {
    TrajectoryDistribution dist;
    dist.n = mps.n;
    dist.k = mps.k;
    dist.probabilities = enumerate_weights(mps);
    double total = 0.0;
    for (double w : dist.probabilities) {
        total += w;
    }
    if (total <= 0.0) {
        throw std::runtime_error("enumerate_distribution: nonpositive total weight");
    }
    for (double& w : dist.probabilities) {
        w /= total;
    }
    return dist;
}

ProcessTensorMPO reconstruct_twirled_mpo(const SppMps& mps) {
    std::size_t n = mps.n;
    std::size_t d_s = std::size_t{1} << n;
    std::size_t f = d_s * d_s;
    std::size_t labels = mps.labels();
    std::vector<FusedPauliAction> actions;
    for (std::size_t x = 0; x < labels; x++) {
        actions.push_back(fused_pauli_action(x, n));
    }

    ProcessTensorMPO mpo;
    mpo.d_s = d_s;
    mpo.n = n;
    double norm = 1.0 / static_cast<double>(labels);
    for (std::size_t j = 0; j <= mps.k; j++) {
        std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
        ComplexTensor site({dl, f, dr, f});
        for (std::size_t x = 0; x < labels; x++) {
            const auto& act = actions[x];
            for (std::size_t l = 0; l < dl; l++) {
                for (std::size_t r = 0; r < dr; r++) {
                    double w = mps.site_at(j, l, x, r) * norm;
                    if (w == 0.0) {
                        continue;
                    }
                    // P[alpha = col(beta)] entries: S_x[beta, alpha].
                    for (std::size_t be = 0; be < f; be++) {
                        std::size_t al = act.col[be];
                        site.data[((l * f + al) * dr + r) * f + be] += w * act.coeff[be];
                    }
                }
            }
        }
        mpo.sites.push_back(std::move(site));
    }
    mpo.left_boundary = {cplx(1.0, 0.0)};
    mpo.right_boundary = {cplx(1.0, 0.0)};
    return mpo;
}

std::vector<std::size_t> bond_ranks(const SppMps& mps) {
    std::size_t labels = mps.labels();
    std::vector<std::size_t> ranks;
    if (mps.k == 0) {
        return ranks;
    }
    // Left blocks L_j[tuple, bond] built forward; right blocks built backward.
    std::vector<std::vector<double>> left_blocks(mps.k + 1);
    {
        std::vector<double> cur(1, 1.0);
        std::size_t tuples = 1;
        for (std::size_t j = 0; j < mps.k; j++) {
            std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
            std::vector<double> next(tuples * labels * dr, 0.0);
            for (std::size_t t = 0; t < tuples; t++) {
                for (std::size_t x = 0; x < labels; x++) {
                    for (std::size_t l = 0; l < dl; l++) {
                        double v = cur[t * dl + l];
                        if (v == 0.0) {
                            continue;
                        }
                        for (std::size_t r = 0; r < dr; r++) {
                            next[(t * labels + x) * dr + r] += v * mps.site_at(j, l, x, r);
                        }
                    }
                }
            }
            tuples *= labels;
            left_blocks[j + 1] = next;
            cur = std::move(next);
        }
    }
    std::vector<std::vector<double>> right_blocks(mps.k + 2);
    {
        std::vector<double> cur(1, 1.0);
        std::size_t tuples = 1;
        right_blocks[mps.k + 1] = cur;
        for (std::size_t j = mps.k + 1; j-- > 1;) {
            std::size_t dl = mps.left_dims[j], dr = mps.right_dims[j];
            std::vector<double> next(dl * labels * tuples, 0.0);
            for (std::size_t l = 0; l < dl; l++) {
                for (std::size_t x = 0; x < labels; x++) {
                    for (std::size_t r = 0; r < dr; r++) {
                        double v = mps.site_at(j, l, x, r);
                        if (v == 0.0) {
                            continue;
                        }
                        for (std::size_t t = 0; t < tuples; t++) {
                            next[(l * labels + x) * tuples + t] += v * cur[r * tuples + t];
                        }
                    }
                }
            }
            tuples *= labels;
            right_blocks[j] = next;
            cur = std::move(next);
        }
    }
    for (std::size_t bond = 1; bond <= mps.k; bond++) {
        // Matricization rows: label tuples on sites [0, bond); cols: rest.
        const auto& lb = left_blocks[bond];
        const auto& rb = right_blocks[bond];
        std::size_t bond_dim = mps.right_dims[bond - 1];
        std::size_t rows = lb.size() / bond_dim;
        std::size_t cols = rb.size() / bond_dim;
        ComplexTensor w({rows, cols});
        for (std::size_t r = 0; r < rows; r++) {
            for (std::size_t c = 0; c < cols; c++) {
                double s = 0.0;
                for (std::size_t b = 0; b < bond_dim; b++) {
                    s += lb[r * bond_dim + b] * rb[b * cols + c];
                }
                w.at(r, c) = s;
            }
        }
        std::vector<double> sv = singular_values(w);
        double cutoff = sv.empty() ? 0.0 : 1e-10 * sv.front();
        std::size_t rank = 0;
        for (double s : sv) {
            if (s > cutoff && s > 0.0) {
                rank++;
            }
        }
        ranks.push_back(rank);
    }
    return ranks;
}

EntropyResult relative_entropy(const ComplexTensor& rho, const ComplexTensor& sigma) {
    if (rho.shape != sigma.shape || !rho.is_square_matrix()) {
        throw std::invalid_argument("relative_entropy: shape mismatch");
    }
    HermitianEigen er = hermitian_eigen(rho);
    HermitianEigen es = hermitian_eigen(sigma);
    std::size_t d = rho.rows();
    if (er.eigenvalues.front() < -1e-10 || es.eigenvalues.front() < -1e-10) {
        throw std::invalid_argument("relative_entropy: input not PSD within 1e-10");
    }

    double smax = std::max(es.eigenvalues.back(), 1.0);
    double eps_sigma = 1e-12 * smax;

    // S = sum_i p_i ln p_i - sum_j <w_j|rho|w_j> ln s_j, with the convention
    // 0 ln 0 = 0 and a support-violation flag when rho has mass where sigma
    // vanishes.
    double s1 = 0.0;
    for (double p : er.eigenvalues) {
        if (p > 1e-14) {
            s1 += p * std::log(p);
        }
    }
    double s2 = 0.0;
    double unsupported_mass = 0.0;
    for (std::size_t j = 0; j < d; j++) {
        // mass_j = <w_j| rho |w_j>
        cplx m = 0.0;
        for (std::size_t r = 0; r < d; r++) {
            cplx row = 0.0;
            for (std::size_t c = 0; c < d; c++) {
                row += rho.at(r, c) * es.eigenvectors.at(c, j);
            }
            m += std::conj(es.eigenvectors.at(r, j)) * row;
        }
        double mass = std::max(0.0, m.real());
        double sj = es.eigenvalues[j];
        if (sj <= eps_sigma) {
            unsupported_mass += mass;
        } else {
            s2 += mass * std::log(sj);
        }
    }
    if (unsupported_mass > 1e-10) {
        return EntropyResult{0.0, true};
    }
    return EntropyResult{std::max(0.0, s1 - s2), false};
}

namespace {

void require_unit_trace(const ChoiOperator& choi, const char* what) {
    if (std::abs(choi.matrix.trace() - cplx(1.0, 0.0)) > 1e-8) {
        throw std::invalid_argument(std::string(what) + ": Choi must be normalized to unit trace");
    }
}

}  // namespace

EntropyResult gqmi(const ChoiOperator& choi) {
    require_unit_trace(choi, "gqmi");
    std::size_t q = choi.qubit_factors();
    std::size_t per_slot = 2 * choi.n;
    std::vector<std::size_t> dims(q, 2);
    ComplexTensor markov;
    for (std::size_t j = 0; j <= choi.slots; j++) {
        std::vector<std::size_t> traced;
        for (std::size_t fct = 0; fct < q; fct++) {
            if (fct / per_slot != j) {
                traced.push_back(fct);
            }
        }
        ComplexTensor marginal = partial_trace(choi.matrix, dims, traced);
        markov = (j == 0) ? marginal : kron(markov, marginal);
    }
    return relative_entropy(choi.matrix, markov);
}

EntropyResult twirl_rel_entropy(const ChoiOperator& choi) {
    require_unit_trace(choi, "twirl_rel_entropy");
    ChoiOperator twirled = dense_multi_time_twirl(choi);
    return relative_entropy(choi.matrix, twirled.matrix);
}

WorkedModel worked_model_from_string(const std::string& name) {
    if (name == "heisenberg") {
        return WorkedModel::kHeisenberg;
    }
    if (name == "crx") {
        return WorkedModel::kControlledRx;
    }
    if (name == "heisenberg_field") {
        return WorkedModel::kHeisenbergField;
    }
    throw std::invalid_argument("unknown worked model: " + name);
}

SEDilation worked_hamiltonian(WorkedModel kind, double theta, std::size_t slots) {
    ComplexTensor x = pauli_matrix(1), y = pauli_matrix(2), z = pauli_matrix(3);
    ComplexTensor id = ComplexTensor::identity(2);
    // Joint space is H_E (x) H_S, environment factor index-major.
    auto exchange = [&]() {
        ComplexTensor h = kron(x, x);
        h += kron(y, y);
        h += kron(z, z);
        return h;
    };
    ComplexTensor h({4, 4});
    const double pi = 3.14159265358979323846;
    switch (kind) {
        case WorkedModel::kHeisenberg:
            h = exchange() * cplx(-0.5 * theta, 0.0);
            break;
        case WorkedModel::kControlledRx: {
            ComplexTensor term = kron(id, x) - kron(z, x);
            h = term * cplx(-0.5 * theta, 0.0);
            break;
        }
        case WorkedModel::kHeisenbergField: {
            ComplexTensor field = x + y;
            field += z;
            h = exchange() * cplx(-0.25 * pi, 0.0) - kron(id, field) * cplx(theta, 0.0);
            break;
        }
    }
    SEDilation d;
    d.d_s = 2;
    d.d_e = 2;
    ComplexTensor plus({2, 2});
    plus.at(0, 0) = 0.5;
    plus.at(0, 1) = 0.5;
    plus.at(1, 0) = 0.5;
    plus.at(1, 1) = 0.5;
    d.env_init = plus;
    ComplexTensor u = expm_hermitian(h);
    for (std::size_t j = 0; j <= slots; j++) {
        d.unitaries.push_back(u);
    }
    return d;
}

std::string SppMps::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    std::vector<std::size_t> bond_dims;
    for (std::size_t s = 0; s + 1 <= k; s++) {
        bond_dims.push_back(right_dims[s]);
    }
    j["bond_dims"] = bond_dims;
    j["normalization"] = normalization;
    j["site_tensors"] = nlohmann::json::array();
    for (std::size_t s = 0; s <= k; s++) {
        nlohmann::json site;
        site["left"] = left_dims[s];
        site["right"] = right_dims[s];
        site["data"] = site_tensors[s];
        j["site_tensors"].push_back(site);
    }
    return j.dump();
}

SppMps SppMps::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SppMps mps;
    mps.n = j.at("n").get<std::size_t>();
    mps.k = j.at("k").get<std::size_t>();
    mps.normalization = j.at("normalization").get<double>();
    const auto& sites = j.at("site_tensors");
    if (!sites.is_array() || sites.size() != mps.k + 1) {
        throw std::invalid_argument("SppMps JSON: wrong number of sites");
    }
    for (const auto& s : sites) {
        mps.left_dims.push_back(s.at("left").get<std::size_t>());
        mps.right_dims.push_back(s.at("right").get<std::size_t>());
        mps.site_tensors.push_back(s.at("data").get<std::vector<double>>());
    }
    for (std::size_t s = 0; s <= mps.k; s++) {
        if (mps.site_tensors[s].size() != mps.left_dims[s] * mps.labels() * mps.right_dims[s]) {
            throw std::invalid_argument("SppMps JSON: site tensor size mismatch");
        }
    }
    return mps;
}

}  // namespace sppsim
