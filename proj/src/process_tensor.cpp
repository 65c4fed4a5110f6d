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

#include "sppsim/process_tensor.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sppsim/linalg.hpp"
#include "sppsim/pauli.hpp"

namespace sppsim {

namespace {

constexpr std::size_t kDenseChoiCap = 4096;

std::size_t int_log2(std::size_t v) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < v) {
        n++;
    }
    if ((std::size_t{1} << n) != v) {
        throw std::invalid_argument("dimension must be a power of two");
    }
    return n;
}

}  // namespace

std::size_t SEDilation::n_qubits() const {
    return int_log2(d_s);
}

void SEDilation::validate() const {
    if (unitaries.empty()) {
        throw std::invalid_argument("SEDilation: at least one unitary required");
    }
    (void)int_log2(d_s);
    std::size_t joint = d_e * d_s;
    for (const auto& u : unitaries) {
        if (!u.is_square_matrix() || u.rows() != joint) {
            throw std::invalid_argument("SEDilation: unitary dimension mismatch");
        }
        ComplexTensor gram = matmul(u.dagger(), u);
        if (max_abs_diff(gram, ComplexTensor::identity(joint)) > 1e-10) {
            throw std::invalid_argument("SEDilation: joint operator not unitary within 1e-10");
        }
    }
    if (!env_init.is_square_matrix() || env_init.rows() != d_e) {
        throw std::invalid_argument("SEDilation: env_init dimension mismatch");
    }
    if (max_abs_diff(env_init, env_init.dagger()) > 1e-12) {
        throw std::invalid_argument("SEDilation: env_init not Hermitian within 1e-12");
    }
    if (std::abs(env_init.trace() - cplx(1.0, 0.0)) > 1e-12) {
        throw std::invalid_argument("SEDilation: env_init trace must be 1 within 1e-12");
    }
    HermitianEigen eig = hermitian_eigen(env_init);
    if (eig.eigenvalues.front() < -1e-12) {
        throw std::invalid_argument("SEDilation: env_init not PSD within 1e-12");
    }
}

ChoiOperator ChoiOperator::normalized() const {
    ChoiOperator out = *this;
    cplx tr = matrix.trace();
    if (std::abs(tr) < 1e-14) {
        throw std::runtime_error("ChoiOperator::normalized: trace is zero");
    }
    out.matrix *= 1.0 / tr;
    out.normalization = Normalization::kUnitTrace;
    return out;
}

ProcessTensorMPO build_mpo(const SEDilation& dilation) {
    dilation.validate();
    ProcessTensorMPO mpo;
    mpo.d_s = dilation.d_s;
    mpo.n = dilation.n_qubits();
    for (const auto& u : dilation.unitaries) {
        mpo.sites.push_back(rft_two_factor(unitary_superop(u), dilation.d_e, dilation.d_s));
    }
    mpo.left_boundary = vectorize(dilation.env_init).data;
    mpo.right_boundary = vectorize(ComplexTensor::identity(dilation.d_e)).data;
    return mpo;
}

ChoiOperator mpo_to_choi(const ProcessTensorMPO& mpo) {
    std::size_t k = mpo.slots();
    std::size_t f = mpo.d_s * mpo.d_s;  // fused system leg dimension
    double log_dim = static_cast<double>(k + 1) * std::log2(static_cast<double>(f));
    if (log_dim > std::log2(static_cast<double>(kDenseChoiCap)) + 1e-9) {
        throw std::invalid_argument("mpo_to_choi: dense Choi exceeds the 4096-dimension cap");
    }

    // Left-to-right contraction carrying [bond, (alpha_0 beta_0 ... )].
    std::vector<cplx> acc = mpo.left_boundary;  // [bond], open-leg block size 1
    std::size_t block = 1;
    for (std::size_t j = 0; j <= k; j++) {
        const ComplexTensor& site = mpo.sites[j];
        std::size_t dl = site.shape[0], dr = site.shape[2];
        if (acc.size() != dl * block) {
            throw std::invalid_argument("mpo_to_choi: bond mismatch along the chain");
        }
        std::vector<cplx> next(dr * block * f * f, cplx(0.0, 0.0));
        // next[mu', prev, alpha, beta] = sum_mu acc[mu, prev] site[mu, alpha, mu', beta]
        for (std::size_t mu = 0; mu < dl; mu++) {
            for (std::size_t prev = 0; prev < block; prev++) {
                cplx a = acc[mu * block + prev];
                if (a == cplx(0.0, 0.0)) {
                    continue;
                }
                for (std::size_t al = 0; al < f; al++) {
                    for (std::size_t mup = 0; mup < dr; mup++) {
                        const cplx* srow = &site.data[((mu * f + al) * dr + mup) * f];
                        cplx* drow = &next[((mup * block + prev) * f + al) * f];
                        for (std::size_t be = 0; be < f; be++) {
                            drow[be] += a * srow[be];
                        }
                    }
                }
            }
        }
        acc = std::move(next);
        block *= f * f;
    }
    // Close the final bond.
    std::size_t dr_last = mpo.sites[k].shape[2];
    std::vector<cplx> closed(block, cplx(0.0, 0.0));
    for (std::size_t mu = 0; mu < dr_last; mu++) {
        cplx t = mpo.right_boundary[mu];
        if (t == cplx(0.0, 0.0)) {
            continue;
        }
        for (std::size_t prev = 0; prev < block; prev++) {
            closed[prev] += t * acc[mu * block + prev];
        }
    }

    // closed is indexed [alpha_0, beta_0, alpha_1, beta_1, ...] slot-major,
    // fused legs bra-major. Scatter into the Choi matrix and apply the
    // 2^{n(k+1)} trace-convention scale.
    std::size_t d = mpo.d_s;
    std::size_t dim = 1;
    for (std::size_t j = 0; j <= k; j++) {
        dim *= d * d;
    }
    ChoiOperator choi;
    choi.slots = k;
    choi.n = mpo.n;
    choi.normalization = ChoiOperator::Normalization::kUnnormalized;
    choi.matrix = ComplexTensor({dim, dim});
    double scale = std::pow(2.0, static_cast<double>(mpo.n * (k + 1)));

    std::vector<std::size_t> digits(2 * (k + 1), 0);  // (a'0,a0,b'0,b0,a'1,...) pairs
    for (std::size_t flat = 0; flat < closed.size(); flat++) {
        // Decompose flat into per-slot fused legs.
        std::size_t rem = flat;
        std::size_t row = 0, col = 0;
        for (std::size_t j = 0; j <= k; j++) {
            std::size_t stride = 1;
            for (std::size_t jj = j + 1; jj <= k; jj++) {
                stride *= d * d * d * d;
            }
            std::size_t slot = (rem / stride);
            rem %= stride;
            std::size_t alpha = slot / (d * d);
            std::size_t beta = slot % (d * d);
            std::size_t ap = alpha / d, a = alpha % d;
            std::size_t bp = beta / d, b = beta % d;
            row = ((row * d) + a) * d + b;
            col = ((col * d) + ap) * d + bp;
        }
        choi.matrix.at(row, col) = closed[flat] * scale;
    }
    return choi;
}

ComplexTensor superop_to_choi_matrix(const ComplexTensor& superop, std::size_t d) {
    if (!superop.is_square_matrix() || superop.rows() != d * d) {
        throw std::invalid_argument("superop_to_choi_matrix: dimension mismatch");
    }
    ComplexTensor choi({d * d, d * d});
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t ap = 0; ap < d; ap++) {
            for (std::size_t b = 0; b < d; b++) {
                for (std::size_t bp = 0; bp < d; bp++) {
                    choi.at(a * d + b, ap * d + bp) = superop.at(bp * d + b, ap * d + a);
                }
            }
        }
    }
    return choi;
}

ComplexTensor apply_instruments(const ProcessTensorMPO& mpo, const ComplexTensor& rho_in,
                                const std::vector<ComplexTensor>& instruments) {
    std::size_t k = mpo.slots();
    std::size_t d = mpo.d_s;
    std::size_t f = d * d;
    if (instruments.size() != k) {
        throw std::invalid_argument("apply_instruments: expected k instruments");
    }
    if (!rho_in.is_square_matrix() || rho_in.rows() != d) {
        throw std::invalid_argument("apply_instruments: rho_in dimension mismatch");
    }
    for (const auto& inst : instruments) {
        if (!inst.is_square_matrix() || inst.rows() != f) {
            throw std::invalid_argument("apply_instruments: instrument dimension mismatch");
        }
        ComplexTensor choi = superop_to_choi_matrix(inst, d);
        HermitianEigen eig = hermitian_eigen(choi);
        double scale = std::max(1.0, choi.max_abs());
        if (max_abs_diff(choi, choi.dagger()) > 1e-10 * scale ||
            eig.eigenvalues.front() < -1e-10 * scale) {
            throw std::invalid_argument("apply_instruments: instrument is not CP within 1e-10");
        }
    }

    // W[bond, system_vec]
    std::vector<cplx> rho_vec = vectorize(rho_in).data;
    std::size_t dl0 = mpo.sites[0].shape[0];
    std::vector<cplx> w(dl0 * f);
    for (std::size_t mu = 0; mu < dl0; mu++) {
        for (std::size_t al = 0; al < f; al++) {
            w[mu * f + al] = mpo.left_boundary[mu] * rho_vec[al];
        }
    }
    for (std::size_t j = 0; j <= k; j++) {
        const ComplexTensor& site = mpo.sites[j];
        std::size_t dl = site.shape[0], dr = site.shape[2];
        std::vector<cplx> next(dr * f, cplx(0.0, 0.0));
        for (std::size_t mu = 0; mu < dl; mu++) {
            for (std::size_t al = 0; al < f; al++) {
                cplx amp = w[mu * f + al];
                if (amp == cplx(0.0, 0.0)) {
                    continue;
                }
                for (std::size_t mup = 0; mup < dr; mup++) {
                    const cplx* srow = &site.data[((mu * f + al) * dr + mup) * f];
                    cplx* drow = &next[mup * f];
                    for (std::size_t be = 0; be < f; be++) {
                        drow[be] += amp * srow[be];
                    }
                }
            }
        }
        w = std::move(next);
        if (j < k) {
            // Apply the instrument superoperator on the open system leg.
            const ComplexTensor& inst = instruments[j];
            std::vector<cplx> post(dr * f, cplx(0.0, 0.0));
            for (std::size_t mu = 0; mu < dr; mu++) {
                for (std::size_t x = 0; x < f; x++) {
                    cplx s = 0.0;
                    for (std::size_t y = 0; y < f; y++) {
                        s += inst.at(x, y) * w[mu * f + y];
                    }
                    post[mu * f + x] = s;
                }
            }
            w = std::move(post);
        }
    }
    std::size_t dr_last = mpo.sites[k].shape[2];
    ComplexTensor out_vec({f});
    for (std::size_t mu = 0; mu < dr_last; mu++) {
        cplx t = mpo.right_boundary[mu];
        for (std::size_t be = 0; be < f; be++) {
            out_vec.data[be] += t * w[mu * f + be];
        }
    }
    return devectorize(out_vec);
}

CausalityReport check_causality(const ChoiOperator& choi) {
    std::size_t k = choi.slots;
    std::size_t n = choi.n;
    std::size_t q_factors = choi.qubit_factors();
    std::vector<cplx> coeffs = pauli_coefficients(choi.matrix, q_factors);

    double convention_trace = std::pow(4.0, static_cast<double>(n * (k + 1)));
    CausalityReport report;
    report.family_count = (k + 1) * ((std::size_t{1} << (2 * n)) - 1);
    report.trace_error = std::abs(coeffs[0] - cplx(convention_trace, 0.0)) / convention_trace;

    // Composite base-4 index over qubit factors, factor 0 most significant.
    // Slot j occupies factors [2nj, 2nj + n) for the input and
    // [2nj + n, 2nj + 2n) for the output.
    double worst = report.trace_error;
    std::size_t slot_weight = 2 * n;
    for (std::size_t j = 0; j <= k; j++) {
        std::size_t prefix_digits = slot_weight * j;
        std::size_t prefix_count = std::size_t{1} << (2 * prefix_digits);
        std::size_t q_count = std::size_t{1} << (2 * n);
        std::size_t tail_digits = q_factors - prefix_digits - n;
        for (std::size_t qq = 1; qq < q_count; qq++) {
            for (std::size_t prefix = 0; prefix < prefix_count; prefix++) {
                std::size_t idx = prefix;
                idx = (idx << (2 * n)) | qq;
                idx <<= 2 * (tail_digits);
                double v = std::abs(coeffs[idx]) / convention_trace;
                if (v > worst) {
                    worst = v;
                }
            }
        }
    }
    report.max_violation = worst;
    return report;
}

PositivityReport check_positivity(const ChoiOperator& choi) {
    ComplexTensor herm = (choi.matrix + choi.matrix.dagger()) * 0.5;
    HermitianEigen eig = hermitian_eigen(herm);
    return PositivityReport{eig.eigenvalues.front()};
}

namespace {

ComplexTensor matrix_from_json(const nlohmann::json& arr, std::size_t dim, const char* what) {
    if (!arr.is_array() || arr.size() != dim * dim) {
        throw std::invalid_argument(std::string("dilation JSON: bad ") + what);
    }
    ComplexTensor m({dim, dim});
    for (std::size_t i = 0; i < dim * dim; i++) {
        const auto& e = arr[i];
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument(std::string("dilation JSON: entries of ") + what +
                                        " must be [re, im] pairs");
        }
        m.data[i] = cplx(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

}  // namespace

SEDilation dilation_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SEDilation d;
    d.d_s = j.at("d_S").get<std::size_t>();
    d.d_e = j.at("d_E").get<std::size_t>();
    d.env_init = matrix_from_json(j.at("env_init"), d.d_e, "env_init");
    const auto& us = j.at("unitaries");
    if (!us.is_array() || us.empty()) {
        throw std::invalid_argument("dilation JSON: unitaries must be a nonempty array");
    }
    for (const auto& u : us) {
        d.unitaries.push_back(matrix_from_json(u, d.d_e * d.d_s, "unitary"));
    }
    d.validate();
    return d;
}

SEDilation load_dilation(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("load_dilation: cannot open " + path);
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return dilation_from_json(ss.str());
}

std::string dilation_to_json(const SEDilation& dilation) {
    nlohmann::json j;
    j["d_S"] = dilation.d_s;
    j["d_E"] = dilation.d_e;
    auto matrix_to_json = [](const ComplexTensor& m) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : m.data) {
            arr.push_back({v.real(), v.imag()});
        }
        return arr;
    };
    j["env_init"] = matrix_to_json(dilation.env_init);
    j["unitaries"] = nlohmann::json::array();
    for (const auto& u : dilation.unitaries) {
        j["unitaries"].push_back(matrix_to_json(u));
    }
    return j.dump(2);
}

}  // namespace sppsim
