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

#include "sppsim/complex_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sppsim {

namespace {

std::size_t product(const std::vector<std::size_t>& shape) {
    std::size_t p = 1;
    for (std::size_t d : shape) {
        p *= d;
    }
    return p;
}

}  // namespace

ComplexTensor::ComplexTensor(std::vector<std::size_t> shape_in) : shape(std::move(shape_in)) {
    for (std::size_t d : shape) {
        if (d < 1) {
            throw std::invalid_argument("ComplexTensor: axis dimensions must be >= 1");
        }
    }
    data.assign(product(shape), cplx(0.0, 0.0));
}

ComplexTensor ComplexTensor::zeros(std::vector<std::size_t> shape) {
    return ComplexTensor(std::move(shape));
}

ComplexTensor ComplexTensor::identity(std::size_t dim) {
    ComplexTensor t({dim, dim});
    for (std::size_t i = 0; i < dim; i++) {
        t.at(i, i) = 1.0;
    }
    return t;
}

ComplexTensor ComplexTensor::reshaped(std::vector<std::size_t> new_shape) const {
    if (product(new_shape) != data.size()) {
        throw std::invalid_argument("reshape: total size mismatch");
    }
    ComplexTensor t;
    t.shape = std::move(new_shape);
    t.data = data;
    return t;
}

ComplexTensor ComplexTensor::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != shape.size()) {
        throw std::invalid_argument("permute: rank mismatch");
    }
    std::vector<std::size_t> new_shape(perm.size());
    for (std::size_t i = 0; i < perm.size(); i++) {
        new_shape[i] = shape[perm[i]];
    }
    ComplexTensor out(new_shape);

    // Strides of the input, then walk output indices in row-major order.
    std::size_t r = shape.size();
    std::vector<std::size_t> in_strides(r, 1);
    for (std::size_t i = r; i-- > 1;) {
        in_strides[i - 1] = in_strides[i] * shape[i];
    }
    std::vector<std::size_t> idx(r, 0);
    for (std::size_t flat = 0; flat < out.data.size(); flat++) {
        std::size_t src = 0;
        for (std::size_t i = 0; i < r; i++) {
            src += idx[i] * in_strides[perm[i]];
        }
        out.data[flat] = data[src];
        for (std::size_t i = r; i-- > 0;) {
            if (++idx[i] < new_shape[i]) {
                break;
            }
            idx[i] = 0;
        }
    }
    return out;
}

ComplexTensor ComplexTensor::transposed() const {
    if (!is_matrix()) {
        throw std::invalid_argument("transpose: matrix expected");
    }
    return permuted({1, 0});
}

ComplexTensor ComplexTensor::conjugated() const {
    ComplexTensor t = *this;
    for (auto& v : t.data) {
        v = std::conj(v);
    }
    return t;
}

ComplexTensor ComplexTensor::dagger() const {
    return transposed().conjugated();
}

ComplexTensor ComplexTensor::operator+(const ComplexTensor& other) const {
    if (shape != other.shape) {
        throw std::invalid_argument("tensor add: shape mismatch");
    }
    ComplexTensor t = *this;
    for (std::size_t i = 0; i < data.size(); i++) {
        t.data[i] += other.data[i];
    }
    return t;
}

ComplexTensor ComplexTensor::operator-(const ComplexTensor& other) const {
    if (shape != other.shape) {
        throw std::invalid_argument("tensor sub: shape mismatch");
    }
    ComplexTensor t = *this;
    for (std::size_t i = 0; i < data.size(); i++) {
        t.data[i] -= other.data[i];
    }
    return t;
}

ComplexTensor ComplexTensor::operator*(cplx scalar) const {
    ComplexTensor t = *this;
    t *= scalar;
    return t;
}

ComplexTensor& ComplexTensor::operator*=(cplx scalar) {
    for (auto& v : data) {
        v *= scalar;
    }
    return *this;
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& other) {
    if (shape != other.shape) {
        throw std::invalid_argument("tensor add: shape mismatch");
    }
    for (std::size_t i = 0; i < data.size(); i++) {
        data[i] += other.data[i];
    }
    return *this;
}

cplx ComplexTensor::trace() const {
    if (!is_square_matrix()) {
        throw std::invalid_argument("trace: square matrix expected");
    }
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows(); i++) {
        t += at(i, i);
    }
    return t;
}

double ComplexTensor::max_abs() const {
    double m = 0.0;
    for (const auto& v : data) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double ComplexTensor::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b) {
    if (!a.is_matrix() || !b.is_matrix() || a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: incompatible shapes");
    }
    std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    ComplexTensor out({m, n});
    for (std::size_t i = 0; i < m; i++) {
        for (std::size_t p = 0; p < k; p++) {
            cplx av = a.at(i, p);
            if (av == cplx(0.0, 0.0)) {
                continue;
            }
            const cplx* brow = &b.data[p * n];
            cplx* orow = &out.data[i * n];
            for (std::size_t j = 0; j < n; j++) {
                orow[j] += av * brow[j];
            }
        }
    }
    return out;
}

ComplexTensor kron(const ComplexTensor& a, const ComplexTensor& b) {
    if (!a.is_matrix() || !b.is_matrix()) {
        throw std::invalid_argument("kron: matrices expected");
    }
    std::size_t ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    ComplexTensor out({ra * rb, ca * cb});
    for (std::size_t ia = 0; ia < ra; ia++) {
        for (std::size_t ja = 0; ja < ca; ja++) {
            cplx av = a.at(ia, ja);
            if (av == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t ib = 0; ib < rb; ib++) {
                for (std::size_t jb = 0; jb < cb; jb++) {
                    out.at(ia * rb + ib, ja * cb + jb) = av * b.at(ib, jb);
                }
            }
        }
    }
    return out;
}

ComplexTensor vectorize(const ComplexTensor& op) {
    if (!op.is_square_matrix()) {
        throw std::invalid_argument("vectorize: square matrix expected");
    }
    std::size_t d = op.rows();
    ComplexTensor v({d * d});
    for (std::size_t c = 0; c < d; c++) {
        for (std::size_t r = 0; r < d; r++) {
            v.data[c * d + r] = op.at(r, c);
        }
    }
    return v;
}

ComplexTensor devectorize(const ComplexTensor& vec) {
    if (vec.rank() != 1) {
        throw std::invalid_argument("devectorize: vector expected");
    }
    std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(double(vec.size()))));
    if (d * d != vec.size()) {
        throw std::invalid_argument("devectorize: length is not a perfect square");
    }
    ComplexTensor m({d, d});
    for (std::size_t c = 0; c < d; c++) {
        for (std::size_t r = 0; r < d; r++) {
            m.at(r, c) = vec.data[c * d + r];
        }
    }
    return m;
}

ComplexTensor partial_trace(const ComplexTensor& op, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& traced) {
    if (!op.is_square_matrix()) {
        throw std::invalid_argument("partial_trace: square matrix expected");
    }
    std::size_t total = product(dims);
    if (total != op.rows()) {
        throw std::invalid_argument("partial_trace: dims do not multiply to matrix dimension");
    }
    std::size_t nf = dims.size();
    std::vector<bool> is_traced(nf, false);
    for (std::size_t t : traced) {
        if (t >= nf) {
            throw std::invalid_argument("partial_trace: invalid traced axis");
        }
        if (is_traced[t]) {
            throw std::invalid_argument("partial_trace: duplicate traced axis");
        }
        is_traced[t] = true;
    }

    std::vector<std::size_t> strides(nf, 1);
    for (std::size_t i = nf; i-- > 1;) {
        strides[i - 1] = strides[i] * dims[i];
    }

    std::size_t kept_dim = 1;
    std::vector<std::size_t> kept_axes;
    for (std::size_t i = 0; i < nf; i++) {
        if (!is_traced[i]) {
            kept_dim *= dims[i];
            kept_axes.push_back(i);
        }
    }
    std::size_t traced_dim = total / kept_dim;

    // Enumerate kept and traced multi-indices, composing full flat indices.
    std::vector<std::size_t> kept_offsets(kept_dim, 0);
    {
        std::vector<std::size_t> idx(kept_axes.size(), 0);
        for (std::size_t f = 0; f < kept_dim; f++) {
            std::size_t off = 0;
            for (std::size_t i = 0; i < kept_axes.size(); i++) {
                off += idx[i] * strides[kept_axes[i]];
            }
            kept_offsets[f] = off;
            for (std::size_t i = kept_axes.size(); i-- > 0;) {
                if (++idx[i] < dims[kept_axes[i]]) {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
    std::vector<std::size_t> traced_offsets(traced_dim, 0);
    {
        std::vector<std::size_t> tr_axes;
        for (std::size_t i = 0; i < nf; i++) {
            if (is_traced[i]) {
                tr_axes.push_back(i);
            }
        }
        std::vector<std::size_t> idx(tr_axes.size(), 0);
        for (std::size_t f = 0; f < traced_dim; f++) {
            std::size_t off = 0;
            for (std::size_t i = 0; i < tr_axes.size(); i++) {
                off += idx[i] * strides[tr_axes[i]];
            }
            traced_offsets[f] = off;
            for (std::size_t i = tr_axes.size(); i-- > 0;) {
                if (++idx[i] < dims[tr_axes[i]]) {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    ComplexTensor out({kept_dim, kept_dim});
    for (std::size_t r = 0; r < kept_dim; r++) {
        for (std::size_t c = 0; c < kept_dim; c++) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < traced_dim; t++) {
                s += op.at(kept_offsets[r] + traced_offsets[t], kept_offsets[c] + traced_offsets[t]);
            }
            out.at(r, c) = s;
        }
    }
    return out;
}

ComplexTensor rft_two_factor(const ComplexTensor& superop, std::size_t d_first,
                             std::size_t d_second) {
    std::size_t joint = d_first * d_second;
    std::size_t dim = joint * joint;
    if (!superop.is_square_matrix() || superop.rows() != dim) {
        throw std::invalid_argument("rft_two_factor: superoperator/shape mismatch");
    }
    std::size_t f1 = d_first * d_first;
    std::size_t f2 = d_second * d_second;
    ComplexTensor out({f1, f2, f1, f2});
    // Superoperator composite index on the joint space is (bra_joint, ket_joint)
    // bra-major, with joint index (first, second) first-major.
    auto fused_joint = [&](std::size_t ep, std::size_t sp, std::size_t e, std::size_t s) {
        return (ep * d_second + sp) * joint + (e * d_second + s);
    };
    std::size_t out_idx = 0;
    for (std::size_t eip = 0; eip < d_first; eip++) {
        for (std::size_t ei = 0; ei < d_first; ei++) {
            for (std::size_t sip = 0; sip < d_second; sip++) {
                for (std::size_t si = 0; si < d_second; si++) {
                    for (std::size_t eop = 0; eop < d_first; eop++) {
                        for (std::size_t eo = 0; eo < d_first; eo++) {
                            for (std::size_t sop = 0; sop < d_second; sop++) {
                                for (std::size_t so = 0; so < d_second; so++) {
                                    out.data[out_idx++] = superop.at(
                                        fused_joint(eop, sop, eo, so), fused_joint(eip, sip, ei, si));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

ComplexTensor rft_one_factor(const ComplexTensor& superop) {
    if (!superop.is_square_matrix()) {
        throw std::invalid_argument("rft_one_factor: square matrix expected");
    }
    return superop.transposed();
}

ComplexTensor rft_two_factor_inverse(const ComplexTensor& tensor, std::size_t d_first,
                                     std::size_t d_second) {
    std::size_t f1 = d_first * d_first;
    std::size_t f2 = d_second * d_second;
    if (tensor.shape != std::vector<std::size_t>{f1, f2, f1, f2}) {
        throw std::invalid_argument("rft_two_factor_inverse: tensor/shape mismatch");
    }
    std::size_t joint = d_first * d_second;
    std::size_t dim = joint * joint;
    ComplexTensor superop({dim, dim});
    auto fused_joint = [&](std::size_t ep, std::size_t sp, std::size_t e, std::size_t s) {
        return (ep * d_second + sp) * joint + (e * d_second + s);
    };
    std::size_t in_idx = 0;
    for (std::size_t eip = 0; eip < d_first; eip++) {
        for (std::size_t ei = 0; ei < d_first; ei++) {
            for (std::size_t sip = 0; sip < d_second; sip++) {
                for (std::size_t si = 0; si < d_second; si++) {
                    for (std::size_t eop = 0; eop < d_first; eop++) {
                        for (std::size_t eo = 0; eo < d_first; eo++) {
                            for (std::size_t sop = 0; sop < d_second; sop++) {
                                for (std::size_t so = 0; so < d_second; so++) {
                                    superop.at(fused_joint(eop, sop, eo, so),
                                               fused_joint(eip, sip, ei, si)) = tensor.data[in_idx++];
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return superop;
}

ComplexTensor unitary_superop(const ComplexTensor& u) {
    return kron(u.conjugated(), u);
}

ComplexTensor sandwich_superop(const ComplexTensor& a, const ComplexTensor& b) {
    return kron(b.transposed(), a);
}

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) {
    if (a.shape != b.shape) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); i++) {
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    }
    return m;
}

}  // namespace sppsim
