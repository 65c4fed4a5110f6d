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

#include "sppsim/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sppsim {

RealMatrix real_matmul(const RealMatrix& x, const RealMatrix& y) {
    if (x.n != y.n) {
        throw std::invalid_argument("real_matmul: dimension mismatch");
    }
    RealMatrix out(x.n);
    for (std::size_t i = 0; i < x.n; i++) {
        for (std::size_t k = 0; k < x.n; k++) {
            double v = x.at(i, k);
            if (v == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < x.n; j++) {
                out.at(i, j) += v * y.at(k, j);
            }
        }
    }
    return out;
}

RealMatrix real_add(const RealMatrix& x, const RealMatrix& y, double sx, double sy) {
    if (x.n != y.n) {
        throw std::invalid_argument("real_add: dimension mismatch");
    }
    RealMatrix out(x.n);
    for (std::size_t i = 0; i < x.a.size(); i++) {
        out.a[i] = sx * x.a[i] + sy * y.a[i];
    }
    return out;
}

// ============================================================================
// Hermitian eigenproblem: cyclic complex Jacobi
// ============================================================================

HermitianEigen hermitian_eigen(const ComplexTensor& m, double tol) {
    if (!m.is_square_matrix()) {
        throw std::invalid_argument("hermitian_eigen: square matrix expected");
    }
    std::size_t n = m.rows();
    ComplexTensor a = m;
    // Symmetrize rounding noise; callers validate Hermiticity where required.
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i; j < n; j++) {
            cplx v = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = v;
            a.at(j, i) = std::conj(v);
        }
        a.at(i, i) = a.at(i, i).real();
    }
    ComplexTensor v = ComplexTensor::identity(n);
    double fro = a.frobenius_norm();
    double target = tol * std::max(1.0, fro);

    std::size_t max_sweeps = 100 * std::max<std::size_t>(n, 1);
    for (std::size_t sweep = 0; sweep < max_sweeps; sweep++) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = i + 1; j < n; j++) {
                off += 2.0 * std::norm(a.at(i, j));
            }
        }
        if (std::sqrt(off) <= target) {
            std::vector<double> evals(n);
            for (std::size_t i = 0; i < n; i++) {
                evals[i] = a.at(i, i).real();
            }
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(),
                      [&](std::size_t x, std::size_t y) { return evals[x] < evals[y]; });
            HermitianEigen sorted;
            sorted.eigenvalues.resize(n);
            sorted.eigenvectors = ComplexTensor({n, n});
            for (std::size_t c = 0; c < n; c++) {
                sorted.eigenvalues[c] = evals[order[c]];
                for (std::size_t r = 0; r < n; r++) {
                    sorted.eigenvectors.at(r, c) = v.at(r, order[c]);
                }
            }
            return sorted;
        }

        for (std::size_t p = 0; p < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                cplx apq = a.at(p, q);
                double b = std::abs(apq);
                if (b == 0.0) {
                    continue;
                }
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                cplx phase = apq / b;  // e^{i phi}

                // Classic Jacobi angle on the phase-rotated real 2x2 block.
                double tau = (aqq - app) / (2.0 * b);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                // Unitary column transform on (p, q); a <- V^dag a V.
                cplx vp_p = c;
                cplx vq_p = -s * std::conj(phase);
                cplx vp_q = s * phase;
                cplx vq_q = c;
                for (std::size_t r = 0; r < n; r++) {
                    cplx arp = a.at(r, p), arq = a.at(r, q);
                    a.at(r, p) = arp * vp_p + arq * vq_p;
                    a.at(r, q) = arp * vp_q + arq * vq_q;
                }
                for (std::size_t cc = 0; cc < n; cc++) {
                    cplx apc = a.at(p, cc), aqc = a.at(q, cc);
                    a.at(p, cc) = std::conj(vp_p) * apc + std::conj(vq_p) * aqc;
                    a.at(q, cc) = std::conj(vp_q) * apc + std::conj(vq_q) * aqc;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = a.at(p, p).real();
                a.at(q, q) = a.at(q, q).real();
                for (std::size_t r = 0; r < n; r++) {
                    cplx vrp = v.at(r, p), vrq = v.at(r, q);
                    v.at(r, p) = vrp * vp_p + vrq * vq_p;
                    v.at(r, q) = vrp * vp_q + vrq * vq_q;
                }
            }
        }
    }
    throw std::runtime_error("hermitian_eigen: Jacobi failed to converge within sweep cap");
}

ComplexTensor expm_hermitian(const ComplexTensor& h) {
    if (!h.is_square_matrix()) {
        throw std::invalid_argument("expm_hermitian: square matrix expected");
    }
    double scale = std::max(1.0, h.max_abs());
    double herm_err = max_abs_diff(h, h.dagger());
    if (herm_err > 1e-12 * scale) {
        throw std::invalid_argument("expm_hermitian: input is not Hermitian within 1e-12");
    }
    HermitianEigen eig = hermitian_eigen(h);
    std::size_t n = h.rows();
    ComplexTensor out({n, n});
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; k++) {
                cplx ph = std::exp(cplx(0.0, -eig.eigenvalues[k]));
                s += eig.eigenvectors.at(r, k) * ph * std::conj(eig.eigenvectors.at(c, k));
            }
            out.at(r, c) = s;
        }
    }
    return out;
}

// ============================================================================
// Real nonsymmetric spectrum: Householder Hessenberg + Francis QR
// ============================================================================

namespace {

void hessenberg_reduce(RealMatrix& a) {
    std::size_t n = a.n;
    if (n < 3) {
        return;
    }
    std::vector<double> ort(n, 0.0);
    for (std::size_t m = 1; m + 1 < n; m++) {
        double scale = 0.0;
        for (std::size_t i = m; i < n; i++) {
            scale += std::abs(a.at(i, m - 1));
        }
        if (scale == 0.0) {
            continue;
        }
        double h = 0.0;
        for (std::size_t i = n; i-- > m;) {
            ort[i] = a.at(i, m - 1) / scale;
            h += ort[i] * ort[i];
        }
        double g = (ort[m] > 0.0) ? -std::sqrt(h) : std::sqrt(h);
        h -= ort[m] * g;
        ort[m] -= g;
        for (std::size_t j = m; j < n; j++) {
            double f = 0.0;
            for (std::size_t i = n; i-- > m;) {
                f += ort[i] * a.at(i, j);
            }
            f /= h;
            for (std::size_t i = m; i < n; i++) {
                a.at(i, j) -= f * ort[i];
            }
        }
        for (std::size_t i = 0; i < n; i++) {
            double f = 0.0;
            for (std::size_t j = n; j-- > m;) {
                f += ort[j] * a.at(i, j);
            }
            f /= h;
            for (std::size_t j = m; j < n; j++) {
                a.at(i, j) -= f * ort[j];
            }
        }
        a.at(m, m - 1) = scale * g;
        for (std::size_t i = m + 1; i < n; i++) {
            a.at(i, m - 1) = 0.0;
        }
    }
}

double sign_of(double magnitude, double sign_source) {
    return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Eigenvalues of an upper Hessenberg matrix by the implicit double-shift QR
// iteration (hqr). Destroys `a`.
std::vector<cplx> hessenberg_qr_eigenvalues(RealMatrix& a) {
    const double eps = DBL_EPSILON;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.n);
    auto A = [&](std::ptrdiff_t r, std::ptrdiff_t c) -> double& {
        return a.a[static_cast<std::size_t>(r) * a.n + static_cast<std::size_t>(c)];
    };

    std::vector<cplx> out;
    out.reserve(a.n);

    double anorm = 0.0;
    for (std::ptrdiff_t i = 0; i < n; i++) {
        for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(i - 1, 0); j < n; j++) {
            anorm += std::abs(A(i, j));
        }
    }
    if (anorm == 0.0) {
        return std::vector<cplx>(a.n, cplx(0.0, 0.0));
    }

    std::ptrdiff_t nn = n - 1;
    double t = 0.0;
    long total_iters = 0;
    const long iter_cap = 100 * std::max<long>(n, 1);
    while (nn >= 0) {
        long its = 0;
        std::ptrdiff_t l = 0;
        bool deflated = false;
        while (!deflated) {
            for (l = nn; l >= 1; l--) {
                double s = std::abs(A(l - 1, l - 1)) + std::abs(A(l, l));
                if (s == 0.0) {
                    s = anorm;
                }
                if (std::abs(A(l, l - 1)) <= eps * s) {
                    A(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) {
                l = 0;
            }
            double x = A(nn, nn);
            if (l == nn) {
                out.push_back(cplx(x + t, 0.0));
                nn--;
                deflated = true;
            } else if (l == nn - 1) {
                double y = A(nn - 1, nn - 1);
                double w = A(nn, nn - 1) * A(nn - 1, nn);
                double p = 0.5 * (y - x);
                double q = p * p + w;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + sign_of(z, p);
                    double e1 = x + z;
                    double e2 = (z != 0.0) ? (x - w / z) : (x + z);
                    out.push_back(cplx(e1, 0.0));
                    out.push_back(cplx(e2, 0.0));
                } else {
                    out.push_back(cplx(x + p, z));
                    out.push_back(cplx(x + p, -z));
                }
                nn -= 2;
                deflated = true;
            } else {
                if (its == 30 || total_iters > iter_cap) {
                    throw std::runtime_error("real_spectrum: QR iteration cap exceeded");
                }
                double y, w;
                if (its == 10 || its == 20) {
                    // Exceptional shift.
                    t += x;
                    for (std::ptrdiff_t i = 0; i <= nn; i++) {
                        A(i, i) -= x;
                    }
                    double s = std::abs(A(nn, nn - 1)) + std::abs(A(nn - 1, nn - 2));
                    y = x = 0.75 * s;
                    w = -0.4375 * s * s;
                } else {
                    y = A(nn - 1, nn - 1);
                    w = A(nn, nn - 1) * A(nn - 1, nn);
                }
                its++;
                total_iters++;

                std::ptrdiff_t m;
                double p = 0.0, q = 0.0, r = 0.0;
                for (m = nn - 2; m >= l; m--) {
                    double z = A(m, m);
                    double rr = x - z;
                    double ss = y - z;
                    p = (rr * ss - w) / A(m + 1, m) + A(m, m + 1);
                    q = A(m + 1, m + 1) - z - rr - ss;
                    r = A(m + 2, m + 1);
                    double scale = std::abs(p) + std::abs(q) + std::abs(r);
                    p /= scale;
                    q /= scale;
                    r /= scale;
                    if (m == l) {
                        break;
                    }
                    double u = std::abs(A(m, m - 1)) * (std::abs(q) + std::abs(r));
                    double v = std::abs(p) *
                               (std::abs(A(m - 1, m - 1)) + std::abs(z) + std::abs(A(m + 1, m + 1)));
                    if (u <= eps * v) {
                        break;
                    }
                }
                for (std::ptrdiff_t i = m + 2; i <= nn; i++) {
                    A(i, i - 2) = 0.0;
                    if (i != m + 2) {
                        A(i, i - 3) = 0.0;
                    }
                }
                for (std::ptrdiff_t k = m; k <= nn - 1; k++) {
                    if (k != m) {
                        p = A(k, k - 1);
                        q = A(k + 1, k - 1);
                        r = (k != nn - 1) ? A(k + 2, k - 1) : 0.0;
                        x = std::abs(p) + std::abs(q) + std::abs(r);
                        if (x != 0.0) {
                            p /= x;
                            q /= x;
                            r /= x;
                        }
                    }
                    double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                    if (s == 0.0) {
                        continue;
                    }
                    if (k == m) {
                        if (l != m) {
                            A(k, k - 1) = -A(k, k - 1);
                        }
                    } else {
                        A(k, k - 1) = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    double z = r / s;
                    q /= p;
                    r /= p;
                    for (std::ptrdiff_t j = k; j <= nn; j++) {
                        double pp = A(k, j) + q * A(k + 1, j);
                        if (k != nn - 1) {
                            pp += r * A(k + 2, j);
                            A(k + 2, j) -= pp * z;
                        }
                        A(k + 1, j) -= pp * y;
                        A(k, j) -= pp * x;
                    }
                    std::ptrdiff_t mmin = (nn < k + 3) ? nn : k + 3;
                    for (std::ptrdiff_t i = l; i <= mmin; i++) {
                        double pp = x * A(i, k) + y * A(i, k + 1);
                        if (k != nn - 1) {
                            pp += z * A(i, k + 2);
                            A(i, k + 2) -= pp * r;
                        }
                        A(i, k + 1) -= pp * q;
                        A(i, k) -= pp;
                    }
                }
            }
        }
    }
    return out;
}

// One inverse-iteration eigenvector for eigenvalue `lambda` of (possibly
// transposed) matrix `m`.
std::vector<cplx> inverse_iteration(const RealMatrix& m, cplx lambda, bool transpose, Rng& rng) {
    std::size_t n = m.n;
    ComplexTensor shifted({n, n});
    double scale = 0.0;
    for (double v : m.a) {
        scale = std::max(scale, std::abs(v));
    }
    double pert = std::max(scale, std::abs(lambda)) * 1e-13 + 1e-300;
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            shifted.at(r, c) = transpose ? m.at(c, r) : m.at(r, c);
        }
        shifted.at(r, r) -= lambda + cplx(pert, pert);
    }
    ComplexLu lu(shifted);
    std::vector<cplx> x(n);
    for (auto& v : x) {
        v = cplx(rng.next_gaussian(), rng.next_gaussian());
    }
    for (int it = 0; it < 6; it++) {
        x = lu.solve(x);
        double nrm = 0.0;
        for (const auto& v : x) {
            nrm += std::norm(v);
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0 || !std::isfinite(nrm)) {
            return {};
        }
        for (auto& v : x) {
            v /= nrm;
        }
    }
    return x;
}

}  // namespace

RealSpectrum real_spectrum(const RealMatrix& m) {
    if (m.n == 0) {
        throw std::invalid_argument("real_spectrum: empty matrix");
    }
    if (m.n > 256) {
        throw std::invalid_argument("real_spectrum: dense algorithm capped at dimension 256");
    }
    RealMatrix work = m;
    hessenberg_reduce(work);
    std::vector<cplx> evals = hessenberg_qr_eigenvalues(work);
    std::sort(evals.begin(), evals.end(), [](const cplx& x, const cplx& y) {
        double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) {
            return ax > ay;
        }
        if (x.real() != y.real()) {
            return x.real() > y.real();
        }
        return x.imag() > y.imag();
    });

    RealSpectrum out;
    out.eigenvalues = evals;

    // Left/right eigenvectors of the leading eigenvalue by inverse iteration.
    Rng rng(0x5eed1234abcdefULL);
    cplx lambda1 = evals[0];
    std::vector<cplx> r = inverse_iteration(m, lambda1, false, rng);
    std::vector<cplx> l = inverse_iteration(m, lambda1, true, rng);
    if (!r.empty() && !l.empty()) {
        // Remove the arbitrary global phase so real eigenvalues get real
        // fixed points.
        auto dephase = [](std::vector<cplx>& v) {
            std::size_t imax = 0;
            for (std::size_t i = 1; i < v.size(); i++) {
                if (std::abs(v[i]) > std::abs(v[imax])) {
                    imax = i;
                }
            }
            if (std::abs(v[imax]) > 0.0) {
                cplx ph = v[imax] / std::abs(v[imax]);
                for (auto& x : v) {
                    x /= ph;
                }
            }
        };
        if (std::abs(lambda1.imag()) < 1e-12 * std::max(1.0, std::abs(lambda1))) {
            dephase(r);
            dephase(l);
        }
        // Validate residuals before accepting.
        std::size_t n = m.n;
        double resid = 0.0;
        for (std::size_t i = 0; i < n; i++) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < n; j++) {
                s += m.at(i, j) * r[j];
            }
            resid = std::max(resid, std::abs(s - lambda1 * r[i]));
        }
        double lscale = std::max(1.0, std::abs(lambda1));
        if (resid < 1e-8 * lscale) {
            cplx overlap = 0.0;
            for (std::size_t i = 0; i < n; i++) {
                overlap += l[i] * r[i];
            }
            if (std::abs(overlap) > 1e-12) {
                for (auto& v : l) {
                    v /= overlap;
                }
                out.leading_right = std::move(r);
                out.leading_left = std::move(l);
                out.leading_vectors_valid = true;
            }
        }
    }
    return out;
}

std::vector<double> singular_values(const ComplexTensor& m) {
    if (!m.is_matrix()) {
        throw std::invalid_argument("singular_values: matrix expected");
    }
    ComplexTensor gram = matmul(m.dagger(), m);
    HermitianEigen eig = hermitian_eigen(gram);
    std::vector<double> out;
    out.reserve(eig.eigenvalues.size());
    for (auto it = eig.eigenvalues.rbegin(); it != eig.eigenvalues.rend(); ++it) {
        out.push_back(std::sqrt(std::max(0.0, *it)));
    }
    return out;
}

ComplexLu::ComplexLu(const ComplexTensor& a) {
    if (!a.is_square_matrix()) {
        throw std::invalid_argument("ComplexLu: square matrix expected");
    }
    n_ = a.rows();
    lu_ = a.data;
    piv_.resize(n_);
    std::iota(piv_.begin(), piv_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n_; k++) {
        std::size_t pivot = k;
        double best = std::abs(lu_[k * n_ + k]);
        for (std::size_t i = k + 1; i < n_; i++) {
            double v = std::abs(lu_[i * n_ + k]);
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0) {
            singular = true;
            continue;
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n_; j++) {
                std::swap(lu_[pivot * n_ + j], lu_[k * n_ + j]);
            }
            std::swap(piv_[pivot], piv_[k]);
            piv_sign_ = -piv_sign_;
        }
        cplx inv = 1.0 / lu_[k * n_ + k];
        for (std::size_t i = k + 1; i < n_; i++) {
            cplx f = lu_[i * n_ + k] * inv;
            lu_[i * n_ + k] = f;
            if (f == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = k + 1; j < n_; j++) {
                lu_[i * n_ + j] -= f * lu_[k * n_ + j];
            }
        }
    }
}

std::vector<cplx> ComplexLu::solve(const std::vector<cplx>& b) const {
    if (b.size() != n_) {
        throw std::invalid_argument("ComplexLu::solve: size mismatch");
    }
    if (singular) {
        throw std::runtime_error("ComplexLu::solve: singular matrix");
    }
    std::vector<cplx> x(n_);
    for (std::size_t i = 0; i < n_; i++) {
        x[i] = b[piv_[i]];
    }
    for (std::size_t i = 0; i < n_; i++) {
        for (std::size_t j = 0; j < i; j++) {
            x[i] -= lu_[i * n_ + j] * x[j];
        }
    }
    for (std::size_t i = n_; i-- > 0;) {
        for (std::size_t j = i + 1; j < n_; j++) {
            x[i] -= lu_[i * n_ + j] * x[j];
        }
        x[i] /= lu_[i * n_ + i];
    }
    return x;
}

cplx ComplexLu::determinant() const {
    if (singular) {
        return 0.0;
    }
    cplx det = static_cast<double>(piv_sign_);
    for (std::size_t i = 0; i < n_; i++) {
        det *= lu_[i * n_ + i];
    }
    return det;
}

ComplexTensor haar_unitary(std::size_t dim, Rng& rng) {
    ComplexTensor g({dim, dim});
    for (auto& v : g.data) {
        v = cplx(rng.next_gaussian(), rng.next_gaussian());
    }
    // Modified Gram-Schmidt with re-orthogonalization; positive real diagonal
    // of R makes Q Haar-distributed.
    ComplexTensor q({dim, dim});
    for (std::size_t j = 0; j < dim; j++) {
        std::vector<cplx> v(dim);
        for (std::size_t i = 0; i < dim; i++) {
            v[i] = g.at(i, j);
        }
        for (int pass = 0; pass < 2; pass++) {
            for (std::size_t k = 0; k < j; k++) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < dim; i++) {
                    proj += std::conj(q.at(i, k)) * v[i];
                }
                for (std::size_t i = 0; i < dim; i++) {
                    v[i] -= proj * q.at(i, k);
                }
            }
        }
        double nrm = 0.0;
        for (const auto& vi : v) {
            nrm += std::norm(vi);
        }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            throw std::runtime_error("haar_unitary: rank deficiency in Gaussian sample");
        }
        for (std::size_t i = 0; i < dim; i++) {
            q.at(i, j) = v[i] / nrm;
        }
    }
    return q;
}

}  // namespace sppsim
