/*
 * Copyright 2026 The chaos-sampler Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chaos/rm_ensembles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chaos/error.hpp"
#include "chaos/kernels.hpp"
#include "chaos/stats.hpp"

namespace chaos {

Hamiltonian::Hamiltonian(RealMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        fail(ErrorKind::InvalidArgument, "Hamiltonian must be square");
    }
    if (entries_.rows() < 2) {
        fail(ErrorKind::InvalidDimension, "Hamiltonian dimension must be at least 2");
    }
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < entries_.cols(); ++j) {
            if (entries_(i, j) != entries_(j, i)) {
                fail(ErrorKind::InvalidArgument, "Hamiltonian must be exactly symmetric");
            }
        }
    }
}

Spectrum::Spectrum(RealVector eigenvalues, RowMajorRealMatrix eigenvectors)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)) {
    if (eigenvectors_.rows() != eigenvalues_.size() || eigenvectors_.cols() != eigenvalues_.size()) {
        fail(ErrorKind::InvalidArgument, "spectrum shape mismatch");
    }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        fail(ErrorKind::InvalidArgument, "unitary must be square and non-empty");
    }
}

double UnitaryMatrix::unitarity_defect() const {
    const ComplexMatrix g = entries_.adjoint() * entries_;
    return (g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double lambda_from_cap(double lambda_cap, int dim) {
    if (!(lambda_cap >= 0.0) || !std::isfinite(lambda_cap)) {
        fail(ErrorKind::InvalidArgument, "Lambda must be finite and non-negative");
    }
    if (dim < 2) fail(ErrorKind::InvalidDimension, "dimension must be at least 2");
    return std::sqrt(2.0 * std::numbers::pi * lambda_cap / dim);
}

double EnsembleSpec::lambda() const { return lambda_from_cap(lambda_cap, dim); }

void EnsembleSpec::validate() const {
    if (dim < 2) fail(ErrorKind::InvalidDimension, "dimension must be at least 2");
    if (n_realizations < 1) fail(ErrorKind::InvalidArgument, "need at least one realization");
    (void)lambda();
}

Hamiltonian sample_poisson_diag(int dim, RngStream& stream) {
    if (dim < 2) fail(ErrorKind::InvalidDimension, "dimension must be at least 2");
    RealMatrix h = RealMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) h(i, i) = stream.normal();
    return Hamiltonian(std::move(h));
}

Hamiltonian sample_goe(int dim, RngStream& stream) {
    if (dim < 2) fail(ErrorKind::InvalidDimension, "dimension must be at least 2");
    const double diag_sigma = std::sqrt(2.0 / dim);
    const double off_sigma = std::sqrt(1.0 / dim);
    RealMatrix v(dim, dim);
    for (int i = 0; i < dim; ++i) {
        v(i, i) = diag_sigma * stream.normal();
        for (int j = i + 1; j < dim; ++j) {
            const double x = off_sigma * stream.normal();
            v(i, j) = x;
            v(j, i) = x;
        }
    }
    return Hamiltonian(std::move(v));
}

Hamiltonian build_hamiltonian(const Hamiltonian& h0, const Hamiltonian& v, double lambda_cap) {
    if (h0.dim() != v.dim()) {
        fail(ErrorKind::InvalidArgument, "H0 and V dimensions differ");
    }
    const double lambda = lambda_from_cap(lambda_cap, h0.dim());
    if (lambda == 0.0) return h0;
    const double norm = std::sqrt(1.0 + lambda * lambda);
    // Elementwise, so mirrored entries see identical operations.
    RealMatrix h = (h0.matrix() + lambda * v.matrix()) / norm;
    return Hamiltonian(std::move(h));
}

Hamiltonian sample_hamiltonian(int dim, double lambda_cap, RngStream& stream) {
    const Hamiltonian h0 = sample_poisson_diag(dim, stream);
    const Hamiltonian v = sample_goe(dim, stream);
    return build_hamiltonian(h0, v, lambda_cap);
}

Spectrum diagonalize(const Hamiltonian& h) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "symmetric eigensolver did not converge (dim " << h.dim()
            << ", max |H_ij| " << h.matrix().cwiseAbs().maxCoeff()
            << ", Frobenius norm " << h.matrix().norm() << ")";
        fail(ErrorKind::NumericFailure, msg.str());
    }
    RowMajorRealMatrix q = solver.eigenvectors();
    const int d = h.dim();
    for (int c = 0; c < d; ++c) {
        int pivot = 0;
        for (int r = 1; r < d; ++r) {
            if (std::abs(q(r, c)) > std::abs(q(pivot, c))) pivot = r;
        }
        if (q(pivot, c) < 0.0) q.col(c) *= -1.0;
    }
    return Spectrum(solver.eigenvalues(), std::move(q));
}

namespace {

void phases(const Spectrum& s, double t, std::vector<double>& c, std::vector<double>& sn) {
    const auto& e = s.eigenvalues();
    c.resize(e.size());
    sn.resize(e.size());
    for (Eigen::Index j = 0; j < e.size(); ++j) {
        c[j] = std::cos(e[j] * t);
        sn[j] = std::sin(e[j] * t);
    }
}

}  // namespace

ComplexMatrix evolve_columns(const Spectrum& spectrum, double t, std::span<const int> cols) {
    if (!std::isfinite(t)) fail(ErrorKind::InvalidArgument, "evolution time must be finite");
    const int d = spectrum.dim();
    const auto& q = spectrum.eigenvectors();
    std::vector<double> cs, sn;
    phases(spectrum, t, cs, sn);

    std::vector<double> x_re(d), x_im(d), y_re(d), y_im(d);
    ComplexMatrix out(d, static_cast<Eigen::Index>(cols.size()));
    const auto& k = kernels::active();
    for (std::size_t m = 0; m < cols.size(); ++m) {
        const int c = cols[m];
        if (c < 0 || c >= d) fail(ErrorKind::InvalidArgument, "column index out of range");
        // U[:, c] = Q (exp(-i E t) .* Q[c, :]^T)
        for (int j = 0; j < d; ++j) {
            x_re[j] = cs[j] * q(c, j);
            x_im[j] = -sn[j] * q(c, j);
        }
        k.real_matvec_complex(q.data(), static_cast<std::size_t>(d), x_re.data(), x_im.data(),
                              y_re.data(), y_im.data());
        for (int a = 0; a < d; ++a) out(a, static_cast<Eigen::Index>(m)) = Complex(y_re[a], y_im[a]);
    }
    return out;
}

UnitaryMatrix evolve(const Spectrum& spectrum, double t) {
    std::vector<int> all(spectrum.dim());
    for (int c = 0; c < spectrum.dim(); ++c) all[c] = c;
    return UnitaryMatrix(evolve_columns(spectrum, t, all));
}

double trace_power(const Spectrum& spectrum, double t, int k) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "SFF order k must be >= 1");
    CompensatedSum re, im;
    for (double e : spectrum.eigenvalues()) {
        re.add(std::cos(e * t));
        im.add(-std::sin(e * t));
    }
    const double d = spectrum.dim();
    const double abs2 = (re.value() * re.value() + im.value() * im.value()) / (d * d);
    return std::pow(abs2, k);
}

double sff(std::span<const Spectrum> spectra, double t, int k) {
    if (spectra.empty()) fail(ErrorKind::InvalidArgument, "SFF of an empty ensemble");
    if (k < 1) fail(ErrorKind::InvalidArgument, "SFF order k must be >= 1");
    const int d = spectra.front().dim();
    CompensatedSum acc;
    for (const auto& s : spectra) {
        if (s.dim() != d) fail(ErrorKind::InvalidArgument, "ensemble spectra differ in dimension");
        acc.add(trace_power(s, t, k));
    }
    return acc.value() / static_cast<double>(spectra.size());
}

UnitaryMatrix sample_haar_unitary(int dim, RngStream& stream) {
    if (dim < 1) fail(ErrorKind::InvalidDimension, "dimension must be positive");
    ComplexMatrix z(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double re = stream.normal();
            const double im = stream.normal();
            z(i, j) = Complex(re, im) / std::numbers::sqrt2;
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        if (mag > 0.0) q.col(j) *= rjj / mag;
    }
    return UnitaryMatrix(std::move(q));
}

}  // namespace chaos
