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

#pragma once

// Integrable-to-chaotic random-matrix family
//
//     H = (H0 + lambda V) / sqrt(1 + lambda^2),   Lambda = lambda^2 d / (2 pi),
//
// with H0 diagonal N(0, 1) (Poissonian levels) and V drawn from the GOE
// (diagonal variance 2/d, off-diagonal 1/d). Hamiltonians are diagonalized once
// and evolved exactly through their spectrum.

#include <cstdint>
#include <span>
#include <vector>

#include "chaos/linalg.hpp"
#include "chaos/rng.hpp"

namespace chaos {

/// Real symmetric generator, dimension >= 2. Symmetry is exact.
class Hamiltonian {
public:
    /// Throws InvalidDimension for d < 2 and InvalidArgument for a non-square
    /// or non-symmetric matrix.
    explicit Hamiltonian(RealMatrix entries);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const RealMatrix& matrix() const noexcept { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }

private:
    RealMatrix entries_;
};

/// Ascending eigenvalues with orthonormal eigenvector columns. Each column has
/// its largest-magnitude component positive (ties: lowest index).
class Spectrum {
public:
    Spectrum(RealVector eigenvalues, RowMajorRealMatrix eigenvectors);

    int dim() const noexcept { return static_cast<int>(eigenvalues_.size()); }
    const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
    const RowMajorRealMatrix& eigenvectors() const noexcept { return eigenvectors_; }

private:
    RealVector eigenvalues_;
    RowMajorRealMatrix eigenvectors_;
};

class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix entries);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return entries_; }
    Complex operator()(int i, int j) const { return entries_(i, j); }

    /// max |(U^dagger U - I)_ij|
    double unitarity_defect() const;

private:
    ComplexMatrix entries_;
};

struct EnsembleSpec {
    int dim = 8;
    double lambda_cap = 0.0;
    int n_realizations = 1;
    std::uint64_t master_seed = 0;

    /// lambda = sqrt(2 pi Lambda / d)
    double lambda() const;
    void validate() const;
};

double lambda_from_cap(double lambda_cap, int dim);

Hamiltonian sample_poisson_diag(int dim, RngStream& stream);
Hamiltonian sample_goe(int dim, RngStream& stream);

/// (H0 + lambda V) / sqrt(1 + lambda^2) with lambda derived from Lambda.
Hamiltonian build_hamiltonian(const Hamiltonian& h0, const Hamiltonian& v, double lambda_cap);

/// Draws H0 then V from `stream` and combines them.
Hamiltonian sample_hamiltonian(int dim, double lambda_cap, RngStream& stream);

Spectrum diagonalize(const Hamiltonian& h);

/// U(t) = Q diag(exp(-i E t)) Q^T
UnitaryMatrix evolve(const Spectrum& spectrum, double t);

/// Selected columns of U(t) as a d x cols.size() matrix; cols are 0-based.
ComplexMatrix evolve_columns(const Spectrum& spectrum, double t, std::span<const int> cols);

/// |Tr U(t)|^(2k) / d^(2k) for one spectrum.
double trace_power(const Spectrum& spectrum, double t, int k);

/// Ensemble spectral form factor <|Tr U(t)|^(2k)> / d^(2k); 1 at t = 0.
double sff(std::span<const Spectrum> spectra, double t, int k);

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix with the R-diagonal phases divided out.
UnitaryMatrix sample_haar_unitary(int dim, RngStream& stream);

}  // namespace chaos
