// SPDX-License-Identifier: Apache-2.0
//
// xrelay: MIMO two-way X relay channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef XRELAY_NUMERICS_HPP
#define XRELAY_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>

// Complex subspace arithmetic shared by the transceiver designers.
//
// All routines are SVD based and pure. Empty results (trivial null spaces or
// intersections) are returned as matrices with zero columns (or zero rows for
// row-space results), never as errors; feasibility is decided by the caller.

namespace xrelay
{
    using Complex = std::complex<double>;
    using ComplexMatrix = Eigen::MatrixXcd;
    using ComplexVector = Eigen::VectorXcd;
    using ComplexRow = Eigen::RowVectorXcd;

    struct TolerancePolicy
    {
        double relative_rank_eps = 1e-10; // sigma_k counts iff sigma_k > eps * sigma_max * max(rows, cols)
        double residual_eps = 1e-9;       // relative residual bound used by every invariant check

        // Throws std::invalid_argument unless both values lie in (0, 1).
        void validate() const;
    };

    bool all_finite(const ComplexMatrix &A);

    // Number of singular values above the relative threshold; 0 for the zero matrix.
    Eigen::Index numerical_rank(const ComplexMatrix &A, const TolerancePolicy &tol = {});

    // Orthonormal columns spanning {x : A x = 0}.
    ComplexMatrix null_space_basis(const ComplexMatrix &A, const TolerancePolicy &tol = {});

    // Orthonormal rows spanning {y : y A = 0}.
    ComplexMatrix left_null_space_basis(const ComplexMatrix &A, const TolerancePolicy &tol = {});

    // Orthonormal columns spanning span(A) (leading left singular vectors).
    ComplexMatrix column_space_basis(const ComplexMatrix &A, const TolerancePolicy &tol = {});

    /// Orthonormal basis of span(A) ∩ span(B).
    ///
    /// Built from the null space of [A | -B]: each null vector (x_a; x_b)
    /// yields A x_a = B x_b, and the images A x_a are orthonormalized. The
    /// result has rank(A) + rank(B) - rank([A B]) columns, ordered by the SVD
    /// of the image set (largest singular value first).
    ComplexMatrix column_space_intersection(const ComplexMatrix &A, const ComplexMatrix &B,
                                            const TolerancePolicy &tol = {});

    // Orthonormal rows spanning rowspace(A) ∩ rowspace(B). Uses plain transposes,
    // so a returned row w satisfies w = d A for some row d (no conjugation).
    ComplexMatrix row_space_intersection(const ComplexMatrix &A, const ComplexMatrix &B,
                                         const TolerancePolicy &tol = {});

    // Moore-Penrose pseudo-inverse with singular values cut by the rank rule.
    ComplexMatrix pseudo_inverse(const ComplexMatrix &A, const TolerancePolicy &tol = {});

    // ||Q^H Q - I||_F for the columns of Q.
    double orthonormality_error(const ComplexMatrix &Q);
}

#endif
