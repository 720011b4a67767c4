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

#include "xrelay/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace xrelay
{
    namespace
    {
        using Svd = Eigen::JacobiSVD<ComplexMatrix>;

        Eigen::Index rank_from_values(const Eigen::VectorXd &sv, Eigen::Index rows, Eigen::Index cols,
                                      const TolerancePolicy &tol)
        {
            if (sv.size() == 0 || sv(0) <= 0.0)
                return 0;
            const double cut = tol.relative_rank_eps * sv(0) * static_cast<double>(std::max(rows, cols));
            Eigen::Index r = 0;
            while (r < sv.size() && sv(r) > cut)
                ++r;
            return r;
        }

        ComplexMatrix identity(Eigen::Index n)
        {
            return ComplexMatrix::Identity(n, n);
        }
    }

    void TolerancePolicy::validate() const
    {
        if (!(relative_rank_eps > 0.0 && relative_rank_eps < 1.0))
            throw std::invalid_argument("relative_rank_eps must lie in (0, 1)");
        if (!(residual_eps > 0.0 && residual_eps < 1.0))
            throw std::invalid_argument("residual_eps must lie in (0, 1)");
    }

    bool all_finite(const ComplexMatrix &A)
    {
        return A.allFinite();
    }

    Eigen::Index numerical_rank(const ComplexMatrix &A, const TolerancePolicy &tol)
    {
        if (A.size() == 0)
            return 0;
        Svd svd(A);
        return rank_from_values(svd.singularValues(), A.rows(), A.cols(), tol);
    }

    ComplexMatrix null_space_basis(const ComplexMatrix &A, const TolerancePolicy &tol)
    {
        const Eigen::Index n = A.cols();
        if (n == 0)
            return ComplexMatrix(0, 0);
        if (A.rows() == 0)
            return identity(n);

        Svd svd(A, Eigen::ComputeFullV);
        const Eigen::Index r = rank_from_values(svd.singularValues(), A.rows(), n, tol);
        return svd.matrixV().rightCols(n - r);
    }

    ComplexMatrix left_null_space_basis(const ComplexMatrix &A, const TolerancePolicy &tol)
    {
        // y A = 0  <=>  A^H y^H = 0
        return null_space_basis(A.adjoint(), tol).adjoint();
    }

    ComplexMatrix column_space_basis(const ComplexMatrix &A, const TolerancePolicy &tol)
    {
        if (A.size() == 0)
            return ComplexMatrix(A.rows(), 0);
        Svd svd(A, Eigen::ComputeThinU);
        const Eigen::Index r = rank_from_values(svd.singularValues(), A.rows(), A.cols(), tol);
        return svd.matrixU().leftCols(r);
    }

    ComplexMatrix column_space_intersection(const ComplexMatrix &A, const ComplexMatrix &B,
                                            const TolerancePolicy &tol)
    {
        if (A.rows() != B.rows())
            throw std::invalid_argument("column_space_intersection: row counts differ");
        const Eigen::Index rows = A.rows();
        if (A.cols() == 0 || B.cols() == 0 || rows == 0)
            return ComplexMatrix(rows, 0);

        ComplexMatrix stacked(rows, A.cols() + B.cols());
        stacked << A, -B;

        const ComplexMatrix coeffs = null_space_basis(stacked, tol);
        if (coeffs.cols() == 0)
            return ComplexMatrix(rows, 0);

        // Null vectors with x_a in Null(A) map to zero; the rank cut drops them.
        const ComplexMatrix images = A * coeffs.topRows(A.cols());
        const double scale = std::max(A.norm(), B.norm());
        if (images.norm() <= tol.relative_rank_eps * scale)
            return ComplexMatrix(rows, 0);
        return column_space_basis(images, tol);
    }

    ComplexMatrix row_space_intersection(const ComplexMatrix &A, const ComplexMatrix &B,
                                         const TolerancePolicy &tol)
    {
        if (A.cols() != B.cols())
            throw std::invalid_argument("row_space_intersection: column counts differ");
        const ComplexMatrix At = A.transpose();
        const ComplexMatrix Bt = B.transpose();
        return column_space_intersection(At, Bt, tol).transpose();
    }

    ComplexMatrix pseudo_inverse(const ComplexMatrix &A, const TolerancePolicy &tol)
    {
        if (A.size() == 0)
            return ComplexMatrix::Zero(A.cols(), A.rows());

        Svd svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &sv = svd.singularValues();
        const Eigen::Index r = rank_from_values(sv, A.rows(), A.cols(), tol);

        ComplexMatrix out = ComplexMatrix::Zero(A.cols(), A.rows());
        for (Eigen::Index k = 0; k < r; ++k)
            out += (svd.matrixV().col(k) / sv(k)) * svd.matrixU().col(k).adjoint();
        return out;
    }

    double orthonormality_error(const ComplexMatrix &Q)
    {
        if (Q.cols() == 0)
            return 0.0;
        return (Q.adjoint() * Q - identity(Q.cols())).norm();
    }
}
