// SPDX-License-Identifier: Apache-2.0
//
// xlmimo - link-level simulator for XL-MIMO antenna selection
// Copyright (C) 2026 The xlmimo authors
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

#include "xlmimo/ldl.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "xlmimo/errors.hpp"

namespace xlmimo {

LdlFactorization::LdlFactorization(const Eigen::MatrixXcd &A, double relative_tolerance)
{
    if (A.rows() != A.cols())
        throw std::invalid_argument("LDL^H needs a square matrix");
    const Eigen::Index n = A.rows();
    L_ = Eigen::MatrixXcd::Identity(n, n);
    D_ = Eigen::VectorXd::Zero(n);

    double scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        scale = std::max(scale, std::abs(A(i, i).real()));
    const double tol = relative_tolerance * scale;

    for (Eigen::Index j = 0; j < n; ++j)
    {
        double d = A(j, j).real();
        for (Eigen::Index p = 0; p < j; ++p)
            d -= std::norm(L_(j, p)) * D_(p);
        if (!(std::abs(d) > tol))
            throw SingularChannelError("singular channel: LDL^H pivot " + std::to_string(j) +
                                       " is " + std::to_string(d) + " (tolerance " +
                                       std::to_string(tol) + ")");
        D_(j) = d;
        for (Eigen::Index i = j + 1; i < n; ++i)
        {
            std::complex<double> s = A(i, j);
            for (Eigen::Index p = 0; p < j; ++p)
                s -= L_(i, p) * std::conj(L_(j, p)) * D_(p);
            L_(i, j) = s / d;
        }
    }
}

Eigen::VectorXcd LdlFactorization::solve(const Eigen::VectorXcd &rhs) const
{
    const Eigen::Index n = D_.size();
    if (rhs.size() != n)
        throw std::invalid_argument("LDL^H solve: dimension mismatch");

    Eigen::VectorXcd y = rhs;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index p = 0; p < i; ++p)
            y(i) -= L_(i, p) * y(p);
    for (Eigen::Index i = 0; i < n; ++i)
        y(i) /= D_(i);
    for (Eigen::Index i = n - 1; i >= 0; --i)
        for (Eigen::Index p = i + 1; p < n; ++p)
            y(i) -= std::conj(L_(p, i)) * y(p);
    return y;
}

} // namespace xlmimo
