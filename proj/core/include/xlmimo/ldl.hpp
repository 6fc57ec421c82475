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

#ifndef XLMIMO_LDL_HPP
#define XLMIMO_LDL_HPP

#include <Eigen/Dense>

namespace xlmimo {

/// LDL^H factorization of a Hermitian matrix, unit lower-triangular L,
/// real diagonal D, no pivoting.
///
/// A pivot whose magnitude falls below `relative_tolerance` times the largest
/// diagonal entry of the input raises SingularChannelError.
class LdlFactorization
{
public:
    explicit LdlFactorization(const Eigen::MatrixXcd &hermitian, double relative_tolerance = 1e-12);

    /// Solves A x = rhs.
    Eigen::VectorXcd solve(const Eigen::VectorXcd &rhs) const;

    const Eigen::MatrixXcd &L() const noexcept { return L_; }
    const Eigen::VectorXd &D() const noexcept { return D_; }

private:
    Eigen::MatrixXcd L_;
    Eigen::VectorXd D_;
};

} // namespace xlmimo

#endif
