// Copyright 2026 The qbath Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Symmetric tridiagonal (Jacobi) matrices and the two O(n^2) procedures the
// library needs from them:
//
//  * the Jacobi matrix of a discrete measure sum_i w_i delta(x - x_i), built
//    by the Rutishauser-Kahan-Pal-Walker updating scheme (Gragg and Harrod),
//    which is the Lanczos process on diag(x) started from sqrt(w) but stable;
//  * eigenvalues plus the first component of every eigenvector, by implicit
//    QL iteration that accumulates only the first row of the rotations
//    (Golub-Welsch).

#ifndef QBATH_TRIDIAGONAL_HPP
#define QBATH_TRIDIAGONAL_HPP

#include <span>
#include <vector>

namespace qbath {

struct JacobiMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size diag.size() - 1
};

/// Jacobi matrix of the measure with the given nodes and positive weights.
/// The weights need not be normalized; their sum is returned in `total`.
JacobiMatrix jacobi_from_measure(std::span<const double> nodes, std::span<const double> weights,
                                 double* total = nullptr);

struct EigenFirstRow {
  std::vector<double> values;         // ascending
  std::vector<double> first_squared;  // (e_0 . v_j)^2, same order
};

/// Throws NumericalError if an eigenvalue fails to converge.
EigenFirstRow eigen_first_row(JacobiMatrix t);

}  // namespace qbath

#endif  // QBATH_TRIDIAGONAL_HPP
