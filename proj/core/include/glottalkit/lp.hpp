/*
Copyright 2026 The glottalkit Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Linear prediction: temporally weighted covariance-method analysis, root
// reflection stabilization and FIR inverse filtering.
//
// A filter stores a_1..a_p of A(z) = 1 + sum_k a_k z^-k; the leading 1 is
// implicit. The prediction error is e[n] = s[n] + sum_k a_k s[n-k].

#ifndef GLOTTALKIT_LP_HPP_
#define GLOTTALKIT_LP_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace glottalkit {

struct VocalTractFilter {
  std::vector<double> a;

  std::size_t order() const { return a.size(); }
};

// Minimizes sum_{n=p}^{L-1} w[n] e[n]^2 through the weighted normal equations,
// solved by Cholesky factorization. Throws kDegenerateFrame when the system is
// singular (e.g. a silent frame), kInvalidArgument when L <= p, the weight
// length differs from the frame or a weight is not strictly positive.
VocalTractFilter WeightedLinearPrediction(std::span<const double> frame,
                                          std::span<const double> weights, std::size_t order);

// Unweighted covariance method solved as an overdetermined least-squares
// problem on the data matrix (QR), independent of the normal-equation route.
VocalTractFilter CovarianceLinearPrediction(std::span<const double> frame, std::size_t order);

// Roots of A(z), i.e. of z^p + a_1 z^(p-1) + ... + a_p.
std::vector<std::complex<double>> FilterRoots(const VocalTractFilter& f);

bool IsMinimumPhase(const VocalTractFilter& f);

// Reflects every root with |z| >= 1 to 1 / conj(z). Filters that are already
// minimum phase are returned bit-for-bit unchanged. The magnitude response is
// preserved up to the constant factor prod |z_reflected|.
VocalTractFilter Stabilize(const VocalTractFilter& f);

// e[n] = s[n] + sum_k a_k s[n-k] with s[m] = 0 for m < 0.
std::vector<double> InverseFilter(std::span<const double> s, const VocalTractFilter& f);

// y[n] = x[n] - sum_k a_k y[n-k]; the exact inverse of InverseFilter.
std::vector<double> AllPoleFilter(std::span<const double> x, const VocalTractFilter& f);

// |A(e^{j omega})| at normalized angular frequency omega.
double FilterMagnitude(const VocalTractFilter& f, double omega);

}  // namespace glottalkit

#endif  // GLOTTALKIT_LP_HPP_
