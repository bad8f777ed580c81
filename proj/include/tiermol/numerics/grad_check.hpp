//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>

#include "tiermol/numerics/tensor.hpp"

namespace tiermol {

/// Scalar-valued function of the current parameter values, evaluated on the
/// given tape.
using ScalarFn = std::function<Tensor(Tape &)>;

/// Compares the reverse-mode gradient of `f` with respect to `x` against
/// central differences with step `h`, which must lie in (0, 1e-2].
///
/// Returns max_i |analytic_i - numeric_i| / max(|analytic_i|, |numeric_i|,
/// 1e-8), or +inf if anything evaluates to NaN. `x` is perturbed in place and
/// restored before returning. Inputs sitting exactly on a relu kink are not
/// meaningful here: the subgradient 0 disagrees with the symmetric difference.
double grad_check(const ScalarFn &f, Tensor &x, double h = 1e-5);

}  // namespace tiermol
