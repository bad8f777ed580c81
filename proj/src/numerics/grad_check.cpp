//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/numerics/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tiermol {

double grad_check(const ScalarFn &f, Tensor &x, double h) {
  if (!(h > 0.0 && h <= 1e-2))
    throw ContractError("grad_check: step must lie in (0, 1e-2]");
  if (!x.requires_grad())
    throw ContractError("grad_check: x must be a parameter");

  x.clear_grad();
  {
    Tape tape;
    Tensor loss = f(tape);
    tape.backward(loss);
  }
  const Matrix analytic = x.has_grad() ? x.grad() : Matrix(x.rows(), x.cols());

  auto eval = [&f]() {
    Tape tape;
    return f(tape).item();
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  auto data = x.mutable_data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double saved = data[i];
    data[i] = saved + h;
    const double up = eval();
    data[i] = saved - h;
    const double down = eval();
    data[i] = saved;

    const double numeric = (up - down) / (2.0 * h);
    const double a = analytic.data()[i];
    if (std::isnan(numeric) || std::isnan(a))
      return kInf;
    const double denom = std::max({ std::abs(a), std::abs(numeric), 1e-8 });
    worst = std::max(worst, std::abs(a - numeric) / denom);
  }
  return worst;
}

}  // namespace tiermol
