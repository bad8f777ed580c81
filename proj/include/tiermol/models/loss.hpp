//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "tiermol/numerics/tensor.hpp"

namespace tiermol {

inline constexpr double kDefaultLambdaX = 0.1;

struct ReconstructionLoss {
  Tensor total;        // 1x1, differentiable
  double edge_bce = 0.0;
  double feature_mse = 0.0;
};

/// Weighted-mean binary cross-entropy over the pairs i < j of `predicted`
/// against `adjacency`, plus lambda_x times the mean squared error between
/// `predicted_features` and `features`.
///
/// Edge pairs are weighted by (#non-edges / #edges) so that both classes carry
/// equal total weight; the BCE term is normalised by the total weight. A
/// molecule with a single atom contributes no BCE term.
ReconstructionLoss reconstruction_loss(Tape &tape, const Tensor &predicted,
                                       const Tensor &predicted_features,
                                       const Matrix &adjacency,
                                       const Matrix &features,
                                       double lambda_x = kDefaultLambdaX);

/// mu + sigma * noise with `noise` held constant.
Tensor reparameterize(Tape &tape, const Tensor &mu, const Tensor &sigma,
                      const Matrix &noise);

/// KL(N(mu, sigma^2) || N(0, 1)) summed over entries:
/// sum 0.5 (mu^2 + sigma^2 - 1 - ln sigma^2).
Tensor kl_standard_normal(Tape &tape, const Tensor &mu, const Tensor &sigma);

/// Area under the ROC curve of the pair scores i < j against the 0/1
/// adjacency, by exhaustive ranking of every (edge, non-edge) pair; ties count
/// one half. Returns NaN when either class is empty.
double edge_auc(const Matrix &scores, const Matrix &adjacency);

}  // namespace tiermol
