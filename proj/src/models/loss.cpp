//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/models/loss.hpp"

#include <limits>
#include <vector>

namespace tiermol {

ReconstructionLoss reconstruction_loss(Tape &tape, const Tensor &predicted,
                                       const Tensor &predicted_features,
                                       const Matrix &adjacency,
                                       const Matrix &features, double lambda_x) {
  const std::size_t n = adjacency.rows();
  if (predicted.shape() != adjacency.shape())
    throw ShapeError("reconstruction_loss: predicted adjacency "
                     + predicted.shape().str() + " vs target "
                     + adjacency.shape().str());
  if (predicted_features.shape() != features.shape())
    throw ShapeError("reconstruction_loss: predicted features "
                     + predicted_features.shape().str() + " vs target "
                     + features.shape().str());

  std::size_t edges = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++pairs)
      edges += adjacency(i, j) > 0.5 ? 1 : 0;
  const std::size_t non_edges = pairs - edges;
  const double pos_weight =
      (edges > 0 && non_edges > 0)
          ? static_cast<double>(non_edges) / static_cast<double>(edges)
          : 1.0;

  Matrix w_pos(n, n);
  Matrix w_neg(n, n);
  double total_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adjacency(i, j) > 0.5) {
        w_pos(i, j) = pos_weight;
        total_weight += pos_weight;
      } else {
        w_neg(i, j) = 1.0;
        total_weight += 1.0;
      }
    }
  }

  Tensor mse = mean(tape, [&] {
    Tensor diff = sub(tape, predicted_features, Tensor::constant(features));
    return mul(tape, diff, diff);
  }());
  Tensor total = scale(tape, mse, lambda_x);

  ReconstructionLoss out;
  out.feature_mse = mse.item();
  if (total_weight > 0.0) {
    const Tensor one = Tensor::constant(Matrix(1, 1, 1.0));
    Tensor log_p = log(tape, predicted);
    Tensor log_q = log(tape, sub(tape, one, predicted));
    Tensor weighted = add(tape, mul(tape, Tensor::constant(std::move(w_pos)), log_p),
                          mul(tape, Tensor::constant(std::move(w_neg)), log_q));
    Tensor bce = scale(tape, sum(tape, weighted), -1.0 / total_weight);
    out.edge_bce = bce.item();
    total = add(tape, bce, total);
  }
  out.total = total;
  return out;
}

Tensor reparameterize(Tape &tape, const Tensor &mu, const Tensor &sigma,
                      const Matrix &noise) {
  if (mu.shape() != sigma.shape() || mu.shape() != noise.shape())
    throw ShapeError("reparameterize: mu " + mu.shape().str() + ", sigma "
                     + sigma.shape().str() + ", noise " + noise.shape().str());
  return add(tape, mu, mul(tape, sigma, Tensor::constant(noise)));
}

Tensor kl_standard_normal(Tape &tape, const Tensor &mu, const Tensor &sigma) {
  if (mu.shape() != sigma.shape())
    throw ShapeError("kl_standard_normal: mu " + mu.shape().str()
                     + " vs sigma " + sigma.shape().str());
  Tensor var = mul(tape, sigma, sigma);
  Tensor terms = sub(tape, add(tape, mul(tape, mu, mu), var),
                     add(tape, log(tape, var),
                         Tensor::constant(Matrix(1, 1, 1.0))));
  return scale(tape, sum(tape, terms), 0.5);
}

double edge_auc(const Matrix &scores, const Matrix &adjacency) {
  require_same_shape(scores, adjacency, "edge_auc");
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < adjacency.rows(); ++i) {
    for (std::size_t j = i + 1; j < adjacency.cols(); ++j) {
      if (adjacency(i, j) > 0.5)
        pos.push_back(scores(i, j));
      else
        neg.push_back(scores(i, j));
    }
  }
  if (pos.empty() || neg.empty())
    return std::numeric_limits<double>::quiet_NaN();

  double wins = 0.0;
  for (double p: pos) {
    for (double q: neg) {
      if (p > q)
        wins += 1.0;
      else if (p == q)
        wins += 0.5;
    }
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

}  // namespace tiermol
