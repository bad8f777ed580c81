//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/models/interpolate.hpp"

#include <algorithm>
#include <string>

namespace tiermol {

std::vector<std::vector<double>> interpolate_latent(std::span<const double> za,
                                                    std::span<const double> zb,
                                                    std::size_t steps) {
  if (za.size() != zb.size())
    throw ShapeError("interpolate_latent: dimensions " + std::to_string(za.size())
                     + " and " + std::to_string(zb.size()));
  if (steps < 2)
    throw ContractError("interpolate_latent needs at least two steps");
  std::vector<std::vector<double>> out;
  out.reserve(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    const double a = static_cast<double>(s) / static_cast<double>(steps - 1);
    std::vector<double> z(za.size());
    for (std::size_t k = 0; k < z.size(); ++k)
      z[k] = (1.0 - a) * za[k] + a * zb[k];
    out.push_back(std::move(z));
  }
  return out;
}

TieredEmbeddings with_graph_embedding(const TieredEmbeddings &emb,
                                      std::span<const double> z3) {
  if (z3.size() != emb.z3.cols())
    throw ShapeError("graph embedding has " + std::to_string(z3.size())
                     + " entries, expected " + std::to_string(emb.z3.cols()));
  Matrix row(1, z3.size());
  std::copy(z3.begin(), z3.end(), row.data().begin());
  TieredEmbeddings out = emb;
  out.z3 = Tensor::constant(std::move(row));
  return out;
}

DecodedSummary summarize_probabilities(const Matrix &p, std::size_t k) {
  if (p.rows() != p.cols())
    throw ShapeError("edge probabilities must be square, got " + p.shape().str());
  std::vector<EdgeScore> pairs;
  double total = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = i + 1; j < p.cols(); ++j) {
      pairs.push_back({ static_cast<int>(i), static_cast<int>(j), p(i, j) });
      total += p(i, j);
    }
  DecodedSummary out;
  out.mean_edge_probability = pairs.empty() ? 0.0 : total / static_cast<double>(pairs.size());
  std::stable_sort(pairs.begin(), pairs.end(), [](const EdgeScore &a, const EdgeScore &b) {
    return a.probability > b.probability;
  });
  pairs.resize(std::min(k, pairs.size()));
  out.top_edges = std::move(pairs);
  return out;
}

}  // namespace tiermol
