//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tiermol/models/tiered_gae.hpp"

namespace tiermol {

/// z_i = (1 - a_i) za + a_i zb with a_i = i / (steps - 1); steps >= 2.
std::vector<std::vector<double>> interpolate_latent(std::span<const double> za,
                                                    std::span<const double> zb,
                                                    std::size_t steps);

/// Copy of emb whose graph-tier row is replaced by z3.
TieredEmbeddings with_graph_embedding(const TieredEmbeddings &emb,
                                      std::span<const double> z3);

struct EdgeScore {
  int i;
  int j;
  double probability;
};

struct DecodedSummary {
  double mean_edge_probability;
  std::vector<EdgeScore> top_edges;
};

/// Mean over pairs i<j and the k highest-probability pairs, ties broken by
/// (i, j).
DecodedSummary summarize_probabilities(const Matrix &probabilities, std::size_t k);

}  // namespace tiermol
