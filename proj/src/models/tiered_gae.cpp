//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/models/tiered_gae.hpp"

#include <random>

#include "tiermol/numerics/optim.hpp"
#include "tiermol/pooling/group_pool.hpp"

namespace tiermol {

Tensor broadcast_concat(Tape &tape, const TieredEmbeddings &emb) {
  const std::size_t n = emb.z1.rows();
  if (emb.membership1.rows() != n || emb.membership1.cols() != emb.z2.rows())
    throw ShapeError("decoder: membership " + emb.membership1.shape().str()
                     + " incompatible with Z1 " + emb.z1.shape().str()
                     + " and Z2 " + emb.z2.shape().str());
  if (emb.z3.rows() != 1)
    throw ShapeError("decoder: graph embedding must have one row, got "
                     + emb.z3.shape().str());

  const std::array<Tensor, 3> parts {
    emb.z1,
    matmul(tape, Tensor::constant(emb.membership1), emb.z2),
    matmul(tape, Tensor::constant(Matrix::ones(n, 1)), emb.z3),
  };
  return hstack(tape, parts);
}

Reconstruction decode_tiered(Tape &tape, const TieredEmbeddings &emb,
                             const Tensor &decoder, const Tensor &feature_head) {
  Tensor z = broadcast_concat(tape, emb);
  if (decoder.rows() != z.cols() || decoder.cols() != z.cols())
    throw ShapeError("decoder: bilinear weights " + decoder.shape().str()
                     + " do not match concatenated width "
                     + std::to_string(z.cols()));
  Tensor logits = matmul(tape, matmul(tape, z, decoder), transpose(tape, z));
  return { sigmoid(tape, logits), matmul(tape, z, feature_head) };
}

TieredGae::TieredGae(ModelConfig config, std::array<GnnStack, 3> tiers,
                     Tensor decoder, Tensor feature_head)
    : config_(config), tiers_(std::move(tiers)), decoder_(std::move(decoder)),
      feature_head_(std::move(feature_head)) {
  validate(config_);
  const std::array<std::size_t, 3> inputs { config_.input_dim, config_.dims[0],
                                            config_.dims[1] };
  for (std::size_t t = 0; t < 3; ++t) {
    if (tiers_[t].in_dim() != inputs[t] || tiers_[t].out_dim() != config_.dims[t]
        || tiers_[t].depth() != config_.layers)
      throw ShapeError("tier " + std::to_string(t + 1)
                       + " stack does not match the model configuration");
  }
  const std::size_t w = config_.concat_dim();
  if (decoder_.shape() != Shape { w, w })
    throw ShapeError("decoder weights " + decoder_.shape().str() + ", expected "
                     + Shape { w, w }.str());
  if (feature_head_.shape() != Shape { w, config_.input_dim })
    throw ShapeError("feature head " + feature_head_.shape().str()
                     + ", expected " + Shape { w, config_.input_dim }.str());
}

TieredGae TieredGae::initialize(const ModelConfig &config, std::uint64_t seed) {
  validate(config);
  std::mt19937_64 rng(seed);
  std::array<GnnStack, 3> tiers {
    GnnStack::glorot(config.input_dim, config.dims[0], config.layers, rng),
    GnnStack::glorot(config.dims[0], config.dims[1], config.layers, rng),
    GnnStack::glorot(config.dims[1], config.dims[2], config.layers, rng),
  };
  const std::size_t w = config.concat_dim();
  Tensor feature_head =
      Tensor::parameter(glorot_uniform(w, config.input_dim, rng));
  return TieredGae(config, std::move(tiers),
                   Tensor::parameter(Matrix::identity(w)), feature_head);
}

TieredEmbeddings TieredGae::encode(Tape &tape, const ModelInput &input) const {
  TierState tier1 { input.adjacency, Tensor::constant(input.features), std::nullopt };
  tier1.z = tiers_[0].forward(tape, tier1.adjacency, tier1.x);

  TierState tier2 = pool_tier(tape, tier1, input.membership1);
  tier2.z = tiers_[1].forward(tape, tier2.adjacency, tier2.x);

  TierState tier3 = pool_tier(tape, tier2, input.membership2);
  tier3.z = tiers_[2].forward(tape, tier3.adjacency, tier3.x);

  return { *tier1.z, *tier2.z, *tier3.z, input.membership1, input.membership2 };
}

Reconstruction TieredGae::decode(Tape &tape, const TieredEmbeddings &emb) const {
  return decode_tiered(tape, emb, decoder_, feature_head_);
}

std::vector<Tensor> TieredGae::parameters() const {
  std::vector<Tensor> out;
  for (const NamedTensor &p: named_parameters())
    out.push_back(p.second);
  return out;
}

std::vector<NamedTensor> TieredGae::named_parameters() const {
  std::vector<NamedTensor> out;
  for (std::size_t t = 0; t < 3; ++t) {
    const auto &layers = tiers_[t].layers();
    for (std::size_t k = 0; k < layers.size(); ++k)
      out.emplace_back("tier" + std::to_string(t + 1) + ".layer"
                           + std::to_string(k),
                       layers[k].weight);
  }
  out.emplace_back("decoder", decoder_);
  out.emplace_back("feature_head", feature_head_);
  return out;
}

void symmetrize(Tensor &square) {
  const std::size_t n = square.rows();
  auto d = square.mutable_data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (d[i * n + j] + d[j * n + i]);
      d[i * n + j] = avg;
      d[j * n + i] = avg;
    }
  }
}

void TieredGae::symmetrize_decoder() {
  symmetrize(decoder_);
}

TieredGae TieredGae::clone() const {
  auto copy_stack = [](const GnnStack &s) {
    std::vector<GcnLayer> layers;
    for (const GcnLayer &l: s.layers())
      layers.push_back({ Tensor::parameter(l.weight.value()), l.activation });
    return GnnStack(std::move(layers));
  };
  return TieredGae(config_,
                   { copy_stack(tiers_[0]), copy_stack(tiers_[1]),
                     copy_stack(tiers_[2]) },
                   Tensor::parameter(decoder_.value()),
                   Tensor::parameter(feature_head_.value()));
}

}  // namespace tiermol
