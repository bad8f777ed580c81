//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/models/tiered_vgae.hpp"

#include "tiermol/numerics/optim.hpp"
#include "tiermol/pooling/group_pool.hpp"

namespace tiermol {

NoiseSource NoiseSource::gaussian(std::uint64_t seed) {
  NoiseSource s(Mode::Gaussian);
  s.rng_.seed(seed);
  return s;
}

NoiseSource NoiseSource::zeros() {
  return NoiseSource(Mode::Zero);
}

NoiseSource NoiseSource::replay(std::vector<Matrix> draws) {
  NoiseSource s(Mode::Replay);
  s.draws_ = std::move(draws);
  return s;
}

Matrix NoiseSource::draw(std::size_t rows, std::size_t cols) {
  switch (mode_) {
  case Mode::Zero:
    return Matrix(rows, cols);
  case Mode::Gaussian: {
    Matrix m(rows, cols);
    for (double &v: m.data())
      v = normal_(rng_);
    return m;
  }
  case Mode::Replay:
    break;
  }
  if (cursor_ >= draws_.size())
    throw ContractError("noise replay exhausted");
  const Matrix &m = draws_[cursor_++];
  if (m.shape() != Shape { rows, cols })
    throw ShapeError("noise replay: recorded " + m.shape().str()
                     + " but " + Shape { rows, cols }.str() + " requested");
  return m;
}

TieredVgae::TieredVgae(ModelConfig config,
                       std::array<VariationalGnnStack, 3> tiers, Tensor decoder,
                       Tensor feature_head)
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

TieredVgae TieredVgae::initialize(const ModelConfig &config, std::uint64_t seed) {
  validate(config);
  std::mt19937_64 rng(seed);
  std::array<VariationalGnnStack, 3> tiers {
    VariationalGnnStack::glorot(config.input_dim, config.dims[0], config.layers, rng),
    VariationalGnnStack::glorot(config.dims[0], config.dims[1], config.layers, rng),
    VariationalGnnStack::glorot(config.dims[1], config.dims[2], config.layers, rng),
  };
  const std::size_t w = config.concat_dim();
  Tensor feature_head =
      Tensor::parameter(glorot_uniform(w, config.input_dim, rng));
  return TieredVgae(config, std::move(tiers),
                    Tensor::parameter(Matrix::identity(w)), feature_head);
}

VariationalEncoding TieredVgae::encode(Tape &tape, const ModelInput &input,
                                       NoiseSource &noise) const {
  VariationalEncoding out;
  std::array<Tensor, 3> sampled;
  const std::array<const Matrix *, 3> memberships { &input.membership1,
                                                    &input.membership2, nullptr };

  Matrix adjacency = input.adjacency;
  Tensor x = Tensor::constant(input.features);
  for (std::size_t t = 0; t < 3; ++t) {
    GaussianParams post = tiers_[t].forward(tape, adjacency, x);
    out.noise[t] = noise.draw(post.mu.rows(), post.mu.cols());
    sampled[t] = reparameterize(tape, post.mu, post.sigma, out.noise[t]);
    out.posteriors[t] = post;
    if (memberships[t]) {
      // The next tier is pooled from the means, not from the samples.
      CoarsenedGraph next = diff_group_pool(tape, adjacency, post.mu, *memberships[t]);
      adjacency = std::move(next.adjacency);
      x = next.x;
    }
  }

  out.sampled = { sampled[0], sampled[1], sampled[2], input.membership1,
                  input.membership2 };
  return out;
}

Reconstruction TieredVgae::decode(Tape &tape, const TieredEmbeddings &emb) const {
  return decode_tiered(tape, emb, decoder_, feature_head_);
}

ElboTerms TieredVgae::elbo(Tape &tape, const ModelInput &input, NoiseSource &noise,
                           double beta, double lambda_x) const {
  VariationalEncoding enc = encode(tape, input, noise);
  Reconstruction rec = decode(tape, enc.sampled);
  ReconstructionLoss loss = reconstruction_loss(tape, rec.adjacency, rec.features,
                                                input.adjacency, input.features,
                                                lambda_x);
  Tensor kl = kl_standard_normal(tape, enc.posteriors[0].mu, enc.posteriors[0].sigma);
  for (std::size_t t = 1; t < 3; ++t)
    kl = add(tape, kl,
             kl_standard_normal(tape, enc.posteriors[t].mu, enc.posteriors[t].sigma));

  ElboTerms out;
  out.reconstruction = loss.total.item();
  out.kl = kl.item();
  out.elbo = scale(tape, add(tape, loss.total, scale(tape, kl, beta)), -1.0);
  return out;
}

TieredGae TieredVgae::mean_model() const {
  return TieredGae(config_,
                   { tiers_[0].mean_stack(), tiers_[1].mean_stack(),
                     tiers_[2].mean_stack() },
                   decoder_, feature_head_);
}

std::vector<Tensor> TieredVgae::parameters() const {
  std::vector<Tensor> out;
  for (const NamedTensor &p: named_parameters())
    out.push_back(p.second);
  return out;
}

std::vector<NamedTensor> TieredVgae::named_parameters() const {
  std::vector<NamedTensor> out;
  for (std::size_t t = 0; t < 3; ++t) {
    const std::string prefix = "tier" + std::to_string(t + 1);
    const auto &trunk = tiers_[t].trunk();
    for (std::size_t k = 0; k < trunk.size(); ++k)
      out.emplace_back(prefix + ".trunk" + std::to_string(k), trunk[k].weight);
    out.emplace_back(prefix + ".mu", tiers_[t].mu_head().weight);
    out.emplace_back(prefix + ".log_sigma", tiers_[t].log_sigma_head().weight);
  }
  out.emplace_back("decoder", decoder_);
  out.emplace_back("feature_head", feature_head_);
  return out;
}

void TieredVgae::symmetrize_decoder() {
  symmetrize(decoder_);
}

}  // namespace tiermol
