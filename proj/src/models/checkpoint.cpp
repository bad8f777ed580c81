//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/models/checkpoint.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace tiermol {

using nlohmann::json;

CheckpointError::CheckpointError(Kind kind, const std::string &what)
    : std::runtime_error(what), kind_(kind) { }

namespace {
  json matrix_to_json(const Matrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto r = m.row(i);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return { { "shape", { m.rows(), m.cols() } }, { "data", rows } };
  }

  [[noreturn]] void malformed(const std::string &what) {
    throw CheckpointError(CheckpointError::Kind::Malformed,
                          "malformed checkpoint: " + what);
  }

  [[noreturn]] void shape_error(const std::string &what) {
    throw CheckpointError(CheckpointError::Kind::ShapeInconsistency,
                          "checkpoint shape inconsistency: " + what);
  }

  Matrix matrix_from_json(const std::string &name, const json &j) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("data"))
      malformed("weight '" + name + "' lacks shape or data");
    const auto shape = j.at("shape").get<std::vector<std::size_t>>();
    if (shape.size() != 2)
      malformed("weight '" + name + "' shape must have two entries");
    const auto rows = j.at("data").get<std::vector<std::vector<double>>>();
    if (rows.size() != shape[0])
      shape_error("weight '" + name + "' declares " + std::to_string(shape[0])
                  + " rows but stores " + std::to_string(rows.size()));
    Matrix m(shape[0], shape[1]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != shape[1])
        shape_error("weight '" + name + "' row " + std::to_string(i) + " has "
                    + std::to_string(rows[i].size()) + " entries, expected "
                    + std::to_string(shape[1]));
      std::copy(rows[i].begin(), rows[i].end(), m.data().begin() + i * shape[1]);
    }
    return m;
  }

  template <class Model>
  json weights_json(const Model &model) {
    json w = json::object();
    for (const auto &[name, tensor]: model.named_parameters())
      w[name] = matrix_to_json(tensor.value());
    return w;
  }

  // Reads weights into a freshly initialised model of the same configuration,
  // which fixes the expected names and shapes.
  template <class Model>
  Model restore(const ModelConfig &config, const json &weights) {
    Model model = Model::initialize(config, 0);
    std::size_t used = 0;
    for (auto &[name, tensor]: model.named_parameters()) {
      if (!weights.contains(name))
        shape_error("missing weight '" + name + "' for the declared config");
      Matrix value = matrix_from_json(name, weights.at(name));
      if (value.shape() != tensor.shape())
        shape_error("weight '" + name + "' is " + value.shape().str()
                    + " but the config implies " + tensor.shape().str());
      Tensor target = tensor;
      std::copy(value.data().begin(), value.data().end(),
                target.mutable_data().begin());
      ++used;
    }
    if (used != weights.size())
      shape_error("checkpoint holds weights the config does not use");
    return model;
  }
}  // namespace

std::string checkpoint_to_string(const AnyModel &model) {
  const ModelConfig &config = model_config(model);
  json doc;
  doc["format_version"] = kCheckpointFormatVersion;
  doc["model_kind"] = std::holds_alternative<TieredGae>(model) ? "gae" : "vgae";
  doc["config"] = { { "input_dim", config.input_dim },
                    { "dims", config.dims },
                    { "layers", config.layers } };
  doc["weights"] = std::visit([](const auto &m) { return weights_json(m); }, model);
  return doc.dump(1) + "\n";
}

AnyModel checkpoint_from_string(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    malformed(e.what());
  }

  try {
    if (!doc.is_object() || !doc.contains("format_version"))
      malformed("missing format_version");
    const int version = doc.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion)
      throw CheckpointError(CheckpointError::Kind::VersionMismatch,
                            "checkpoint format version "
                                + std::to_string(version) + ", expected "
                                + std::to_string(kCheckpointFormatVersion));
    if (!doc.contains("model_kind") || !doc.contains("config")
        || !doc.contains("weights"))
      malformed("missing model_kind, config or weights");

    const json &cfg = doc.at("config");
    ModelConfig config;
    config.input_dim = cfg.at("input_dim").get<std::size_t>();
    const auto dims = cfg.at("dims").get<std::vector<std::size_t>>();
    if (dims.size() != 3)
      malformed("config.dims must have three entries");
    std::copy(dims.begin(), dims.end(), config.dims.begin());
    config.layers = cfg.at("layers").get<std::size_t>();
    try {
      validate(config);
    } catch (const ContractError &e) {
      malformed(e.what());
    }

    const auto kind = doc.at("model_kind").get<std::string>();
    const json &weights = doc.at("weights");
    if (!weights.is_object())
      malformed("weights must be an object");
    if (kind == "gae")
      return restore<TieredGae>(config, weights);
    if (kind == "vgae")
      return restore<TieredVgae>(config, weights);
    malformed("unknown model_kind '" + kind + "'");
  } catch (const json::exception &e) {
    malformed(e.what());
  }
}

void save_checkpoint(const AnyModel &model, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CheckpointError(CheckpointError::Kind::Io,
                          "cannot write checkpoint " + path.string());
  out << checkpoint_to_string(model);
  if (!out)
    throw CheckpointError(CheckpointError::Kind::Io,
                          "failed writing checkpoint " + path.string());
}

AnyModel load_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CheckpointError(CheckpointError::Kind::Io,
                          "cannot read checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return checkpoint_from_string(buf.str());
}

const ModelConfig &model_config(const AnyModel &model) {
  return std::visit([](const auto &m) -> const ModelConfig & { return m.config(); },
                    model);
}

TieredEmbeddings embed(const AnyModel &model, Tape &tape, const ModelInput &input) {
  if (const auto *gae = std::get_if<TieredGae>(&model))
    return gae->encode(tape, input);
  NoiseSource zeros = NoiseSource::zeros();
  return std::get<TieredVgae>(model).encode(tape, input, zeros).sampled;
}

Matrix decode_probabilities(const AnyModel &model, const TieredEmbeddings &emb) {
  Tape tape;
  return std::visit([&](const auto &m) { return m.decode(tape, emb).adjacency.value(); },
                    model);
}

}  // namespace tiermol
