//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/cli/commands.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tiermol/cli/molecule_file.hpp"
#include "tiermol/grouping/groups.hpp"
#include "tiermol/models/checkpoint.hpp"
#include "tiermol/models/interpolate.hpp"
#include "tiermol/molgraph/features.hpp"
#include "tiermol/molgraph/smiles.hpp"

namespace tiermol {

using nlohmann::json;

namespace {
  json matrix_json(const Matrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto r = m.row(i);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return { { "shape", { m.rows(), m.cols() } }, { "data", rows } };
  }

  std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }

  // Writes to config.out, or to `fallback` when no path was given.
  void emit(const RunConfig &config, const json &doc, std::ostream &fallback) {
    const std::string text = doc.dump(1) + "\n";
    if (config.out.empty()) {
      fallback << text;
      return;
    }
    std::ofstream f(config.out, std::ios::binary);
    if (!(f << text))
      throw IoError("cannot write " + config.out.string());
  }

  void report_failures(const ParsedBatch &batch, std::ostream &err) {
    for (const ParseFailure &f: batch.failures)
      err << "line " << f.record.line << ": " << f.message << "\n";
  }

  json failures_json(const ParsedBatch &batch) {
    json out = json::array();
    for (const ParseFailure &f: batch.failures)
      out.push_back({ { "line", f.record.line },
                      { "smiles", f.record.smiles },
                      { "error", f.message } });
    return out;
  }

  int parse_status(const ParsedBatch &batch) {
    return batch.failures.empty() ? kExitOk : kExitParseFailure;
  }

  json groups_json(const MolecularGraph &g, const GroupSet &gs) {
    json out = json::array();
    for (const Group &grp: gs.groups)
      out.push_back({ { "kind", group_kind_name(grp.kind) },
                      { "atoms", grp.atoms },
                      { "formula", group_formula(g, grp.atoms) } });
    return out;
  }

  std::string model_kind_name(ModelKind kind) {
    return kind == ModelKind::Gae ? "gae" : "vgae";
  }

  // Runs `body`, mapping library exceptions to exit codes.
  template <class Body>
  int guarded(std::ostream &err, Body &&body) {
    try {
      return body();
    } catch (const IoError &e) {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    } catch (const CheckpointError &e) {
      err << "error: " << e.what() << "\n";
      return e.kind() == CheckpointError::Kind::Io ? kExitIo : kExitCheckpointMismatch;
    } catch (const NumericAbort &e) {
      err << "error: training aborted: " << e.what() << "\n";
      return kExitNumericAbort;
    }
  }

  AnyModel load_model(const RunConfig &config) {
    AnyModel model = load_checkpoint(config.checkpoint);
    if (model_config(model).input_dim != kNodeFeatureDim)
      throw CheckpointError(CheckpointError::Kind::ShapeInconsistency,
                            "checkpoint expects " + std::to_string(model_config(model).input_dim)
                                + " node features, featuriser produces "
                                + std::to_string(kNodeFeatureDim));
    return model;
  }

  std::vector<double> row_values(const Matrix &m, std::size_t i) {
    const auto r = m.row(i);
    return { r.begin(), r.end() };
  }
}  // namespace

std::filesystem::path loss_trace_path(const std::filesystem::path &checkpoint) {
  std::filesystem::path p = checkpoint;
  p.replace_extension(".csv");
  return p;
}

int cmd_parse(const RunConfig &config, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const ParsedBatch batch = parse_records(read_molecule_file(config.input));
    json molecules = json::array();
    for (const ParsedMolecule &m: batch.molecules) {
      std::map<std::string, int> counts;
      for (const Atom &a: m.graph.atoms())
        ++counts[std::string(element_symbol(a.element))];
      molecules.push_back({ { "name", m.record.name },
                            { "line", m.record.line },
                            { "smiles", m.record.smiles },
                            { "atoms", m.graph.num_atoms() },
                            { "bonds", m.graph.num_bonds() },
                            { "rings", m.graph.ring_count() },
                            { "elements", counts } });
    }
    emit(config, { { "molecules", molecules }, { "failures", failures_json(batch) } }, out);
    report_failures(batch, err);
    return parse_status(batch);
  });
}

int cmd_partition(const RunConfig &config, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const ParsedBatch batch = parse_records(read_molecule_file(config.input));
    json molecules = json::array();
    for (const ParsedMolecule &m: batch.molecules) {
      const GroupSet gs = partition(m.graph);
      const ModelInput input = make_model_input(m.graph, gs);
      molecules.push_back({ { "name", m.record.name },
                            { "line", m.record.line },
                            { "groups", groups_json(m.graph, gs) },
                            { "membership", matrix_json(input.membership1) } });
    }
    emit(config, { { "molecules", molecules }, { "failures", failures_json(batch) } }, out);
    report_failures(batch, err);
    return parse_status(batch);
  });
}

int cmd_train(const RunConfig &config, std::ostream &out, std::ostream &err) {
  return guarded(err, [&]() -> int {
    if (config.out.empty())
      throw IoError("train needs --out for the checkpoint");
    const ParsedBatch batch = parse_records(read_molecule_file(config.input));
    report_failures(batch, err);
    if (batch.molecules.empty()) {
      err << "error: no parseable molecules in " << config.input.string() << "\n";
      return kExitParseFailure;
    }
    std::vector<ModelInput> dataset;
    for (const ParsedMolecule &m: batch.molecules)
      dataset.push_back(make_model_input(m.graph));

    TrainConfig tc = config.train;
    tc.model.input_dim = kNodeFeatureDim;
    std::ostringstream csv;
    std::string summary;
    if (config.model == ModelKind::Gae) {
      GaeTrainResult r = train_gae(dataset, tc);
      csv << "epoch,loss\n";
      for (std::size_t e = 0; e < r.loss.size(); ++e)
        csv << e + 1 << ',' << format_double(r.loss[e]) << '\n';
      save_checkpoint(r.model, config.out);
      summary = r.loss.empty() ? "loss n/a" : "loss " + format_double(r.loss.back());
    } else {
      VgaeTrainResult r = train_vgae(dataset, tc);
      csv << "epoch,elbo,kl\n";
      for (std::size_t e = 0; e < r.elbo.size(); ++e)
        csv << e + 1 << ',' << format_double(r.elbo[e]) << ','
            << format_double(r.kl[e]) << '\n';
      save_checkpoint(r.model, config.out);
      summary = r.elbo.empty() ? "elbo n/a"
                               : "elbo " + format_double(r.elbo.back()) + " kl "
                                     + format_double(r.kl.back());
    }

    const auto csv_path = loss_trace_path(config.out);
    std::ofstream f(csv_path, std::ios::binary);
    if (!(f << csv.str()))
      throw IoError("cannot write " + csv_path.string());
    out << "trained " << model_kind_name(config.model) << " on "
        << dataset.size() << " molecules for " << tc.epochs << " epochs: "
        << summary << "\n";
    return parse_status(batch);
  });
}

int cmd_embed(const RunConfig &config, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const AnyModel model = load_model(config);
    const ParsedBatch batch = parse_records(read_molecule_file(config.input));
    const char *tier_name = config.tier == TierSelector::Node    ? "node"
                            : config.tier == TierSelector::Group ? "group"
                                                                 : "graph";
    json molecules = json::array();
    for (const ParsedMolecule &m: batch.molecules) {
      const GroupSet gs = partition(m.graph);
      const ModelInput input = make_model_input(m.graph, gs);
      Tape tape;
      const TieredEmbeddings emb = embed(model, tape, input);
      json entry = { { "name", m.record.name }, { "line", m.record.line },
                     { "tier", tier_name } };
      switch (config.tier) {
      case TierSelector::Node: {
        entry["embedding"] = matrix_json(emb.z1.value());
        std::vector<int> atoms(m.graph.num_atoms());
        for (std::size_t i = 0; i < atoms.size(); ++i)
          atoms[i] = static_cast<int>(i);
        entry["atoms"] = atoms;
        break;
      }
      case TierSelector::Group: {
        entry["embedding"] = matrix_json(emb.z2.value());
        json kinds = json::array();
        for (const Group &g: gs.groups)
          kinds.push_back(group_kind_name(g.kind));
        entry["kinds"] = kinds;
        break;
      }
      case TierSelector::Graph:
        entry["embedding"] = matrix_json(emb.z3.value());
        break;
      }
      entry["membership1"] = matrix_json(input.membership1);
      entry["membership2"] = matrix_json(input.membership2);
      molecules.push_back(std::move(entry));
    }
    emit(config, { { "model_kind", std::holds_alternative<TieredGae>(model) ? "gae" : "vgae" },
                   { "molecules", molecules },
                   { "failures", failures_json(batch) } },
         out);
    report_failures(batch, err);
    return parse_status(batch);
  });
}

int cmd_interp(const RunConfig &config, std::ostream &out, std::ostream &err) {
  return guarded(err, [&]() -> int {
    const AnyModel model = load_model(config);
    if (config.steps < 2)
      throw IoError("--steps must be at least 2");
    ParsedBatch batch = parse_records({ { 1, config.smiles_a, "a" },
                                        { 2, config.smiles_b, "b" } });
    if (!batch.failures.empty()) {
      for (const ParseFailure &f: batch.failures)
        err << "molecule " << f.record.name << ": " << f.message << "\n";
      return kExitParseFailure;
    }

    Tape tape;
    const ModelInput input_a = make_model_input(batch.molecules[0].graph);
    const ModelInput input_b = make_model_input(batch.molecules[1].graph);
    const TieredEmbeddings emb_a = embed(model, tape, input_a);
    const TieredEmbeddings emb_b = embed(model, tape, input_b);
    const auto za = row_values(emb_a.z3.value(), 0);
    const auto zb = row_values(emb_b.z3.value(), 0);

    json steps = json::array();
    const auto path = interpolate_latent(za, zb, config.steps);
    for (std::size_t s = 0; s < path.size(); ++s) {
      // Node and group context stay those of the first endpoint.
      const Matrix p = decode_probabilities(model, with_graph_embedding(emb_a, path[s]));
      const DecodedSummary summary = summarize_probabilities(p, kTopEdges);
      json top = json::array();
      for (const EdgeScore &e: summary.top_edges)
        top.push_back({ { "i", e.i }, { "j", e.j }, { "probability", e.probability } });
      steps.push_back({ { "alpha", static_cast<double>(s) / static_cast<double>(path.size() - 1) },
                        { "z", path[s] },
                        { "mean_edge_probability", summary.mean_edge_probability },
                        { "top_edges", top } });
    }
    emit(config,
         { { "smiles_a", config.smiles_a }, { "smiles_b", config.smiles_b },
           { "z_a", za }, { "z_b", zb }, { "steps", steps } },
         out);
    return kExitOk;
  });
}

}  // namespace tiermol
