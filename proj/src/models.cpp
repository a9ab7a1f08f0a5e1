// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/models.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "topicseg/errors.hpp"
#include "topicseg/hashing.hpp"
#include "topicseg/losses.hpp"
#include "topicseg/rng.hpp"

namespace topicseg {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string to_string(ModelKind kind) {
  return kind == ModelKind::cross_segment ? "cross_segment" : "hierarchical";
}

ModelKind model_kind_from_string(std::string_view s) {
  if (s == "cross_segment") return ModelKind::cross_segment;
  if (s == "hierarchical") return ModelKind::hierarchical;
  throw UsageError("unknown model kind: " + std::string(s));
}

std::string to_string(BackendKind kind) {
  return kind == BackendKind::tiny ? "tiny" : "pretrained";
}

BackendKind backend_kind_from_string(std::string_view s) {
  if (s == "tiny") return BackendKind::tiny;
  if (s == "pretrained") return BackendKind::pretrained;
  throw UsageError("unknown backend kind: " + std::string(s));
}

nlohmann::ordered_json ModelConfig::to_json() const {
  json j;
  j["kind"] = topicseg::to_string(kind);
  j["window_tokens"] = window_tokens;
  json be;
  be["kind"] = topicseg::to_string(backend);
  be["path"] = backend_path;
  be["hash_buckets"] = encoder.hash_buckets;
  be["hidden"] = encoder.hidden;
  be["layers"] = encoder.layers;
  be["heads"] = encoder.heads;
  be["ffn"] = encoder.ffn;
  be["max_positions"] = encoder.max_positions;
  j["backend"] = std::move(be);
  json h;
  h["hash_buckets"] = hierarchical.hash_buckets;
  h["embedding_dim"] = hierarchical.embedding_dim;
  h["word_hidden"] = hierarchical.word_hidden;
  h["word_layers"] = hierarchical.word_layers;
  h["sentence_hidden"] = hierarchical.sentence_hidden;
  h["sentence_layers"] = hierarchical.sentence_layers;
  j["hierarchical"] = std::move(h);
  return j;
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig cfg;
  if (j.contains("kind")) cfg.kind = model_kind_from_string(j["kind"].get<std::string>());
  if (j.contains("window_tokens")) cfg.window_tokens = j["window_tokens"].get<int>();
  if (j.contains("backend")) {
    const auto& be = j["backend"];
    if (be.contains("kind")) cfg.backend = backend_kind_from_string(be["kind"].get<std::string>());
    if (be.contains("path") && be["path"].is_string()) {
      cfg.backend_path = be["path"].get<std::string>();
    }
    if (be.contains("hash_buckets")) cfg.encoder.hash_buckets = be["hash_buckets"].get<int>();
    if (be.contains("hidden")) cfg.encoder.hidden = be["hidden"].get<int>();
    if (be.contains("layers")) cfg.encoder.layers = be["layers"].get<int>();
    if (be.contains("heads")) cfg.encoder.heads = be["heads"].get<int>();
    if (be.contains("ffn")) cfg.encoder.ffn = be["ffn"].get<int>();
    if (be.contains("max_positions")) cfg.encoder.max_positions = be["max_positions"].get<int>();
  }
  if (j.contains("hierarchical")) {
    const auto& h = j["hierarchical"];
    if (h.contains("hash_buckets")) cfg.hierarchical.hash_buckets = h["hash_buckets"].get<int>();
    if (h.contains("embedding_dim")) cfg.hierarchical.embedding_dim = h["embedding_dim"].get<int>();
    if (h.contains("word_hidden")) cfg.hierarchical.word_hidden = h["word_hidden"].get<int>();
    if (h.contains("word_layers")) cfg.hierarchical.word_layers = h["word_layers"].get<int>();
    if (h.contains("sentence_hidden")) {
      cfg.hierarchical.sentence_hidden = h["sentence_hidden"].get<int>();
    }
    if (h.contains("sentence_layers")) {
      cfg.hierarchical.sentence_layers = h["sentence_layers"].get<int>();
    }
  }
  return cfg;
}

// --- TinyEncoder ----------------------------------------------------------------

namespace {

nn::TransformerConfig to_transformer_config(const TinyEncoderConfig& cfg) {
  if (cfg.hash_buckets < 1 || cfg.hidden < 1 || cfg.layers < 1 || cfg.heads < 1 ||
      cfg.ffn < 1 || cfg.max_positions < 3) {
    throw InvalidConfig("encoder dimensions must be positive");
  }
  nn::TransformerConfig tc;
  tc.vocab_size = cfg.hash_buckets + 2;  // + [CLS], [SEP]
  tc.hidden = cfg.hidden;
  tc.layers = cfg.layers;
  tc.heads = cfg.heads;
  tc.ffn = cfg.ffn;
  tc.max_positions = cfg.max_positions;
  return tc;
}

double clamp_open_unit(double p) { return std::clamp(p, 1e-12, 1.0 - 1e-12); }

void init_normal_mat(nn::Mat& m, double sd, Rng& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.normal(0.0, sd);
  }
}

}  // namespace

TinyEncoder::TinyEncoder(const TinyEncoderConfig& cfg, uint64_t seed)
    : cfg_(cfg), encoder_("encoder", to_transformer_config(cfg), seed) {}

int TinyEncoder::token_id(std::string_view word) const {
  return static_cast<int>(fnv1a64(word) % static_cast<uint64_t>(cfg_.hash_buckets));
}

EncoderBackend::Encoded TinyEncoder::encode(nn::Graph& g, const std::vector<int>& ids) {
  const nn::Graph::NodeId states = encoder_.run(g, ids);
  return Encoded{states, g.slice_rows(states, 0, 1)};
}

std::vector<std::pair<std::string, nn::Parameter*>> TinyEncoder::named_parameters() {
  return encoder_.named_parameters();
}

// --- token windows ----------------------------------------------------------------

TokenWindowPair build_cross_segment_input(const LabeledDocument& doc, int break_index, int k,
                                          const EncoderBackend& backend) {
  const int n = static_cast<int>(doc.sentences.size());
  if (break_index < 0 || break_index >= n - 1) {
    throw IndexOutOfRange("break index " + std::to_string(break_index) + " not in [0, " +
                          std::to_string(n - 2) + "]");
  }
  if (k < 1) throw InvalidConfig("window size k must be >= 1");

  TokenWindowPair pair;
  pair.break_index = break_index;

  // nearest suffix of the preceding text
  for (int s = break_index; s >= 0 && static_cast<int>(pair.left_tokens.size()) < k; --s) {
    const auto& toks = doc.sentences[static_cast<size_t>(s)].tokens;
    for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
      if (static_cast<int>(pair.left_tokens.size()) >= k) break;
      pair.left_tokens.push_back(backend.token_id(*it));
    }
  }
  std::reverse(pair.left_tokens.begin(), pair.left_tokens.end());

  // nearest prefix of the following text
  for (int s = break_index + 1; s < n && static_cast<int>(pair.right_tokens.size()) < k; ++s) {
    for (const auto& tok : doc.sentences[static_cast<size_t>(s)].tokens) {
      if (static_cast<int>(pair.right_tokens.size()) >= k) break;
      pair.right_tokens.push_back(backend.token_id(tok));
    }
  }

  pair.assembled.reserve(pair.left_tokens.size() + pair.right_tokens.size() + 2);
  pair.assembled.push_back(backend.cls_id());
  pair.assembled.insert(pair.assembled.end(), pair.left_tokens.begin(), pair.left_tokens.end());
  pair.assembled.push_back(backend.sep_id());
  pair.assembled.insert(pair.assembled.end(), pair.right_tokens.begin(),
                        pair.right_tokens.end());
  return pair;
}

// --- SegmenterModel base ------------------------------------------------------------

std::vector<nn::Parameter*> SegmenterModel::parameters() {
  std::vector<nn::Parameter*> out;
  for (auto& [name, p] : named_parameters()) out.push_back(p);
  return out;
}

std::string SegmenterModel::parameter_digest() {
  Digest d;
  for (auto& [name, p] : named_parameters()) {
    d.update(name);
    d.update_bytes(p->value.data(), static_cast<size_t>(p->value.size()) * sizeof(double));
  }
  return d.hex();
}

// --- CrossSegmentModel ----------------------------------------------------------------

CrossSegmentModel::CrossSegmentModel(const ModelConfig& cfg, uint64_t seed)
    : cfg_(cfg),
      seed_(seed),
      head_w_("head.w", std::max(1, cfg.encoder.hidden), 1),
      head_b_("head.b", 1, 1) {
  if (cfg_.backend == BackendKind::pretrained) {
    if (cfg_.backend_path.empty()) {
      throw InvalidConfig("pretrained backend requires backend.path");
    }
    backend_ = load_encoder_from_checkpoint(cfg_.backend_path);
    cfg_.encoder = backend_->config();
    if (static_cast<int>(head_w_.value.rows()) != cfg_.encoder.hidden) {
      head_w_ = nn::Parameter("head.w", cfg_.encoder.hidden, 1);
    }
  } else {
    backend_ = std::make_unique<TinyEncoder>(cfg_.encoder, Rng::mix(seed, 0xB4C0));
  }
  if (cfg_.window_tokens < 1) throw InvalidConfig("window_tokens must be >= 1");
  if (2 * cfg_.window_tokens + 2 > backend_->max_input_tokens()) {
    throw InvalidConfig("assembled window 2k+2 = " + std::to_string(2 * cfg_.window_tokens + 2) +
                        " exceeds backend max input of " +
                        std::to_string(backend_->max_input_tokens()));
  }
  Rng rng(Rng::mix(seed, 0x43AD));
  init_normal_mat(head_w_.value, 0.02, rng);
}

nn::Graph::NodeId CrossSegmentModel::logit_for(nn::Graph& g, const TokenWindowPair& pair) {
  if (static_cast<int>(pair.assembled.size()) > backend_->max_input_tokens()) {
    throw InputTooLong("assembled pair of " + std::to_string(pair.assembled.size()) +
                       " tokens exceeds backend max of " +
                       std::to_string(backend_->max_input_tokens()));
  }
  const EncoderBackend::Encoded enc = backend_->encode(g, pair.assembled);
  return g.add(g.matmul(enc.pooled, g.param(head_w_)), g.param(head_b_));
}

double CrossSegmentModel::predict_pair(const TokenWindowPair& pair) {
  nn::Graph g(/*grads_enabled=*/false);
  return clamp_open_unit(stable_sigmoid(g.scalar(logit_for(g, pair))));
}

std::vector<double> CrossSegmentModel::predict(const LabeledDocument& doc) {
  if (doc.sentences.size() < 2) {
    throw DocumentTooShort("document '" + doc.document_id + "' has fewer than 2 sentences");
  }
  std::vector<double> probs;
  probs.reserve(doc.sentences.size() - 1);
  for (int i = 0; i + 1 < static_cast<int>(doc.sentences.size()); ++i) {
    probs.push_back(
        predict_pair(build_cross_segment_input(doc, i, cfg_.window_tokens, *backend_)));
  }
  return probs;
}

std::vector<nn::Graph::NodeId> CrossSegmentModel::forward_logits(nn::Graph& g,
                                                                 const LabeledDocument& doc) {
  if (doc.sentences.size() < 2) {
    throw DocumentTooShort("document '" + doc.document_id + "' has fewer than 2 sentences");
  }
  std::vector<nn::Graph::NodeId> logits;
  logits.reserve(doc.sentences.size() - 1);
  for (int i = 0; i + 1 < static_cast<int>(doc.sentences.size()); ++i) {
    logits.push_back(
        logit_for(g, build_cross_segment_input(doc, i, cfg_.window_tokens, *backend_)));
  }
  return logits;
}

std::vector<std::pair<std::string, nn::Parameter*>> CrossSegmentModel::named_parameters() {
  auto out = backend_->named_parameters();
  out.emplace_back(head_w_.name, &head_w_);
  out.emplace_back(head_b_.name, &head_b_);
  return out;
}

// --- HierarchicalModel -----------------------------------------------------------------

namespace {

const HierarchicalConfig& validate_hierarchical(const HierarchicalConfig& cfg) {
  if (cfg.hash_buckets < 1 || cfg.embedding_dim < 1 || cfg.word_hidden < 1 ||
      cfg.word_layers < 1 || cfg.sentence_hidden < 1 || cfg.sentence_layers < 1) {
    throw InvalidConfig("hierarchical dimensions must be positive");
  }
  return cfg;
}

}  // namespace

HierarchicalModel::HierarchicalModel(const ModelConfig& cfg, uint64_t seed)
    : cfg_(cfg),
      seed_(seed),
      embedding_("word_emb", validate_hierarchical(cfg.hierarchical).hash_buckets,
                 cfg.hierarchical.embedding_dim),
      word_lstm_("word_lstm", cfg.hierarchical.embedding_dim, cfg.hierarchical.word_hidden,
                 cfg.hierarchical.word_layers, Rng::mix(seed, 0x10DE)),
      sentence_lstm_("sent_lstm", 2 * cfg.hierarchical.word_hidden,
                     cfg.hierarchical.sentence_hidden, cfg.hierarchical.sentence_layers,
                     Rng::mix(seed, 0x20DE)),
      head_w_("head.w", 2 * cfg.hierarchical.sentence_hidden, 2),
      head_b_("head.b", 1, 2) {
  Rng rng(Rng::mix(seed, 0x30DE));
  init_normal_mat(embedding_.value, 0.1, rng);
  init_normal_mat(head_w_.value, 0.02, rng);
}

int HierarchicalModel::token_id(std::string_view word) const {
  return static_cast<int>(fnv1a64(word) %
                          static_cast<uint64_t>(cfg_.hierarchical.hash_buckets));
}

nn::Graph::NodeId HierarchicalModel::encode_sentence(nn::Graph& g,
                                                     const std::vector<std::string>& words) {
  if (words.empty()) throw EmptySentence("cannot encode a sentence with no tokens");
  std::vector<int> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(token_id(w));
  const nn::Graph::NodeId emb = g.embed(embedding_, std::move(ids));
  const nn::Graph::NodeId states = word_lstm_.run(g, emb);
  return g.colwise_max(states);
}

nn::Mat HierarchicalModel::word_states(const std::vector<std::string>& words) {
  if (words.empty()) throw EmptySentence("cannot encode a sentence with no tokens");
  nn::Graph g(/*grads_enabled=*/false);
  std::vector<int> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(token_id(w));
  return g.value(word_lstm_.run(g, g.embed(embedding_, std::move(ids))));
}

nn::Mat HierarchicalModel::sentence_embedding(const std::vector<std::string>& words) {
  nn::Graph g(/*grads_enabled=*/false);
  return g.value(encode_sentence(g, words));
}

std::vector<nn::Graph::NodeId> HierarchicalModel::forward_logits(nn::Graph& g,
                                                                 const LabeledDocument& doc) {
  const int S = static_cast<int>(doc.sentences.size());
  if (S < 2) {
    throw DocumentTooShort("document '" + doc.document_id + "' has fewer than 2 sentences");
  }
  std::vector<nn::Graph::NodeId> embeddings;
  embeddings.reserve(static_cast<size_t>(S));
  for (const auto& sent : doc.sentences) embeddings.push_back(encode_sentence(g, sent.tokens));
  const nn::Graph::NodeId seq = g.concat_rows(embeddings);
  const nn::Graph::NodeId upper = sentence_lstm_.run(g, seq);
  const nn::Graph::NodeId scores =
      g.add_rowwise(g.matmul(upper, g.param(head_w_)), g.param(head_b_));
  std::vector<nn::Graph::NodeId> logits;
  logits.reserve(static_cast<size_t>(S - 1));
  for (int i = 0; i < S - 1; ++i) {
    const nn::Graph::NodeId row = g.slice_rows(scores, i, 1);
    // two-class softmax head; the boundary logit is the class-score difference
    logits.push_back(g.sub(g.slice_cols(row, 1, 1), g.slice_cols(row, 0, 1)));
  }
  return logits;
}

std::vector<double> HierarchicalModel::predict(const LabeledDocument& doc) {
  nn::Graph g(/*grads_enabled=*/false);
  const auto logits = forward_logits(g, doc);
  std::vector<double> probs;
  probs.reserve(logits.size());
  for (const auto id : logits) probs.push_back(clamp_open_unit(stable_sigmoid(g.scalar(id))));
  return probs;
}

std::vector<std::pair<std::string, nn::Parameter*>> HierarchicalModel::named_parameters() {
  std::vector<std::pair<std::string, nn::Parameter*>> out;
  out.emplace_back(embedding_.name, &embedding_);
  for (auto& p : word_lstm_.named_parameters()) out.push_back(p);
  for (auto& p : sentence_lstm_.named_parameters()) out.push_back(p);
  out.emplace_back(head_w_.name, &head_w_);
  out.emplace_back(head_b_.name, &head_b_);
  return out;
}

std::unique_ptr<SegmenterModel> init_model(const ModelConfig& cfg, uint64_t seed) {
  if (cfg.kind == ModelKind::cross_segment) {
    return std::make_unique<CrossSegmentModel>(cfg, seed);
  }
  return std::make_unique<HierarchicalModel>(cfg, seed);
}

// --- checkpoints -----------------------------------------------------------------

std::string Provenance::pretrain_dataset() const {
  for (const auto& s : stages) {
    if (s.operation == "train") return s.dataset;
  }
  return "";
}

std::string Provenance::finetune_dataset() const {
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    if (it->operation == "finetune") return it->dataset;
  }
  return "";
}

nlohmann::ordered_json Provenance::to_json() const {
  json arr = json::array();
  for (const auto& s : stages) {
    json st;
    st["operation"] = s.operation;
    st["dataset"] = s.dataset;
    st["epochs"] = s.epochs;
    st["seed"] = s.seed;
    arr.push_back(std::move(st));
  }
  return arr;
}

Provenance Provenance::from_json(const nlohmann::json& j) {
  Provenance prov;
  for (const auto& st : j) {
    Stage s;
    s.operation = st.value("operation", "");
    s.dataset = st.value("dataset", "");
    s.epochs = st.value("epochs", 0);
    s.seed = st.value("seed", uint64_t{0});
    prov.stages.push_back(std::move(s));
  }
  return prov;
}

namespace {

constexpr char kParamsMagic[] = "TSGPARAMS1";
constexpr int kManifestVersion = 1;

void write_params(SegmenterModel& model, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(kParamsMagic, sizeof(kParamsMagic) - 1);
  const auto params = model.named_parameters();
  const uint64_t count = params.size();
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  for (const auto& [name, p] : params) {
    const uint32_t name_len = static_cast<uint32_t>(name.size());
    out.write(reinterpret_cast<const char*>(&name_len), sizeof(name_len));
    out.write(name.data(), name_len);
    const uint64_t rows = static_cast<uint64_t>(p->value.rows());
    const uint64_t cols = static_cast<uint64_t>(p->value.cols());
    out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
    out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
    out.write(reinterpret_cast<const char*>(p->value.data()),
              static_cast<std::streamsize>(p->value.size() * sizeof(double)));
  }
}

struct ParamBlob {
  std::string name;
  uint64_t rows = 0;
  uint64_t cols = 0;
  std::vector<double> data;
};

std::vector<ParamBlob> read_params(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointMismatch("missing parameter blob: " + path.string());
  char magic[sizeof(kParamsMagic) - 1];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kParamsMagic, sizeof(magic)) != 0) {
    throw CheckpointMismatch("bad parameter blob magic in " + path.string());
  }
  uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  std::vector<ParamBlob> blobs;
  for (uint64_t i = 0; i < count; ++i) {
    ParamBlob b;
    uint32_t name_len = 0;
    in.read(reinterpret_cast<char*>(&name_len), sizeof(name_len));
    b.name.resize(name_len);
    in.read(b.name.data(), name_len);
    in.read(reinterpret_cast<char*>(&b.rows), sizeof(b.rows));
    in.read(reinterpret_cast<char*>(&b.cols), sizeof(b.cols));
    b.data.resize(b.rows * b.cols);
    in.read(reinterpret_cast<char*>(b.data.data()),
            static_cast<std::streamsize>(b.data.size() * sizeof(double)));
    if (!in) throw CheckpointMismatch("truncated parameter blob: " + path.string());
    blobs.push_back(std::move(b));
  }
  return blobs;
}

void assign_params(const std::vector<std::pair<std::string, nn::Parameter*>>& params,
                   const std::vector<ParamBlob>& blobs) {
  if (params.size() != blobs.size()) {
    throw CheckpointMismatch("checkpoint holds " + std::to_string(blobs.size()) +
                             " parameters, model expects " + std::to_string(params.size()));
  }
  for (size_t i = 0; i < params.size(); ++i) {
    const auto& [name, p] = params[i];
    const ParamBlob& b = blobs[i];
    if (b.name != name || b.rows != static_cast<uint64_t>(p->value.rows()) ||
        b.cols != static_cast<uint64_t>(p->value.cols())) {
      throw CheckpointMismatch("parameter '" + b.name + "' (" + std::to_string(b.rows) + "x" +
                               std::to_string(b.cols) + ") does not match model parameter '" +
                               name + "' (" + std::to_string(p->value.rows()) + "x" +
                               std::to_string(p->value.cols()) + ")");
    }
    std::memcpy(p->value.data(), b.data.data(), b.data.size() * sizeof(double));
  }
}

}  // namespace

void save_checkpoint(SegmenterModel& model, const std::string& dir, const Provenance& prov) {
  fs::create_directories(dir);
  write_params(model, fs::path(dir) / "params.bin");
  json manifest;
  manifest["format_version"] = kManifestVersion;
  manifest["kind"] = to_string(model.kind());
  manifest["seed"] = model.seed();
  manifest["config"] = model.config().to_json();
  manifest["provenance"] = prov.to_json();
  manifest["pretrain"] = prov.pretrain_dataset();
  manifest["finetune"] = prov.finetune_dataset();
  manifest["param_digest"] = model.parameter_digest();
  std::ofstream out(fs::path(dir) / "manifest.json");
  if (!out) throw DataError("cannot write manifest in " + dir);
  out << manifest.dump(2) << '\n';
}

namespace {

json read_manifest(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw CheckpointMismatch("missing manifest.json in " + dir);
  json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::parse_error& e) {
    throw CheckpointMismatch("unparseable manifest in " + dir + ": " + e.what());
  }
  return manifest;
}

}  // namespace

std::unique_ptr<SegmenterModel> load_checkpoint(const std::string& dir, Provenance* provenance) {
  const json manifest = read_manifest(dir);
  ModelConfig cfg = ModelConfig::from_json(manifest.at("config"));
  const uint64_t seed = manifest.value("seed", uint64_t{0});
  // The blob holds the full trained state, so a pretrained backend path must
  // not be re-resolved here.
  cfg.backend = BackendKind::tiny;
  std::unique_ptr<SegmenterModel> model = init_model(cfg, seed);
  assign_params(model->named_parameters(), read_params(fs::path(dir) / "params.bin"));
  if (provenance != nullptr && manifest.contains("provenance")) {
    *provenance = Provenance::from_json(manifest["provenance"]);
  }
  return model;
}

std::unique_ptr<TinyEncoder> load_encoder_from_checkpoint(const std::string& checkpoint_dir) {
  const json manifest = read_manifest(checkpoint_dir);
  const ModelConfig cfg = ModelConfig::from_json(manifest.at("config"));
  if (cfg.kind != ModelKind::cross_segment) {
    throw CheckpointMismatch("checkpoint " + checkpoint_dir +
                             " is not a cross-segment model; it provides no encoder");
  }
  auto encoder = std::make_unique<TinyEncoder>(cfg.encoder, /*seed=*/0);
  auto blobs = read_params(fs::path(checkpoint_dir) / "params.bin");
  // keep only encoder-owned entries (strip the classification head)
  std::vector<ParamBlob> encoder_blobs;
  for (auto& b : blobs) {
    if (b.name.rfind("encoder.", 0) == 0) encoder_blobs.push_back(std::move(b));
  }
  assign_params(encoder->named_parameters(), encoder_blobs);
  return encoder;
}

}  // namespace topicseg
