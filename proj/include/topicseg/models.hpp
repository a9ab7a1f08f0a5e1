// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0
//
// The two segmenter families: the cross-segment pair-context classifier over a
// pluggable encoder backend, and the hierarchical two-level recurrent
// segmenter. Both expose per-candidate-position boundary probabilities.

#ifndef TOPICSEG_MODELS_HPP_
#define TOPICSEG_MODELS_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topicseg/chunker.hpp"
#include "topicseg/nn/graph.hpp"
#include "topicseg/nn/recurrent.hpp"
#include "topicseg/nn/transformer.hpp"

namespace topicseg {

enum class ModelKind { cross_segment, hierarchical };
enum class BackendKind { tiny, pretrained };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view s);
std::string to_string(BackendKind kind);
BackendKind backend_kind_from_string(std::string_view s);

struct TinyEncoderConfig {
  int hash_buckets = 5003;
  int hidden = 64;
  int layers = 2;
  int heads = 4;
  int ffn = 128;
  int max_positions = 512;
};

struct HierarchicalConfig {
  int hash_buckets = 5003;
  int embedding_dim = 32;
  int word_hidden = 32;
  int word_layers = 2;
  int sentence_hidden = 32;
  int sentence_layers = 2;
};

struct ModelConfig {
  ModelKind kind = ModelKind::cross_segment;
  // cross-segment
  int window_tokens = 250;  // k word-tokens kept on each side of a candidate break
  BackendKind backend = BackendKind::tiny;
  std::string backend_path;  // checkpoint dir supplying pretrained encoder weights
  TinyEncoderConfig encoder;
  // hierarchical
  HierarchicalConfig hierarchical;

  nlohmann::ordered_json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

// --- encoder backends ---------------------------------------------------------

class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;

  virtual int hidden_size() const = 0;
  virtual int max_input_tokens() const = 0;
  virtual int token_id(std::string_view word) const = 0;
  virtual int cls_id() const = 0;
  virtual int sep_id() const = 0;

  struct Encoded {
    nn::Graph::NodeId states;  // T x hidden
    nn::Graph::NodeId pooled;  // 1 x hidden classification state
  };
  virtual Encoded encode(nn::Graph& g, const std::vector<int>& ids) = 0;

  virtual std::vector<std::pair<std::string, nn::Parameter*>> named_parameters() = 0;
};

// Randomly initialized transformer encoder with a hashing vocabulary; the
// desk-scale stand-in for a large pretrained encoder. Pooled state is the
// output at the leading [CLS] position.
class TinyEncoder final : public EncoderBackend {
 public:
  TinyEncoder(const TinyEncoderConfig& cfg, uint64_t seed);

  int hidden_size() const override { return cfg_.hidden; }
  int max_input_tokens() const override { return cfg_.max_positions; }
  int token_id(std::string_view word) const override;
  int cls_id() const override { return cfg_.hash_buckets; }
  int sep_id() const override { return cfg_.hash_buckets + 1; }
  Encoded encode(nn::Graph& g, const std::vector<int>& ids) override;
  std::vector<std::pair<std::string, nn::Parameter*>> named_parameters() override;

  const TinyEncoderConfig& config() const { return cfg_; }

 private:
  TinyEncoderConfig cfg_;
  nn::TransformerEncoder encoder_;
};

// Loads encoder weights from a cross-segment checkpoint directory ("pretrained"
// backend). The architecture comes from that checkpoint's manifest.
std::unique_ptr<TinyEncoder> load_encoder_from_checkpoint(const std::string& checkpoint_dir);

// --- cross-segment input windows -----------------------------------------------

struct TokenWindowPair {
  std::vector<int> left_tokens;   // nearest suffix of preceding text, <= k ids
  std::vector<int> right_tokens;  // nearest prefix of following text, <= k ids
  std::vector<int> assembled;     // [CLS] + left + [SEP] + right
  int break_index = 0;
};

// break_index must satisfy 0 <= break_index < |sentences|-1; the final
// position is excluded because it is a boundary by construction.
TokenWindowPair build_cross_segment_input(const LabeledDocument& doc, int break_index, int k,
                                          const EncoderBackend& backend);

// --- segmenter models -----------------------------------------------------------

class SegmenterModel {
 public:
  virtual ~SegmenterModel() = default;

  virtual ModelKind kind() const = 0;
  virtual const ModelConfig& config() const = 0;
  virtual uint64_t seed() const = 0;

  // Boundary probabilities for the S-1 candidate positions of a document.
  // Throws DocumentTooShort for documents with fewer than 2 sentences.
  virtual std::vector<double> predict(const LabeledDocument& doc) = 0;

  // Training forward pass: one pre-sigmoid logit node per candidate position.
  virtual std::vector<nn::Graph::NodeId> forward_logits(nn::Graph& g,
                                                        const LabeledDocument& doc) = 0;

  virtual std::vector<std::pair<std::string, nn::Parameter*>> named_parameters() = 0;

  std::vector<nn::Parameter*> parameters();
  std::string parameter_digest();
};

class CrossSegmentModel final : public SegmenterModel {
 public:
  CrossSegmentModel(const ModelConfig& cfg, uint64_t seed);

  ModelKind kind() const override { return ModelKind::cross_segment; }
  const ModelConfig& config() const override { return cfg_; }
  uint64_t seed() const override { return seed_; }
  std::vector<double> predict(const LabeledDocument& doc) override;
  std::vector<nn::Graph::NodeId> forward_logits(nn::Graph& g,
                                                const LabeledDocument& doc) override;
  std::vector<std::pair<std::string, nn::Parameter*>> named_parameters() override;

  // Probability that the candidate break of `pair` is a segment boundary.
  double predict_pair(const TokenWindowPair& pair);

  EncoderBackend& backend() { return *backend_; }

 private:
  nn::Graph::NodeId logit_for(nn::Graph& g, const TokenWindowPair& pair);

  ModelConfig cfg_;
  uint64_t seed_;
  std::unique_ptr<TinyEncoder> backend_;
  nn::Parameter head_w_;
  nn::Parameter head_b_;
};

class HierarchicalModel final : public SegmenterModel {
 public:
  HierarchicalModel(const ModelConfig& cfg, uint64_t seed);

  ModelKind kind() const override { return ModelKind::hierarchical; }
  const ModelConfig& config() const override { return cfg_; }
  uint64_t seed() const override { return seed_; }
  std::vector<double> predict(const LabeledDocument& doc) override;
  std::vector<nn::Graph::NodeId> forward_logits(nn::Graph& g,
                                                const LabeledDocument& doc) override;
  std::vector<std::pair<std::string, nn::Parameter*>> named_parameters() override;

  int token_id(std::string_view word) const;

  // Per-position top-layer states of the word-level network (T x 2*word_hidden).
  nn::Mat word_states(const std::vector<std::string>& words);

  // Sentence embedding e_i: elementwise max over word positions. Throws
  // EmptySentence.
  nn::Mat sentence_embedding(const std::vector<std::string>& words);

 private:
  nn::Graph::NodeId encode_sentence(nn::Graph& g, const std::vector<std::string>& words);

  ModelConfig cfg_;
  uint64_t seed_;
  nn::Parameter embedding_;
  nn::BiLstmStack word_lstm_;
  nn::BiLstmStack sentence_lstm_;
  nn::Parameter head_w_;  // 2*sentence_hidden x 2 (two-class softmax head)
  nn::Parameter head_b_;
};

// Validates config (layer sizes >= 1, k >= 1, 2k+2 <= backend max) and builds
// the model with deterministic parameter initialization from seed.
std::unique_ptr<SegmenterModel> init_model(const ModelConfig& cfg, uint64_t seed);

// --- checkpoints -----------------------------------------------------------------
// A checkpoint directory holds manifest.json (kind, config, seed, provenance)
// and params.bin (opaque parameter blob).

struct Provenance {
  struct Stage {
    std::string operation;  // "train" or "finetune"
    std::string dataset;
    int epochs = 0;
    uint64_t seed = 0;
  };
  std::vector<Stage> stages;

  std::string pretrain_dataset() const;  // first train stage, "" if none
  std::string finetune_dataset() const;  // last finetune stage, "" if none

  nlohmann::ordered_json to_json() const;
  static Provenance from_json(const nlohmann::json& j);
};

void save_checkpoint(SegmenterModel& model, const std::string& dir, const Provenance& prov);
std::unique_ptr<SegmenterModel> load_checkpoint(const std::string& dir,
                                                Provenance* provenance = nullptr);

}  // namespace topicseg

#endif  // TOPICSEG_MODELS_HPP_
