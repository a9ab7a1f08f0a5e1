// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TOPICSEG_NN_TRANSFORMER_HPP_
#define TOPICSEG_NN_TRANSFORMER_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "topicseg/nn/graph.hpp"
#include "topicseg/rng.hpp"

namespace topicseg::nn {

struct TransformerConfig {
  int vocab_size = 5005;  // hash buckets + specials
  int hidden = 64;
  int layers = 2;
  int heads = 4;
  int ffn = 128;
  int max_positions = 512;
};

// Pre-norm-free BERT-style encoder: learned token + position embeddings,
// multi-head self-attention and a ReLU feed-forward block per layer, each
// followed by a residual connection and layer norm.
class TransformerEncoder {
 public:
  TransformerEncoder(std::string name, const TransformerConfig& cfg, uint64_t seed);

  // ids.size() <= max_positions; returns the T x hidden top-layer states.
  Graph::NodeId run(Graph& g, const std::vector<int>& ids);

  std::vector<std::pair<std::string, Parameter*>> named_parameters();

  const TransformerConfig& config() const { return cfg_; }

 private:
  struct Layer {
    Parameter wq, wk, wv, wo;        // hidden x hidden
    Parameter bq, bk, bv, bo;        // 1 x hidden
    Parameter w1, b1, w2, b2;        // ffn block
    Parameter ln1_g, ln1_b, ln2_g, ln2_b;
    Layer(const std::string& name, const TransformerConfig& cfg, Rng& rng);
  };

  std::string name_;
  TransformerConfig cfg_;
  Parameter token_embedding_;
  Parameter position_embedding_;
  std::vector<Layer> layers_;
};

}  // namespace topicseg::nn

#endif  // TOPICSEG_NN_TRANSFORMER_HPP_
