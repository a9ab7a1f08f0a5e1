// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/nn/transformer.hpp"

#include <cmath>

#include "topicseg/errors.hpp"

namespace topicseg::nn {

namespace {

constexpr double kInitStd = 0.02;

void init_normal(Mat& m, double sd, Rng& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.normal(0.0, sd);
  }
}

}  // namespace

TransformerEncoder::Layer::Layer(const std::string& name, const TransformerConfig& cfg,
                                 Rng& rng)
    : wq(name + ".wq", cfg.hidden, cfg.hidden),
      wk(name + ".wk", cfg.hidden, cfg.hidden),
      wv(name + ".wv", cfg.hidden, cfg.hidden),
      wo(name + ".wo", cfg.hidden, cfg.hidden),
      bq(name + ".bq", 1, cfg.hidden),
      bk(name + ".bk", 1, cfg.hidden),
      bv(name + ".bv", 1, cfg.hidden),
      bo(name + ".bo", 1, cfg.hidden),
      w1(name + ".w1", cfg.hidden, cfg.ffn),
      b1(name + ".b1", 1, cfg.ffn),
      w2(name + ".w2", cfg.ffn, cfg.hidden),
      b2(name + ".b2", 1, cfg.hidden),
      ln1_g(name + ".ln1_g", 1, cfg.hidden),
      ln1_b(name + ".ln1_b", 1, cfg.hidden),
      ln2_g(name + ".ln2_g", 1, cfg.hidden),
      ln2_b(name + ".ln2_b", 1, cfg.hidden) {
  for (Mat* m : {&wq.value, &wk.value, &wv.value, &wo.value, &w1.value, &w2.value}) {
    init_normal(*m, kInitStd, rng);
  }
  ln1_g.value.setOnes();
  ln2_g.value.setOnes();
}

TransformerEncoder::TransformerEncoder(std::string name, const TransformerConfig& cfg,
                                       uint64_t seed)
    : name_(std::move(name)),
      cfg_(cfg),
      token_embedding_(name_ + ".tok_emb", cfg.vocab_size, cfg.hidden),
      position_embedding_(name_ + ".pos_emb", cfg.max_positions, cfg.hidden) {
  if (cfg.hidden % cfg.heads != 0) {
    throw InvalidConfig("hidden size must be divisible by head count");
  }
  Rng rng(seed);
  init_normal(token_embedding_.value, kInitStd, rng);
  init_normal(position_embedding_.value, kInitStd, rng);
  layers_.reserve(static_cast<size_t>(cfg.layers));
  for (int l = 0; l < cfg.layers; ++l) {
    layers_.emplace_back(name_ + ".layer" + std::to_string(l), cfg, rng);
  }
}

Graph::NodeId TransformerEncoder::run(Graph& g, const std::vector<int>& ids) {
  if (static_cast<int>(ids.size()) > cfg_.max_positions) {
    throw InputTooLong("sequence of " + std::to_string(ids.size()) +
                       " tokens exceeds max_positions " + std::to_string(cfg_.max_positions));
  }
  const int T = static_cast<int>(ids.size());
  const int dh = cfg_.hidden / cfg_.heads;

  Graph::NodeId x = g.embed(token_embedding_, ids);
  x = g.add(x, g.slice_rows(g.param(position_embedding_), 0, T));

  for (Layer& layer : layers_) {
    const Graph::NodeId q = g.add_rowwise(g.matmul(x, g.param(layer.wq)), g.param(layer.bq));
    const Graph::NodeId k = g.add_rowwise(g.matmul(x, g.param(layer.wk)), g.param(layer.bk));
    const Graph::NodeId v = g.add_rowwise(g.matmul(x, g.param(layer.wv)), g.param(layer.bv));

    std::vector<Graph::NodeId> heads;
    heads.reserve(static_cast<size_t>(cfg_.heads));
    for (int h = 0; h < cfg_.heads; ++h) {
      const Graph::NodeId qh = g.slice_cols(q, h * dh, dh);
      const Graph::NodeId kh = g.slice_cols(k, h * dh, dh);
      const Graph::NodeId vh = g.slice_cols(v, h * dh, dh);
      const Graph::NodeId scores =
          g.scale(g.matmul_nt(qh, kh), 1.0 / std::sqrt(static_cast<double>(dh)));
      heads.push_back(g.matmul(g.softmax_rows(scores), vh));
    }
    const Graph::NodeId ctx = g.concat_cols(heads);
    const Graph::NodeId att =
        g.add_rowwise(g.matmul(ctx, g.param(layer.wo)), g.param(layer.bo));
    x = g.layer_norm_rows(g.add(x, att), g.param(layer.ln1_g), g.param(layer.ln1_b));

    const Graph::NodeId f1 =
        g.relu(g.add_rowwise(g.matmul(x, g.param(layer.w1)), g.param(layer.b1)));
    const Graph::NodeId f2 = g.add_rowwise(g.matmul(f1, g.param(layer.w2)), g.param(layer.b2));
    x = g.layer_norm_rows(g.add(x, f2), g.param(layer.ln2_g), g.param(layer.ln2_b));
  }
  return x;
}

std::vector<std::pair<std::string, Parameter*>> TransformerEncoder::named_parameters() {
  std::vector<std::pair<std::string, Parameter*>> out;
  out.emplace_back(token_embedding_.name, &token_embedding_);
  out.emplace_back(position_embedding_.name, &position_embedding_);
  for (Layer& layer : layers_) {
    for (Parameter* p : {&layer.wq, &layer.wk, &layer.wv, &layer.wo, &layer.bq, &layer.bk,
                         &layer.bv, &layer.bo, &layer.w1, &layer.b1, &layer.w2, &layer.b2,
                         &layer.ln1_g, &layer.ln1_b, &layer.ln2_g, &layer.ln2_b}) {
      out.emplace_back(p->name, p);
    }
  }
  return out;
}

}  // namespace topicseg::nn
