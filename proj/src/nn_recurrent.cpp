// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/nn/recurrent.hpp"

#include <cmath>

namespace topicseg::nn {

namespace {

void init_uniform(Mat& m, double range, Rng& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-range, range);
  }
}

}  // namespace

BiLstmStack::DirectionParams::DirectionParams(const std::string& name, int input_dim,
                                              int hidden, Rng& rng)
    : wx(name + ".wx", input_dim, 4 * hidden),
      wh(name + ".wh", hidden, 4 * hidden),
      b(name + ".b", 1, 4 * hidden) {
  const double range = 1.0 / std::sqrt(static_cast<double>(hidden));
  init_uniform(wx.value, range, rng);
  init_uniform(wh.value, range, rng);
  // forget-gate bias starts at 1 so early training does not wipe the cell state
  b.value.setZero();
  b.value.block(0, hidden, 1, hidden).setConstant(1.0);
}

BiLstmStack::BiLstmStack(std::string name, int input_dim, int hidden, int layers,
                         uint64_t seed)
    : name_(std::move(name)), hidden_(hidden), layers_(layers) {
  Rng rng(seed);
  fwd_.reserve(layers);
  bwd_.reserve(layers);
  for (int l = 0; l < layers; ++l) {
    const int dim = l == 0 ? input_dim : 2 * hidden;
    fwd_.emplace_back(name_ + ".l" + std::to_string(l) + ".fwd", dim, hidden, rng);
    bwd_.emplace_back(name_ + ".l" + std::to_string(l) + ".bwd", dim, hidden, rng);
  }
}

Graph::NodeId BiLstmStack::run_direction(Graph& g, Graph::NodeId seq,
                                         DirectionParams& dp) const {
  const int T = static_cast<int>(g.value(seq).rows());
  const int H = hidden_;
  const Graph::NodeId wx = g.param(dp.wx);
  const Graph::NodeId wh = g.param(dp.wh);
  const Graph::NodeId b = g.param(dp.b);

  Graph::NodeId h_prev = g.input(Mat::Zero(1, H));
  Graph::NodeId c_prev = g.input(Mat::Zero(1, H));
  std::vector<Graph::NodeId> states;
  states.reserve(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) {
    const Graph::NodeId xt = g.slice_rows(seq, t, 1);
    Graph::NodeId pre = g.add(g.matmul(xt, wx), g.matmul(h_prev, wh));
    pre = g.add(pre, b);
    const Graph::NodeId gi = g.sigmoid_op(g.slice_cols(pre, 0, H));
    const Graph::NodeId gf = g.sigmoid_op(g.slice_cols(pre, H, H));
    const Graph::NodeId gc = g.tanh_op(g.slice_cols(pre, 2 * H, H));
    const Graph::NodeId go = g.sigmoid_op(g.slice_cols(pre, 3 * H, H));
    const Graph::NodeId c = g.add(g.hadamard(gf, c_prev), g.hadamard(gi, gc));
    const Graph::NodeId h = g.hadamard(go, g.tanh_op(c));
    states.push_back(h);
    h_prev = h;
    c_prev = c;
  }
  return g.concat_rows(states);
}

Graph::NodeId BiLstmStack::run(Graph& g, Graph::NodeId seq) {
  Graph::NodeId x = seq;
  for (int l = 0; l < layers_; ++l) {
    const Graph::NodeId f = run_direction(g, x, fwd_[l]);
    const Graph::NodeId rev = g.flip_rows(x);
    const Graph::NodeId bwd = g.flip_rows(run_direction(g, rev, bwd_[l]));
    x = g.concat_cols({f, bwd});
  }
  return x;
}

std::vector<std::pair<std::string, Parameter*>> BiLstmStack::named_parameters() {
  std::vector<std::pair<std::string, Parameter*>> out;
  for (int l = 0; l < layers_; ++l) {
    for (auto* dir : {&fwd_[l], &bwd_[l]}) {
      out.emplace_back(dir->wx.name, &dir->wx);
      out.emplace_back(dir->wh.name, &dir->wh);
      out.emplace_back(dir->b.name, &dir->b);
    }
  }
  return out;
}

}  // namespace topicseg::nn
