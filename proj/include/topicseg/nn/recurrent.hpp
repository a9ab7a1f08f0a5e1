// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TOPICSEG_NN_RECURRENT_HPP_
#define TOPICSEG_NN_RECURRENT_HPP_

#include <string>
#include <utility>
#include <vector>

#include "topicseg/nn/graph.hpp"
#include "topicseg/rng.hpp"

namespace topicseg::nn {

// Multi-layer bidirectional LSTM. Input is a T x input_dim sequence node;
// output is T x (2*hidden) with forward and backward top-layer states
// concatenated per position.
class BiLstmStack {
 public:
  BiLstmStack(std::string name, int input_dim, int hidden, int layers, uint64_t seed);

  Graph::NodeId run(Graph& g, Graph::NodeId seq);

  std::vector<std::pair<std::string, Parameter*>> named_parameters();

  int output_dim() const { return 2 * hidden_; }
  int hidden() const { return hidden_; }
  int layers() const { return layers_; }

 private:
  struct DirectionParams {
    Parameter wx;  // D x 4H, gate order [i, f, g, o]
    Parameter wh;  // H x 4H
    Parameter b;   // 1 x 4H, forget-gate slice initialized to 1
    DirectionParams(const std::string& name, int input_dim, int hidden, Rng& rng);
  };

  Graph::NodeId run_direction(Graph& g, Graph::NodeId seq, DirectionParams& dp) const;

  std::string name_;
  int hidden_;
  int layers_;
  std::vector<DirectionParams> fwd_;  // one per layer
  std::vector<DirectionParams> bwd_;
};

}  // namespace topicseg::nn

#endif  // TOPICSEG_NN_RECURRENT_HPP_
