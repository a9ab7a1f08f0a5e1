// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal reverse-mode autodiff tape over Eigen matrices. One Graph is built
// per forward pass; Parameters persist across graphs and accumulate gradients
// until the optimizer consumes them.

#ifndef TOPICSEG_NN_GRAPH_HPP_
#define TOPICSEG_NN_GRAPH_HPP_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace topicseg::nn {

using Mat = Eigen::MatrixXd;

struct Parameter {
  std::string name;
  Mat value;
  Mat grad;

  Parameter(std::string n, int rows, int cols)
      : name(std::move(n)), value(Mat::Zero(rows, cols)), grad(Mat::Zero(rows, cols)) {}

  void zero_grad() { grad.setZero(); }
};

class Graph {
 public:
  using NodeId = int;

  // grads_enabled=false builds a forward-only tape (inference).
  explicit Graph(bool grads_enabled = true) : grads_enabled_(grads_enabled) {}

  NodeId input(Mat v);
  NodeId param(Parameter& p);

  NodeId matmul(NodeId a, NodeId b);     // A * B
  NodeId matmul_nt(NodeId a, NodeId b);  // A * B^T
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId add_rowwise(NodeId a, NodeId bias);  // bias: 1 x cols, broadcast over rows
  NodeId scale(NodeId a, double s);
  NodeId hadamard(NodeId a, NodeId b);
  NodeId tanh_op(NodeId a);
  NodeId sigmoid_op(NodeId a);
  NodeId relu(NodeId a);
  NodeId softmax_rows(NodeId a);
  NodeId layer_norm_rows(NodeId a, NodeId gain, NodeId bias, double eps = 1e-5);
  NodeId concat_cols(const std::vector<NodeId>& parts);
  NodeId concat_rows(const std::vector<NodeId>& parts);
  NodeId slice_cols(NodeId a, int c0, int n);
  NodeId slice_rows(NodeId a, int r0, int n);
  NodeId flip_rows(NodeId a);
  NodeId colwise_max(NodeId a);  // T x N -> 1 x N

  // Embedding lookup with a sparse backward into table.grad.
  NodeId embed(Parameter& table, std::vector<int> ids);

  const Mat& value(NodeId id) const { return nodes_[id].value; }
  double scalar(NodeId id) const { return nodes_[id].value(0, 0); }

  void add_output_grad(NodeId id, const Mat& g);
  void add_scalar_grad(NodeId id, double g);

  // Reverse pass over the tape; parameter gradients accumulate into
  // Parameter::grad. May be called once per graph.
  void backward();

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Mat value;
    Mat grad;  // allocated lazily during backward
    bool needs_grad = false;
    Parameter* bound = nullptr;
    std::function<void(Graph&, const Mat&)> back;
  };

  NodeId push(Mat value, bool needs_grad, std::function<void(Graph&, const Mat&)> back);
  void accumulate(NodeId id, const Mat& g);
  bool track(NodeId a) const { return grads_enabled_ && nodes_[a].needs_grad; }

  std::vector<Node> nodes_;
  bool grads_enabled_;
};

}  // namespace topicseg::nn

#endif  // TOPICSEG_NN_GRAPH_HPP_
