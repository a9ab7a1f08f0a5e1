// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/nn/graph.hpp"

#include <cassert>
#include <cmath>
#include <utility>

namespace topicseg::nn {

Graph::NodeId Graph::push(Mat value, bool needs_grad,
                          std::function<void(Graph&, const Mat&)> back) {
  Node node;
  node.value = std::move(value);
  node.needs_grad = grads_enabled_ && needs_grad;
  if (node.needs_grad) node.back = std::move(back);
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void Graph::accumulate(NodeId id, const Mat& g) {
  Node& n = nodes_[id];
  if (!n.needs_grad) return;
  if (n.grad.size() == 0) {
    n.grad = g;
  } else {
    n.grad += g;
  }
}

Graph::NodeId Graph::input(Mat v) { return push(std::move(v), false, nullptr); }

Graph::NodeId Graph::param(Parameter& p) {
  const NodeId id = push(p.value, true, nullptr);
  nodes_[id].bound = &p;
  return id;
}

Graph::NodeId Graph::matmul(NodeId a, NodeId b) {
  Mat v = nodes_[a].value * nodes_[b].value;
  const bool ng = track(a) || track(b);
  return push(std::move(v), ng, [a, b](Graph& g, const Mat& gout) {
    if (g.track(a)) g.accumulate(a, gout * g.nodes_[b].value.transpose());
    if (g.track(b)) g.accumulate(b, g.nodes_[a].value.transpose() * gout);
  });
}

Graph::NodeId Graph::matmul_nt(NodeId a, NodeId b) {
  Mat v = nodes_[a].value * nodes_[b].value.transpose();
  const bool ng = track(a) || track(b);
  return push(std::move(v), ng, [a, b](Graph& g, const Mat& gout) {
    if (g.track(a)) g.accumulate(a, gout * g.nodes_[b].value);
    if (g.track(b)) g.accumulate(b, gout.transpose() * g.nodes_[a].value);
  });
}

Graph::NodeId Graph::add(NodeId a, NodeId b) {
  Mat v = nodes_[a].value + nodes_[b].value;
  return push(std::move(v), track(a) || track(b), [a, b](Graph& g, const Mat& gout) {
    g.accumulate(a, gout);
    g.accumulate(b, gout);
  });
}

Graph::NodeId Graph::sub(NodeId a, NodeId b) {
  Mat v = nodes_[a].value - nodes_[b].value;
  return push(std::move(v), track(a) || track(b), [a, b](Graph& g, const Mat& gout) {
    g.accumulate(a, gout);
    if (g.track(b)) g.accumulate(b, -gout);
  });
}

Graph::NodeId Graph::add_rowwise(NodeId a, NodeId bias) {
  Mat v = nodes_[a].value.rowwise() + nodes_[bias].value.row(0);
  return push(std::move(v), track(a) || track(bias), [a, bias](Graph& g, const Mat& gout) {
    g.accumulate(a, gout);
    if (g.track(bias)) g.accumulate(bias, gout.colwise().sum());
  });
}

Graph::NodeId Graph::scale(NodeId a, double s) {
  Mat v = nodes_[a].value * s;
  return push(std::move(v), track(a),
              [a, s](Graph& g, const Mat& gout) { g.accumulate(a, gout * s); });
}

Graph::NodeId Graph::hadamard(NodeId a, NodeId b) {
  Mat v = nodes_[a].value.cwiseProduct(nodes_[b].value);
  return push(std::move(v), track(a) || track(b), [a, b](Graph& g, const Mat& gout) {
    if (g.track(a)) g.accumulate(a, gout.cwiseProduct(g.nodes_[b].value));
    if (g.track(b)) g.accumulate(b, gout.cwiseProduct(g.nodes_[a].value));
  });
}

Graph::NodeId Graph::tanh_op(NodeId a) {
  Mat v = nodes_[a].value.array().tanh().matrix();
  const NodeId out = push(std::move(v), track(a), nullptr);
  if (nodes_[out].needs_grad) {
    nodes_[out].back = [a, out](Graph& g, const Mat& gout) {
      const Mat& y = g.nodes_[out].value;
      g.accumulate(a, (gout.array() * (1.0 - y.array().square())).matrix());
    };
  }
  return out;
}

Graph::NodeId Graph::sigmoid_op(NodeId a) {
  Mat v = (1.0 / (1.0 + (-nodes_[a].value.array()).exp())).matrix();
  const NodeId out = push(std::move(v), track(a), nullptr);
  if (nodes_[out].needs_grad) {
    nodes_[out].back = [a, out](Graph& g, const Mat& gout) {
      const Mat& y = g.nodes_[out].value;
      g.accumulate(a, (gout.array() * y.array() * (1.0 - y.array())).matrix());
    };
  }
  return out;
}

Graph::NodeId Graph::relu(NodeId a) {
  Mat v = nodes_[a].value.cwiseMax(0.0);
  return push(std::move(v), track(a), [a](Graph& g, const Mat& gout) {
    const Mat& x = g.nodes_[a].value;
    g.accumulate(a, (gout.array() * (x.array() > 0.0).cast<double>()).matrix());
  });
}

Graph::NodeId Graph::softmax_rows(NodeId a) {
  const Mat& x = nodes_[a].value;
  Mat v(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double m = x.row(r).maxCoeff();
    Eigen::ArrayXd e = (x.row(r).array() - m).exp();
    v.row(r) = (e / e.sum()).matrix();
  }
  const NodeId out = push(std::move(v), track(a), nullptr);
  if (nodes_[out].needs_grad) {
    nodes_[out].back = [a, out](Graph& g, const Mat& gout) {
      const Mat& s = g.nodes_[out].value;
      Mat gx(s.rows(), s.cols());
      for (Eigen::Index r = 0; r < s.rows(); ++r) {
        const double dot = gout.row(r).dot(s.row(r));
        gx.row(r) = (s.row(r).array() * (gout.row(r).array() - dot)).matrix();
      }
      g.accumulate(a, gx);
    };
  }
  return out;
}

Graph::NodeId Graph::layer_norm_rows(NodeId a, NodeId gain, NodeId bias, double eps) {
  const Mat& x = nodes_[a].value;
  const Eigen::Index n = x.cols();
  Mat xhat(x.rows(), n);
  Eigen::ArrayXd inv_sd(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mu = x.row(r).mean();
    const double var = (x.row(r).array() - mu).square().sum() / static_cast<double>(n);
    inv_sd(r) = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = ((x.row(r).array() - mu) * inv_sd(r)).matrix();
  }
  Mat v = (xhat.array().rowwise() * nodes_[gain].value.row(0).array()).matrix();
  v = (v.array().rowwise() + nodes_[bias].value.row(0).array()).matrix();
  const bool ng = track(a) || track(gain) || track(bias);
  const NodeId out = push(std::move(v), ng, nullptr);
  if (nodes_[out].needs_grad) {
    // capture xhat and inv_sd by value; both are needed for the backward pass
    nodes_[out].back = [a, gain, bias, xhat = std::move(xhat),
                        inv_sd = std::move(inv_sd)](Graph& g, const Mat& gout) {
      const Eigen::Index n = xhat.cols();
      if (g.track(bias)) g.accumulate(bias, gout.colwise().sum());
      if (g.track(gain)) {
        g.accumulate(gain, (gout.array() * xhat.array()).colwise().sum().matrix());
      }
      if (g.track(a)) {
        const Eigen::ArrayXXd gy = gout.array().rowwise() * g.nodes_[gain].value.row(0).array();
        Mat gx(xhat.rows(), n);
        for (Eigen::Index r = 0; r < xhat.rows(); ++r) {
          const double mean_gy = gy.row(r).mean();
          const double mean_gy_xhat = (gy.row(r) * xhat.row(r).array()).mean();
          gx.row(r) =
              (inv_sd(r) * (gy.row(r) - mean_gy - xhat.row(r).array() * mean_gy_xhat)).matrix();
        }
        g.accumulate(a, gx);
      }
    };
  }
  return out;
}

Graph::NodeId Graph::concat_cols(const std::vector<NodeId>& parts) {
  Eigen::Index rows = nodes_[parts.front()].value.rows();
  Eigen::Index cols = 0;
  for (const NodeId p : parts) cols += nodes_[p].value.cols();
  Mat v(rows, cols);
  Eigen::Index c = 0;
  bool ng = false;
  for (const NodeId p : parts) {
    v.middleCols(c, nodes_[p].value.cols()) = nodes_[p].value;
    c += nodes_[p].value.cols();
    ng = ng || track(p);
  }
  return push(std::move(v), ng, [parts](Graph& g, const Mat& gout) {
    Eigen::Index c = 0;
    for (const NodeId p : parts) {
      const Eigen::Index w = g.nodes_[p].value.cols();
      if (g.track(p)) g.accumulate(p, gout.middleCols(c, w));
      c += w;
    }
  });
}

Graph::NodeId Graph::concat_rows(const std::vector<NodeId>& parts) {
  Eigen::Index cols = nodes_[parts.front()].value.cols();
  Eigen::Index rows = 0;
  for (const NodeId p : parts) rows += nodes_[p].value.rows();
  Mat v(rows, cols);
  Eigen::Index r = 0;
  bool ng = false;
  for (const NodeId p : parts) {
    v.middleRows(r, nodes_[p].value.rows()) = nodes_[p].value;
    r += nodes_[p].value.rows();
    ng = ng || track(p);
  }
  return push(std::move(v), ng, [parts](Graph& g, const Mat& gout) {
    Eigen::Index r = 0;
    for (const NodeId p : parts) {
      const Eigen::Index h = g.nodes_[p].value.rows();
      if (g.track(p)) g.accumulate(p, gout.middleRows(r, h));
      r += h;
    }
  });
}

Graph::NodeId Graph::slice_cols(NodeId a, int c0, int n) {
  Mat v = nodes_[a].value.middleCols(c0, n);
  return push(std::move(v), track(a), [a, c0, n](Graph& g, const Mat& gout) {
    Mat gx = Mat::Zero(g.nodes_[a].value.rows(), g.nodes_[a].value.cols());
    gx.middleCols(c0, n) = gout;
    g.accumulate(a, gx);
  });
}

Graph::NodeId Graph::slice_rows(NodeId a, int r0, int n) {
  Mat v = nodes_[a].value.middleRows(r0, n);
  return push(std::move(v), track(a), [a, r0, n](Graph& g, const Mat& gout) {
    Mat gx = Mat::Zero(g.nodes_[a].value.rows(), g.nodes_[a].value.cols());
    gx.middleRows(r0, n) = gout;
    g.accumulate(a, gx);
  });
}

Graph::NodeId Graph::flip_rows(NodeId a) {
  Mat v = nodes_[a].value.colwise().reverse();
  return push(std::move(v), track(a), [a](Graph& g, const Mat& gout) {
    g.accumulate(a, gout.colwise().reverse());
  });
}

Graph::NodeId Graph::colwise_max(NodeId a) {
  const Mat& x = nodes_[a].value;
  Mat v(1, x.cols());
  std::vector<Eigen::Index> argmax(static_cast<size_t>(x.cols()));
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    Eigen::Index r;
    v(0, c) = x.col(c).maxCoeff(&r);
    argmax[static_cast<size_t>(c)] = r;
  }
  return push(std::move(v), track(a), [a, argmax = std::move(argmax)](Graph& g, const Mat& gout) {
    Mat gx = Mat::Zero(g.nodes_[a].value.rows(), g.nodes_[a].value.cols());
    for (Eigen::Index c = 0; c < gx.cols(); ++c) {
      gx(argmax[static_cast<size_t>(c)], c) += gout(0, c);
    }
    g.accumulate(a, gx);
  });
}

Graph::NodeId Graph::embed(Parameter& table, std::vector<int> ids) {
  Mat v(static_cast<Eigen::Index>(ids.size()), table.value.cols());
  for (size_t i = 0; i < ids.size(); ++i) v.row(static_cast<Eigen::Index>(i)) = table.value.row(ids[i]);
  Parameter* tp = &table;
  return push(std::move(v), true, [tp, ids = std::move(ids)](Graph&, const Mat& gout) {
    for (size_t i = 0; i < ids.size(); ++i) {
      tp->grad.row(ids[i]) += gout.row(static_cast<Eigen::Index>(i));
    }
  });
}

void Graph::add_output_grad(NodeId id, const Mat& g) { accumulate(id, g); }

void Graph::add_scalar_grad(NodeId id, double g) {
  Mat m(1, 1);
  m(0, 0) = g;
  accumulate(id, m);
}

void Graph::backward() {
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    Node& n = *it;
    if (!n.needs_grad || n.grad.size() == 0) continue;
    if (n.back) n.back(*this, n.grad);
    if (n.bound != nullptr) n.bound->grad += n.grad;
  }
}

}  // namespace topicseg::nn
