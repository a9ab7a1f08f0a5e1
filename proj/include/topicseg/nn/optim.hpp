// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TOPICSEG_NN_OPTIM_HPP_
#define TOPICSEG_NN_OPTIM_HPP_

#include <memory>
#include <vector>

#include "topicseg/nn/graph.hpp"

namespace topicseg::nn {

class Optimizer {
 public:
  explicit Optimizer(std::vector<Parameter*> params) : params_(std::move(params)) {}
  virtual ~Optimizer() = default;

  virtual void step() = 0;

  void zero_grad() {
    for (Parameter* p : params_) p->zero_grad();
  }

 protected:
  std::vector<Parameter*> params_;
};

class Sgd : public Optimizer {
 public:
  Sgd(std::vector<Parameter*> params, double lr) : Optimizer(std::move(params)), lr_(lr) {}

  void step() override {
    for (Parameter* p : params_) p->value -= lr_ * p->grad;
  }

 private:
  double lr_;
};

// Adaptive moment estimation with bias correction.
class Adam : public Optimizer {
 public:
  Adam(std::vector<Parameter*> params, double lr, double beta1 = 0.9, double beta2 = 0.999,
       double eps = 1e-8)
      : Optimizer(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    m_.reserve(params_.size());
    v_.reserve(params_.size());
    for (const Parameter* p : params_) {
      m_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
      v_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
    }
  }

  void step() override {
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i = 0; i < params_.size(); ++i) {
      Parameter& p = *params_[i];
      m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * p.grad;
      v_[i] = (beta2_ * v_[i].array() + (1.0 - beta2_) * p.grad.array().square()).matrix();
      p.value.array() -=
          lr_ * (m_[i].array() / bc1) / ((v_[i].array() / bc2).sqrt() + eps_);
    }
  }

 private:
  double lr_, beta1_, beta2_, eps_;
  int t_ = 0;
  std::vector<Mat> m_, v_;
};

}  // namespace topicseg::nn

#endif  // TOPICSEG_NN_OPTIM_HPP_
