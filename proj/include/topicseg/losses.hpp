// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Class-weighted cross-entropy and focal loss for end-of-segment
// classification, with analytic gradients w.r.t. the pre-sigmoid logit.

#ifndef TOPICSEG_LOSSES_HPP_
#define TOPICSEG_LOSSES_HPP_

#include <span>
#include <string>
#include <string_view>

namespace topicseg {

enum class LossKind { cross_entropy, weighted_cross_entropy, focal };

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(std::string_view s);

struct LossConfig {
  LossKind kind = LossKind::cross_entropy;
  // weighted cross-entropy: class weights for labels 0 and 1
  double w0 = 0.2;
  double w1 = 0.8;
  // focal loss
  double alpha = 0.8;
  double gamma = 2.0;
  // probability clamp applied before any log
  double eps = 1e-7;

  void validate() const;  // throws InvalidWeights / InvalidFocalParams / UsageError
};

double stable_sigmoid(double z);

// -w1*log(p) if y=1 else -w0*log(1-p); with weights [1,1] this is plain
// cross-entropy. p is clamped to [eps, 1-eps].
double weighted_cross_entropy(double p, int y, double w0, double w1, double eps = 1e-7);

// -alpha*(1-p)^gamma*log(p) if y=1, else -(1-alpha)*p^gamma*log(1-p).
double focal_loss(double p, int y, double alpha, double gamma, double eps = 1e-7);

double elementwise_loss(double p, int y, const LossConfig& cfg);

// Arithmetic mean of per-element losses. Throws EmptyBatch / LengthMismatch.
double batch_loss(std::span<const double> probabilities, std::span<const int> labels,
                  const LossConfig& cfg);

// Analytic d(loss)/dz with p = sigmoid(z). Finite for all finite z.
double loss_gradient_logit(double z, int y, const LossConfig& cfg);

}  // namespace topicseg

#endif  // TOPICSEG_LOSSES_HPP_
