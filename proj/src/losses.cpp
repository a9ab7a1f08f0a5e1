// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/losses.hpp"

#include <algorithm>
#include <cmath>

#include "topicseg/errors.hpp"

namespace topicseg {

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::cross_entropy: return "cross_entropy";
    case LossKind::weighted_cross_entropy: return "weighted_cross_entropy";
    case LossKind::focal: return "focal";
  }
  return "cross_entropy";
}

LossKind loss_kind_from_string(std::string_view s) {
  if (s == "cross_entropy" || s == "ce") return LossKind::cross_entropy;
  if (s == "weighted_cross_entropy" || s == "weighted_ce" || s == "wce") {
    return LossKind::weighted_cross_entropy;
  }
  if (s == "focal") return LossKind::focal;
  throw UsageError("unknown loss kind: " + std::string(s));
}

void LossConfig::validate() const {
  if (w0 < 0.0 || w1 < 0.0) throw InvalidWeights("class weights must be nonnegative");
  if (alpha < 0.0 || alpha > 1.0) throw InvalidFocalParams("alpha must be in [0, 1]");
  if (gamma < 0.0) throw InvalidFocalParams("gamma must be >= 0");
  if (!(eps > 0.0) || !(eps < 0.01)) throw UsageError("probability clamp must be in (0, 0.01)");
}

double stable_sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

double clamp_probability(double p, double eps) {
  if (p < 0.0 || p > 1.0) {
    throw InvalidProbability("probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, eps, 1.0 - eps);
}

void check_label(int y) {
  if (y != 0 && y != 1) throw UsageError("label must be 0 or 1");
}

}  // namespace

double weighted_cross_entropy(double p, int y, double w0, double w1, double eps) {
  check_label(y);
  if (w0 < 0.0 || w1 < 0.0) throw InvalidWeights("class weights must be nonnegative");
  const double q = clamp_probability(p, eps);
  return y == 1 ? -w1 * std::log(q) : -w0 * std::log(1.0 - q);
}

double focal_loss(double p, int y, double alpha, double gamma, double eps) {
  check_label(y);
  if (alpha < 0.0 || alpha > 1.0) throw InvalidFocalParams("alpha must be in [0, 1]");
  if (gamma < 0.0) throw InvalidFocalParams("gamma must be >= 0");
  const double q = clamp_probability(p, eps);
  if (y == 1) {
    return -alpha * std::pow(1.0 - q, gamma) * std::log(q);
  }
  return -(1.0 - alpha) * std::pow(q, gamma) * std::log(1.0 - q);
}

double elementwise_loss(double p, int y, const LossConfig& cfg) {
  switch (cfg.kind) {
    case LossKind::cross_entropy:
      return weighted_cross_entropy(p, y, 1.0, 1.0, cfg.eps);
    case LossKind::weighted_cross_entropy:
      return weighted_cross_entropy(p, y, cfg.w0, cfg.w1, cfg.eps);
    case LossKind::focal:
      return focal_loss(p, y, cfg.alpha, cfg.gamma, cfg.eps);
  }
  return 0.0;
}

double batch_loss(std::span<const double> probabilities, std::span<const int> labels,
                  const LossConfig& cfg) {
  if (probabilities.empty()) throw EmptyBatch("batch_loss over empty inputs");
  if (probabilities.size() != labels.size()) {
    throw LengthMismatch("probabilities and labels differ in length");
  }
  double sum = 0.0;
  for (size_t i = 0; i < probabilities.size(); ++i) {
    sum += elementwise_loss(probabilities[i], labels[i], cfg);
  }
  return sum / static_cast<double>(probabilities.size());
}

double loss_gradient_logit(double z, int y, const LossConfig& cfg) {
  check_label(y);
  const double p = stable_sigmoid(z);
  switch (cfg.kind) {
    case LossKind::cross_entropy:
      return y == 1 ? p - 1.0 : p;
    case LossKind::weighted_cross_entropy:
      return y == 1 ? cfg.w1 * (p - 1.0) : cfg.w0 * p;
    case LossKind::focal: {
      // d/dz of Eq. (2) with p = sigmoid(z), written without negative powers
      // of p or (1-p) so the result stays finite at extreme logits.
      const double a = cfg.alpha;
      const double g = cfg.gamma;
      if (y == 1) {
        // L = -a (1-p)^g log p
        // dL/dz = a g (1-p)^g p log p - a (1-p)^(g+1)
        const double omp = 1.0 - p;
        const double logp = p > 0.0 ? std::log(p) : std::log(cfg.eps);
        return a * g * std::pow(omp, g) * p * logp - a * std::pow(omp, g + 1.0);
      }
      // L = -(1-a) p^g log(1-p)
      // dL/dz = -(1-a) g p^g (1-p) log(1-p) + (1-a) p^(g+1)
      const double omp = 1.0 - p;
      const double logq = omp > 0.0 ? std::log(omp) : std::log(cfg.eps);
      return -(1.0 - a) * g * std::pow(p, g) * omp * logq + (1.0 - a) * std::pow(p, g + 1.0);
    }
  }
  return 0.0;
}

}  // namespace topicseg
