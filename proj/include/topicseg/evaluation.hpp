// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Boundary-level precision/recall/F1: thresholding of per-position
// probabilities into boundary sets, exact set-match counting, and
// micro-averaged aggregation across documents.

#ifndef TOPICSEG_EVALUATION_HPP_
#define TOPICSEG_EVALUATION_HPP_

#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topicseg/chunker.hpp"

namespace topicseg {

// Candidate-position indices predicted/annotated as boundaries within one
// document; valid indices are [0, S-2] (the final sentence is excluded).
using BoundarySet = std::set<int>;

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

// Indices i with probs[i] >= tau. Throws InvalidThreshold unless tau in [0,1].
BoundarySet boundaries_from_probs(std::span<const double> probs, double tau);

// Exact set-match counting; P (or R) with a zero denominator is 0, and
// F1 = 2PR/(P+R) when P+R > 0, else 0.
Metrics precision_recall_f1(const BoundarySet& predicted, const BoundarySet& gold);

Metrics metrics_from_counts(long tp, long fp, long fn);

// Gold boundary indices of a labeled document (final position excluded).
BoundarySet gold_boundaries(const LabeledDocument& doc);

struct EvaluationReport {
  Metrics aggregate;  // micro-average: counts summed over documents
  std::vector<std::pair<std::string, Metrics>> per_document;
};

// Per-document probabilities for the S-1 candidate positions.
using Predictor = std::function<std::vector<double>(const LabeledDocument&)>;

// Documents with fewer than 2 sentences have no candidate positions and
// contribute zero counts. Throws EmptyTestSet.
EvaluationReport evaluate_predictor(const Predictor& predictor,
                                    std::span<const LabeledDocument> test_docs, double tau);

std::string per_document_metrics_jsonl(const EvaluationReport& report);

}  // namespace topicseg

#endif  // TOPICSEG_EVALUATION_HPP_
