// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/evaluation.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "topicseg/errors.hpp"

namespace topicseg {

BoundarySet boundaries_from_probs(std::span<const double> probs, double tau) {
  if (tau < 0.0 || tau > 1.0) {
    throw InvalidThreshold("threshold " + std::to_string(tau) + " outside [0, 1]");
  }
  BoundarySet set;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] >= tau) set.insert(static_cast<int>(i));
  }
  return set;
}

Metrics metrics_from_counts(long tp, long fp, long fn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  const double pr = m.precision + m.recall;
  m.f1 = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
  return m;
}

Metrics precision_recall_f1(const BoundarySet& predicted, const BoundarySet& gold) {
  long tp = 0;
  for (const int i : predicted) {
    if (gold.count(i)) ++tp;
  }
  const long fp = static_cast<long>(predicted.size()) - tp;
  const long fn = static_cast<long>(gold.size()) - tp;
  return metrics_from_counts(tp, fp, fn);
}

BoundarySet gold_boundaries(const LabeledDocument& doc) {
  BoundarySet set;
  if (doc.sentences.size() < 2) return set;
  for (size_t i = 0; i + 1 < doc.labels.size(); ++i) {
    if (doc.labels[i] == 1) set.insert(static_cast<int>(i));
  }
  return set;
}

EvaluationReport evaluate_predictor(const Predictor& predictor,
                                    std::span<const LabeledDocument> test_docs, double tau) {
  if (test_docs.empty()) throw EmptyTestSet("no test documents");
  if (tau < 0.0 || tau > 1.0) {
    throw InvalidThreshold("threshold " + std::to_string(tau) + " outside [0, 1]");
  }
  EvaluationReport report;
  long tp = 0, fp = 0, fn = 0;
  for (const auto& doc : test_docs) {
    Metrics m;
    if (doc.sentences.size() >= 2) {
      const std::vector<double> probs = predictor(doc);
      const BoundarySet predicted = boundaries_from_probs(probs, tau);
      m = precision_recall_f1(predicted, gold_boundaries(doc));
    }
    tp += m.tp;
    fp += m.fp;
    fn += m.fn;
    report.per_document.emplace_back(doc.document_id, m);
  }
  report.aggregate = metrics_from_counts(tp, fp, fn);
  return report;
}

std::string per_document_metrics_jsonl(const EvaluationReport& report) {
  std::ostringstream oss;
  for (const auto& [id, m] : report.per_document) {
    nlohmann::ordered_json rec;
    rec["document_id"] = id;
    rec["tp"] = m.tp;
    rec["fp"] = m.fp;
    rec["fn"] = m.fn;
    rec["precision"] = m.precision;
    rec["recall"] = m.recall;
    rec["f1"] = m.f1;
    oss << rec.dump() << '\n';
  }
  return oss.str();
}

}  // namespace topicseg
