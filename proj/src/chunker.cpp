// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/chunker.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "topicseg/errors.hpp"
#include "topicseg/rng.hpp"

namespace topicseg {

size_t LabeledDocument::segment_count() const {
  size_t n = 0;
  for (const int y : labels) n += static_cast<size_t>(y);
  return n;
}

std::vector<int> label_document(const std::vector<int>& segment_lengths) {
  std::vector<int> labels;
  for (const int len : segment_lengths) {
    if (len < 1) throw InvalidLength("segment length must be >= 1");
    labels.insert(labels.end(), static_cast<size_t>(len - 1), 0);
    labels.push_back(1);
  }
  return labels;
}

std::vector<LabeledDocument> chunk_conversations(const Corpus& corpus,
                                                 const ChunkingConfig& cfg) {
  if (cfg.segments_per_document < 1) {
    throw InvalidLength("segments_per_document must be >= 1");
  }
  const size_t n = static_cast<size_t>(cfg.segments_per_document);
  std::vector<LabeledDocument> docs;
  for (const auto& conv : corpus.conversations) {
    const size_t total = conv.segments.size();
    size_t doc_index = 0;
    for (size_t start = 0; start < total; start += n, ++doc_index) {
      const size_t end = std::min(start + n, total);
      if (end - start < n && cfg.drop_remainder) break;

      LabeledDocument doc;
      doc.source_conversation_id = conv.conversation_id;
      doc.document_id = conv.conversation_id + "#" + std::to_string(doc_index);
      std::vector<int> lengths;
      for (size_t s = start; s < end; ++s) {
        const auto& seg = conv.segments[s];
        doc.sentences.insert(doc.sentences.end(), seg.sentences.begin(), seg.sentences.end());
        lengths.push_back(static_cast<int>(seg.sentences.size()));
      }
      doc.labels = label_document(lengths);
      docs.push_back(std::move(doc));
    }
  }
  return docs;
}

namespace {

DatasetSplit split_shuffled(const std::vector<LabeledDocument>& docs,
                            std::array<size_t, 3> sizes, uint64_t seed,
                            SplitFractions fractions) {
  std::vector<size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(Rng::mix(seed, 0x5B117ULL));
  rng.shuffle(order);

  DatasetSplit split;
  split.seed = seed;
  split.fractions = fractions;
  size_t pos = 0;
  for (int part = 0; part < 3; ++part) {
    auto& dst = part == 0 ? split.train : part == 1 ? split.finetune : split.test;
    dst.reserve(sizes[part]);
    for (size_t i = 0; i < sizes[part]; ++i, ++pos) dst.push_back(docs[order[pos]]);
  }
  return split;
}

}  // namespace

DatasetSplit split_dataset(const std::vector<LabeledDocument>& docs,
                           SplitFractions fractions, uint64_t seed) {
  const double sum = fractions.train + fractions.finetune + fractions.test;
  if (fractions.train <= 0.0 || fractions.finetune <= 0.0 || fractions.test <= 0.0 ||
      std::abs(sum - 1.0) > 1e-9) {
    throw InvalidFractions("fractions must be positive and sum to 1");
  }
  const size_t n = docs.size();
  std::array<size_t, 3> sizes = {
      static_cast<size_t>(std::floor(fractions.train * static_cast<double>(n))),
      static_cast<size_t>(std::floor(fractions.finetune * static_cast<double>(n))),
      static_cast<size_t>(std::floor(fractions.test * static_cast<double>(n)))};
  size_t leftover = n - (sizes[0] + sizes[1] + sizes[2]);
  // Leftovers go to train first, then finetune.
  if (leftover > 0) {
    ++sizes[0];
    --leftover;
  }
  if (leftover > 0) {
    ++sizes[1];
    --leftover;
  }
  return split_shuffled(docs, sizes, seed, fractions);
}

DatasetSplit split_dataset_counts(const std::vector<LabeledDocument>& docs,
                                  std::array<size_t, 3> counts, uint64_t seed) {
  if (counts[0] + counts[1] + counts[2] != docs.size()) {
    throw InvalidFractions("absolute split counts must sum to the document count");
  }
  SplitFractions fr;
  if (!docs.empty()) {
    const double n = static_cast<double>(docs.size());
    fr.train = static_cast<double>(counts[0]) / n;
    fr.finetune = static_cast<double>(counts[1]) / n;
    fr.test = static_cast<double>(counts[2]) / n;
  }
  return split_shuffled(docs, counts, seed, fr);
}

// --- document JSONL ----------------------------------------------------------

namespace {
using json = nlohmann::ordered_json;
}

std::string document_to_jsonl(const LabeledDocument& doc) {
  json rec;
  rec["document_id"] = doc.document_id;
  rec["source_conversation_id"] = doc.source_conversation_id;
  json sents = json::array();
  for (const auto& s : doc.sentences) sents.push_back(s.text);
  rec["sentences"] = std::move(sents);
  rec["labels"] = doc.labels;
  return rec.dump();
}

void serialize_documents(std::span<const LabeledDocument> docs, std::ostream& out) {
  for (const auto& d : docs) out << document_to_jsonl(d) << '\n';
}

std::vector<LabeledDocument> parse_documents(std::istream& in, const Tokenizer& tokenizer) {
  std::vector<LabeledDocument> docs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    auto require = [&](const char* key, bool ok) {
      if (!rec.contains(key) || !ok) {
        throw MalformedRecord("line " + std::to_string(line_no) +
                              ": missing or malformed field '" + key + "'");
      }
    };
    require("document_id", rec.contains("document_id") && rec["document_id"].is_string());
    require("source_conversation_id", rec.contains("source_conversation_id") &&
                                          rec["source_conversation_id"].is_string());
    require("sentences", rec.contains("sentences") && rec["sentences"].is_array());
    require("labels", rec.contains("labels") && rec["labels"].is_array());

    LabeledDocument doc;
    doc.document_id = rec["document_id"].get<std::string>();
    doc.source_conversation_id = rec["source_conversation_id"].get<std::string>();
    for (const auto& s : rec["sentences"]) {
      if (!s.is_string()) {
        throw MalformedRecord("line " + std::to_string(line_no) + ": sentence must be a string");
      }
      Sentence sent;
      sent.text = s.get<std::string>();
      sent.tokens = tokenizer.tokenize(sent.text);
      if (sent.tokens.empty()) {
        throw MalformedRecord("line " + std::to_string(line_no) +
                              ": sentence is empty after tokenization");
      }
      doc.sentences.push_back(std::move(sent));
    }
    for (const auto& y : rec["labels"]) {
      if (!y.is_number_integer() || (y.get<int>() != 0 && y.get<int>() != 1)) {
        throw MalformedRecord("line " + std::to_string(line_no) + ": labels must be 0 or 1");
      }
      doc.labels.push_back(y.get<int>());
    }
    if (doc.sentences.empty() || doc.labels.size() != doc.sentences.size()) {
      throw MalformedRecord("line " + std::to_string(line_no) +
                            ": labels must align with a non-empty sentence list");
    }
    if (doc.labels.back() != 1) {
      throw MalformedRecord("line " + std::to_string(line_no) + ": final label must be 1");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace topicseg
