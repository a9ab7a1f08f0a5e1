// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Preprocessing: partition conversations into documents of N segments, attach
// per-sentence end-of-segment labels, and split documents into
// train/finetune/test sets.

#ifndef TOPICSEG_CHUNKER_HPP_
#define TOPICSEG_CHUNKER_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "topicseg/corpus.hpp"

namespace topicseg {

struct ChunkingConfig {
  int segments_per_document = 5;  // N
  bool drop_remainder = true;
};

struct LabeledDocument {
  std::string document_id;
  std::string source_conversation_id;
  std::vector<Sentence> sentences;
  std::vector<int> labels;  // 0/1 per sentence; 1 = last sentence of a segment

  size_t segment_count() const;
};

// Concatenation of (length-1 zeros followed by one 1) per segment.
// Throws InvalidLength if any length < 1.
std::vector<int> label_document(const std::vector<int>& segment_lengths);

// Each document holds N consecutive segments of one conversation, in order.
// With drop_remainder, trailing groups of < N segments are discarded;
// otherwise a shorter final document (>= 1 segment) is kept.
std::vector<LabeledDocument> chunk_conversations(const Corpus& corpus,
                                                 const ChunkingConfig& cfg);

struct SplitFractions {
  double train = 0.8;
  double finetune = 0.1;
  double test = 0.1;
};

struct DatasetSplit {
  std::vector<LabeledDocument> train;
  std::vector<LabeledDocument> finetune;
  std::vector<LabeledDocument> test;
  uint64_t seed = 0;
  SplitFractions fractions;
};

// Deterministic shuffle by seed, then floor allocation with leftover documents
// assigned to train first, then finetune. Throws InvalidFractions unless all
// fractions are positive and sum to 1 within 1e-9.
DatasetSplit split_dataset(const std::vector<LabeledDocument>& docs,
                           SplitFractions fractions, uint64_t seed);

// Absolute-count variant, for reproducing externally reported splits exactly.
// counts must sum to docs.size().
DatasetSplit split_dataset_counts(const std::vector<LabeledDocument>& docs,
                                  std::array<size_t, 3> counts, uint64_t seed);

// --- document JSONL ----------------------------------------------------------
// {"document_id": str, "source_conversation_id": str,
//  "sentences": [str, ...], "labels": [0|1, ...]}

std::string document_to_jsonl(const LabeledDocument& doc);
void serialize_documents(std::span<const LabeledDocument> docs, std::ostream& out);
std::vector<LabeledDocument> parse_documents(std::istream& in,
                                             const Tokenizer& tokenizer = Tokenizer{});

}  // namespace topicseg

#endif  // TOPICSEG_CHUNKER_HPP_
