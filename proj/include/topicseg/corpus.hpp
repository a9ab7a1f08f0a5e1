// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Canonical conversation data model: tokenization, the line-delimited corpus
// format, a deterministic synthetic-corpus generator, and corpus statistics.

#ifndef TOPICSEG_CORPUS_HPP_
#define TOPICSEG_CORPUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace topicseg {

struct TokenizerConfig {
  bool lowercase = true;
  bool strip_punctuation = true;  // surrounding ASCII punctuation only
};

// Lowercases (ASCII), splits on whitespace, strips surrounding punctuation.
// Tokens that are empty after stripping (e.g. "!!!") are dropped.
class Tokenizer {
 public:
  explicit Tokenizer(TokenizerConfig cfg = {}) : cfg_(cfg) {}

  std::vector<std::string> tokenize(std::string_view text) const;

  const TokenizerConfig& config() const { return cfg_; }

 private:
  TokenizerConfig cfg_;
};

struct Sentence {
  std::string text;
  std::vector<std::string> tokens;  // cached tokenization of text
  std::optional<std::string> speaker;
};

struct Segment {
  std::vector<Sentence> sentences;  // length >= 1
};

struct Conversation {
  std::string conversation_id;
  std::vector<Segment> segments;  // length >= 1

  size_t sentence_count() const;
};

enum class CorpusStyle { structured, semi_structured, unstructured, synthetic };

std::string to_string(CorpusStyle style);
CorpusStyle corpus_style_from_string(std::string_view s);

struct Corpus {
  std::vector<Conversation> conversations;
  CorpusStyle style_tag = CorpusStyle::synthetic;
};

// Parameters of a clamped, rounded normal draw for counts.
struct CountDistribution {
  double mean = 1.0;
  double spread = 0.0;
};

enum class SyntheticStyle { chat, structured };

struct SyntheticSpec {
  int n_conversations = 20;
  CountDistribution segments_per_conversation{5.0, 1.0};
  CountDistribution sentences_per_segment{6.0, 2.0};
  CountDistribution words_per_sentence{8.0, 3.0};
  int topic_vocab_size = 40;
  double topic_vocab_overlap = 0.0;  // fraction of each topic vocab shared
  SyntheticStyle style = SyntheticStyle::chat;
  uint64_t seed = 0;

  void validate() const;  // throws InvalidSpec
};

struct CorpusStats {
  double mean_sentence_length_words = 0.0;
  double sd_sentence_length_words = 0.0;  // population sd
  double mean_segment_length_sentences = 0.0;
  double sd_segment_length_sentences = 0.0;
  size_t n_conversations = 0;
};

// --- line-delimited corpus format -------------------------------------------
//
// One conversation per line:
//   {"conversation_id": str,
//    "sentences": [{"text": str, "speaker": str|null}, ...],
//    "segment_boundaries": [int, ...]}
// segment_boundaries holds the 0-based index of the LAST sentence of each
// segment, strictly increasing, final entry = len(sentences) - 1.

// Throws MalformedRecord (with the 1-based line number) or
// DuplicateConversationId.
Corpus parse_corpus(std::istream& in, CorpusStyle style_tag,
                    const Tokenizer& tokenizer = Tokenizer{});

std::string conversation_to_jsonl(const Conversation& conversation);
void serialize_corpus(const Corpus& corpus, std::ostream& out);
std::string serialize_corpus(const Corpus& corpus);

// --- synthetic corpora -------------------------------------------------------

// Number of topic vocabularies the generator rotates through.
constexpr int kSyntheticTopicCount = 10;

// The vocabulary of one topic, a pure function of (spec.seed,
// spec.topic_vocab_size, spec.topic_vocab_overlap, topic). Exposed so tests
// can check topic-separation properties of generated corpora.
std::vector<std::string> synthetic_topic_vocabulary(const SyntheticSpec& spec, int topic);

// Deterministic function of spec (style_tag = synthetic). Adjacent segments in
// a conversation always carry different topics; each sentence draws ~90% of
// its words from the segment's topic vocabulary and the rest from a fixed
// filler list. Chat style adds abbreviations and sentence fragments.
Corpus generate_synthetic_corpus(const SyntheticSpec& spec);

// Means/sds over all sentences (word counts) and all segments (sentence
// counts); population standard deviation. Throws EmptyCorpus.
CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace topicseg

#endif  // TOPICSEG_CORPUS_HPP_
