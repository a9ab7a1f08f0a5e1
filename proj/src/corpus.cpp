// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicseg/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "topicseg/errors.hpp"
#include "topicseg/hashing.hpp"
#include "topicseg/rng.hpp"

namespace topicseg {

namespace {

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

char ascii_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      size_t b = i, e = j;
      if (cfg_.strip_punctuation) {
        while (b < e && is_ascii_punct(text[b])) ++b;
        while (e > b && is_ascii_punct(text[e - 1])) --e;
      }
      if (e > b) {
        std::string tok(text.substr(b, e - b));
        if (cfg_.lowercase) {
          std::transform(tok.begin(), tok.end(), tok.begin(), ascii_lower);
        }
        tokens.push_back(std::move(tok));
      }
    }
    i = j;
  }
  return tokens;
}

size_t Conversation::sentence_count() const {
  size_t n = 0;
  for (const auto& seg : segments) n += seg.sentences.size();
  return n;
}

std::string to_string(CorpusStyle style) {
  switch (style) {
    case CorpusStyle::structured: return "structured";
    case CorpusStyle::semi_structured: return "semi-structured";
    case CorpusStyle::unstructured: return "unstructured";
    case CorpusStyle::synthetic: return "synthetic";
  }
  return "synthetic";
}

CorpusStyle corpus_style_from_string(std::string_view s) {
  if (s == "structured") return CorpusStyle::structured;
  if (s == "semi-structured" || s == "semi_structured") return CorpusStyle::semi_structured;
  if (s == "unstructured") return CorpusStyle::unstructured;
  if (s == "synthetic") return CorpusStyle::synthetic;
  throw UsageError("unknown corpus style: " + std::string(s));
}

void SyntheticSpec::validate() const {
  if (n_conversations < 0) throw InvalidSpec("n_conversations must be >= 0");
  if (segments_per_conversation.mean < 1.0 || sentences_per_segment.mean < 1.0 ||
      words_per_sentence.mean < 1.0) {
    throw InvalidSpec("count distribution means must be >= 1");
  }
  if (segments_per_conversation.spread < 0.0 || sentences_per_segment.spread < 0.0 ||
      words_per_sentence.spread < 0.0) {
    throw InvalidSpec("count distribution spreads must be >= 0");
  }
  if (topic_vocab_size < 1) throw InvalidSpec("topic_vocab_size must be >= 1");
  if (topic_vocab_overlap < 0.0 || topic_vocab_overlap > 1.0) {
    throw InvalidSpec("topic_vocab_overlap must be in [0, 1]");
  }
}

// --- JSONL -------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void malformed(size_t line_no, const std::string& what) {
  throw MalformedRecord("line " + std::to_string(line_no) + ": " + what);
}

Conversation parse_conversation_record(const std::string& line, size_t line_no,
                                       const Tokenizer& tokenizer) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    malformed(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!rec.is_object()) malformed(line_no, "record is not a JSON object");
  if (!rec.contains("conversation_id") || !rec["conversation_id"].is_string()) {
    malformed(line_no, "missing or non-string field 'conversation_id'");
  }
  if (!rec.contains("sentences") || !rec["sentences"].is_array()) {
    malformed(line_no, "missing or non-array field 'sentences'");
  }
  if (!rec.contains("segment_boundaries") || !rec["segment_boundaries"].is_array()) {
    malformed(line_no, "missing or non-array field 'segment_boundaries'");
  }

  Conversation conv;
  conv.conversation_id = rec["conversation_id"].get<std::string>();
  if (conv.conversation_id.empty()) malformed(line_no, "empty conversation_id");

  std::vector<Sentence> sentences;
  for (const auto& s : rec["sentences"]) {
    if (!s.is_object() || !s.contains("text") || !s["text"].is_string()) {
      malformed(line_no, "sentence record must be an object with a string 'text'");
    }
    Sentence sent;
    sent.text = s["text"].get<std::string>();
    if (s.contains("speaker") && !s["speaker"].is_null()) {
      if (!s["speaker"].is_string()) malformed(line_no, "'speaker' must be string or null");
      sent.speaker = s["speaker"].get<std::string>();
    }
    sent.tokens = tokenizer.tokenize(sent.text);
    if (sent.tokens.empty()) {
      malformed(line_no, "sentence " + std::to_string(sentences.size()) +
                             " is empty after tokenization");
    }
    sentences.push_back(std::move(sent));
  }
  if (sentences.empty()) malformed(line_no, "'sentences' must be non-empty");

  const long n = static_cast<long>(sentences.size());
  std::vector<long> boundaries;
  for (const auto& b : rec["segment_boundaries"]) {
    if (!b.is_number_integer()) malformed(line_no, "segment boundary must be an integer");
    boundaries.push_back(b.get<long>());
  }
  if (boundaries.empty()) malformed(line_no, "'segment_boundaries' must be non-empty");
  long prev = -1;
  for (const long b : boundaries) {
    if (b <= prev) malformed(line_no, "segment boundaries must be strictly increasing");
    if (b < 0 || b >= n) {
      malformed(line_no, "segment boundary " + std::to_string(b) + " out of range [0, " +
                             std::to_string(n - 1) + "]");
    }
    prev = b;
  }
  if (boundaries.back() != n - 1) {
    malformed(line_no, "final segment boundary must equal len(sentences)-1");
  }

  long start = 0;
  for (const long b : boundaries) {
    Segment seg;
    seg.sentences.assign(sentences.begin() + start, sentences.begin() + b + 1);
    conv.segments.push_back(std::move(seg));
    start = b + 1;
  }
  return conv;
}

}  // namespace

Corpus parse_corpus(std::istream& in, CorpusStyle style_tag, const Tokenizer& tokenizer) {
  Corpus corpus;
  corpus.style_tag = style_tag;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Conversation conv = parse_conversation_record(line, line_no, tokenizer);
    if (!seen_ids.insert(conv.conversation_id).second) {
      throw DuplicateConversationId("line " + std::to_string(line_no) +
                                    ": duplicate conversation_id '" + conv.conversation_id +
                                    "'");
    }
    corpus.conversations.push_back(std::move(conv));
  }
  return corpus;
}

std::string conversation_to_jsonl(const Conversation& conversation) {
  json rec;
  rec["conversation_id"] = conversation.conversation_id;
  json sents = json::array();
  json boundaries = json::array();
  long index = -1;
  for (const auto& seg : conversation.segments) {
    for (const auto& sent : seg.sentences) {
      json s;
      s["text"] = sent.text;
      if (sent.speaker) {
        s["speaker"] = *sent.speaker;
      } else {
        s["speaker"] = nullptr;
      }
      sents.push_back(std::move(s));
      ++index;
    }
    boundaries.push_back(index);
  }
  rec["sentences"] = std::move(sents);
  rec["segment_boundaries"] = std::move(boundaries);
  return rec.dump();
}

void serialize_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& conv : corpus.conversations) {
    out << conversation_to_jsonl(conv) << '\n';
  }
}

std::string serialize_corpus(const Corpus& corpus) {
  std::ostringstream oss;
  serialize_corpus(corpus, oss);
  return oss.str();
}

// --- synthetic generator -----------------------------------------------------

namespace {

constexpr double kTopicWordProbability = 0.9;
constexpr double kChatAbbreviationRate = 0.3;
constexpr double kChatFragmentRate = 0.3;

const std::array<const char*, 10> kFillerWords = {
    "the", "and", "so", "it", "is", "that", "we", "of", "to", "a"};

const std::array<const char*, 10> kAbbreviations = {
    "u", "ur", "lol", "btw", "idk", "omg", "brb", "thx", "pls", "np"};

// Pronounceable CVCV(CV) pseudo-word from an index stream.
std::string make_word(Rng& rng, int syllables) {
  static constexpr const char* kConsonants = "bdfghjklmnprstvz";
  static constexpr const char* kVowels = "aeiou";
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w += kConsonants[rng.uniform_int(0, 15)];
    w += kVowels[rng.uniform_int(0, 4)];
  }
  return w;
}

// Builds all topic vocabularies in one deterministic pass. The shared pool
// realizes topic_vocab_overlap; all other words are globally unique.
std::vector<std::vector<std::string>> build_topic_vocabularies(const SyntheticSpec& spec) {
  Rng rng(Rng::mix(spec.seed, 0xCABBULL));
  const int shared_count =
      static_cast<int>(std::lround(spec.topic_vocab_overlap * spec.topic_vocab_size));
  const int own_count = spec.topic_vocab_size - shared_count;

  std::unordered_set<std::string> used(kFillerWords.begin(), kFillerWords.end());
  used.insert(kAbbreviations.begin(), kAbbreviations.end());
  auto fresh_word = [&](int syllables) {
    for (;;) {
      std::string w = make_word(rng, syllables);
      if (used.insert(w).second) return w;
    }
  };

  std::vector<std::string> shared;
  shared.reserve(shared_count);
  for (int i = 0; i < shared_count; ++i) shared.push_back(fresh_word(3));

  std::vector<std::vector<std::string>> vocabs(kSyntheticTopicCount);
  for (int t = 0; t < kSyntheticTopicCount; ++t) {
    auto& v = vocabs[t];
    v.reserve(spec.topic_vocab_size);
    for (int i = 0; i < own_count; ++i) v.push_back(fresh_word(2 + (i % 2)));
    v.insert(v.end(), shared.begin(), shared.end());
  }
  return vocabs;
}

int draw_count(Rng& rng, const CountDistribution& d, int min_value = 1) {
  const double x = rng.normal(d.mean, d.spread);
  return std::max(min_value, static_cast<int>(std::lround(x)));
}

}  // namespace

std::vector<std::string> synthetic_topic_vocabulary(const SyntheticSpec& spec, int topic) {
  spec.validate();
  if (topic < 0 || topic >= kSyntheticTopicCount) {
    throw InvalidSpec("topic index out of range");
  }
  return build_topic_vocabularies(spec)[topic];
}

Corpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  spec.validate();
  Corpus corpus;
  corpus.style_tag = CorpusStyle::synthetic;

  const auto vocabs = build_topic_vocabularies(spec);
  const Tokenizer tokenizer;
  Rng rng(Rng::mix(spec.seed, 1));

  const bool chat = spec.style == SyntheticStyle::chat;
  for (int c = 0; c < spec.n_conversations; ++c) {
    Conversation conv;
    {
      std::ostringstream oss;
      oss << "syn-" << spec.seed << '-' << c;
      conv.conversation_id = oss.str();
    }
    const int n_segments = draw_count(rng, spec.segments_per_conversation);
    int prev_topic = -1;
    for (int s = 0; s < n_segments; ++s) {
      int topic = rng.uniform_int(0, kSyntheticTopicCount - 1);
      if (topic == prev_topic) topic = (topic + 1) % kSyntheticTopicCount;
      prev_topic = topic;
      const auto& vocab = vocabs[topic];

      Segment seg;
      const int n_sentences = draw_count(rng, spec.sentences_per_segment);
      for (int i = 0; i < n_sentences; ++i) {
        int n_words = draw_count(rng, spec.words_per_sentence);
        if (chat && rng.uniform() < kChatFragmentRate) {
          n_words = std::max(1, n_words / 2);
        }
        std::vector<std::string> words;
        words.reserve(n_words);
        for (int w = 0; w < n_words; ++w) {
          if (chat && rng.uniform() < kChatAbbreviationRate) {
            words.push_back(kAbbreviations[rng.uniform_int(0, 9)]);
          } else if (rng.uniform() < kTopicWordProbability) {
            words.push_back(vocab[rng.uniform_int(0, static_cast<int>(vocab.size()) - 1)]);
          } else {
            words.push_back(kFillerWords[rng.uniform_int(0, 9)]);
          }
        }

        Sentence sent;
        if (chat) {
          std::string text;
          for (size_t w = 0; w < words.size(); ++w) {
            if (w) text += ' ';
            text += words[w];
          }
          sent.text = std::move(text);
          sent.speaker = (conv.sentence_count() + seg.sentences.size()) % 2 == 0 ? "A" : "B";
        } else {
          std::string text = words[0];
          text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
          for (size_t w = 1; w < words.size(); ++w) {
            text += ' ';
            text += words[w];
          }
          text += '.';
          sent.text = std::move(text);
        }
        sent.tokens = tokenizer.tokenize(sent.text);
        seg.sentences.push_back(std::move(sent));
      }
      conv.segments.push_back(std::move(seg));
    }
    corpus.conversations.push_back(std::move(conv));
  }
  return corpus;
}

// --- statistics ---------------------------------------------------------------

namespace {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments population_moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (const double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (const double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(ss / static_cast<double>(xs.size()));
  return m;
}

}  // namespace

CorpusStats corpus_stats(const Corpus& corpus) {
  if (corpus.conversations.empty()) throw EmptyCorpus("corpus has no conversations");
  std::vector<double> sentence_lengths;
  std::vector<double> segment_lengths;
  for (const auto& conv : corpus.conversations) {
    for (const auto& seg : conv.segments) {
      segment_lengths.push_back(static_cast<double>(seg.sentences.size()));
      for (const auto& sent : seg.sentences) {
        sentence_lengths.push_back(static_cast<double>(sent.tokens.size()));
      }
    }
  }
  const Moments sent_m = population_moments(sentence_lengths);
  const Moments seg_m = population_moments(segment_lengths);
  CorpusStats stats;
  stats.mean_sentence_length_words = sent_m.mean;
  stats.sd_sentence_length_words = sent_m.sd;
  stats.mean_segment_length_sentences = seg_m.mean;
  stats.sd_segment_length_sentences = seg_m.sd;
  stats.n_conversations = corpus.conversations.size();
  return stats;
}

}  // namespace topicseg
