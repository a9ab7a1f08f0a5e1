// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TOPICSEG_ERRORS_HPP_
#define TOPICSEG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace topicseg {

// Error categories, mapped to CLI exit codes:
//   UsageError -> 1, DataError -> 2, TrainingError -> 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// corpus
struct MalformedRecord : DataError {
  using DataError::DataError;
};
struct DuplicateConversationId : DataError {
  using DataError::DataError;
};
struct InvalidSpec : UsageError {
  using UsageError::UsageError;
};
struct EmptyCorpus : DataError {
  using DataError::DataError;
};

// chunker
struct InvalidLength : UsageError {
  using UsageError::UsageError;
};
struct InvalidFractions : UsageError {
  using UsageError::UsageError;
};

// losses
struct InvalidProbability : UsageError {
  using UsageError::UsageError;
};
struct InvalidWeights : UsageError {
  using UsageError::UsageError;
};
struct InvalidFocalParams : UsageError {
  using UsageError::UsageError;
};
struct EmptyBatch : UsageError {
  using UsageError::UsageError;
};
struct LengthMismatch : UsageError {
  using UsageError::UsageError;
};

// models
struct IndexOutOfRange : UsageError {
  using UsageError::UsageError;
};
struct InputTooLong : DataError {
  using DataError::DataError;
};
struct EmptySentence : DataError {
  using DataError::DataError;
};
struct DocumentTooShort : DataError {
  using DataError::DataError;
};
struct InvalidConfig : UsageError {
  using UsageError::UsageError;
};

// trainer
struct EmptyTrainingSet : DataError {
  using DataError::DataError;
};
struct DivergedLoss : TrainingError {
  using TrainingError::TrainingError;
};
struct CheckpointMismatch : DataError {
  using DataError::DataError;
};
struct DatasetNotFound : DataError {
  using DataError::DataError;
};

// evaluation
struct InvalidThreshold : UsageError {
  using UsageError::UsageError;
};
struct EmptyTestSet : DataError {
  using DataError::DataError;
};

// reporting
struct UnknownFormat : UsageError {
  using UsageError::UsageError;
};
struct DuplicateSegmentCount : UsageError {
  using UsageError::UsageError;
};
struct InvalidSegmentCount : UsageError {
  using UsageError::UsageError;
};

}  // namespace topicseg

#endif  // TOPICSEG_ERRORS_HPP_
