#pragma once

#include <stdexcept>
#include <string>

namespace hansard {

// Base for all data-level errors. The CLI maps these to exit code 2;
// usage errors are handled by the argument parser and map to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define HANSARD_DEFINE_ERROR(NAME)                              \
  class NAME : public Error {                                   \
   public:                                                      \
    explicit NAME(const std::string& msg) : Error(msg) {}       \
  }

// corpus_store
HANSARD_DEFINE_ERROR(InvariantViolation);
HANSARD_DEFINE_ERROR(DuplicateId);
HANSARD_DEFINE_ERROR(StoreUnavailable);

// ingest
HANSARD_DEFINE_ERROR(MalformedMarkup);
HANSARD_DEFINE_ERROR(NoDateFound);
HANSARD_DEFINE_ERROR(EmptyFile);

// linkage
HANSARD_DEFINE_ERROR(BothEmpty);
HANSARD_DEFINE_ERROR(EmptyRegister);

// dtm
HANSARD_DEFINE_ERROR(DuplicateLabel);
HANSARD_DEFINE_ERROR(EmptyVocabulary);
HANSARD_DEFINE_ERROR(EmptySelection);

// scaling
HANSARD_DEFINE_ERROR(DimensionMismatch);
HANSARD_DEFINE_ERROR(NotIdentifiable);
HANSARD_DEFINE_ERROR(DegenerateReferences);

// analysis
HANSARD_DEFINE_ERROR(ZeroVariance);
HANSARD_DEFINE_ERROR(TooFewPoints);
HANSARD_DEFINE_ERROR(InsufficientOverlap);
HANSARD_DEFINE_ERROR(EmptyResult);

// fixtures
HANSARD_DEFINE_ERROR(DegenerateSpec);

#undef HANSARD_DEFINE_ERROR

}  // namespace hansard
