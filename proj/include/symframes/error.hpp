#pragma once

#include <stdexcept>
#include <string>

namespace symframes {

enum class ErrorCode {
  NonBijectiveImage,
  DegreeMismatch,
  OrderExceedsCap,
  NotASubgroup,
  BudgetExhausted,
  PrecisionUnreachable,
  NotReal,
  NonIntegerMultiplicity,
  NoSuchCharacter,
  ZeroMultiplicity,
  NotLinearCharacter,
  ElementNotInGroup,
  StabilizerNotSubgroup,
  MultiplicityNotOne,
  AllChoicesZero,
  MissingCrossBlock,
  InconsistentDimensions,
  NoFeasiblePhase,
  NotPSD,
  RankExceedsDimension,
  DuplicateVectors,
  CoherenceExceeded,
  NormalizationNotExact,
  ParseError,
  OrderMismatch,
  SubgroupNotContained,
  UnknownExample,
  Unsupported,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symframes
