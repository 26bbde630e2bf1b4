#include "symframes/error.hpp"

namespace symframes {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonBijectiveImage: return "NonBijectiveImage";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::OrderExceedsCap: return "OrderExceedsCap";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::NotReal: return "NotReal";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::NoSuchCharacter: return "NoSuchCharacter";
    case ErrorCode::ZeroMultiplicity: return "ZeroMultiplicity";
    case ErrorCode::NotLinearCharacter: return "NotLinearCharacter";
    case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorCode::StabilizerNotSubgroup: return "StabilizerNotSubgroup";
    case ErrorCode::MultiplicityNotOne: return "MultiplicityNotOne";
    case ErrorCode::AllChoicesZero: return "AllChoicesZero";
    case ErrorCode::MissingCrossBlock: return "MissingCrossBlock";
    case ErrorCode::InconsistentDimensions: return "InconsistentDimensions";
    case ErrorCode::NoFeasiblePhase: return "NoFeasiblePhase";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::RankExceedsDimension: return "RankExceedsDimension";
    case ErrorCode::DuplicateVectors: return "DuplicateVectors";
    case ErrorCode::CoherenceExceeded: return "CoherenceExceeded";
    case ErrorCode::NormalizationNotExact: return "NormalizationNotExact";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::SubgroupNotContained: return "SubgroupNotContained";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace symframes
