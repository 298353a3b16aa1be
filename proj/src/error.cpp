#include "newtok/error.hpp"

namespace newtok {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::NotSubgroup: return "NOT_SUBGROUP";
    case ErrorCode::NegativeLevel: return "NEGATIVE_LEVEL";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::EmptySemigroup: return "EMPTY_SEMIGROUP";
    case ErrorCode::InsufficientSamples: return "INSUFFICIENT_SAMPLES";
    case ErrorCode::EmptySet: return "EMPTY_SET";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::UnsupportedDimension: return "UNSUPPORTED_DIMENSION";
    case ErrorCode::ZeroPoly: return "ZERO_POLY";
    case ErrorCode::ZeroPiece: return "ZERO_PIECE";
    case ErrorCode::AllZero: return "ALL_ZERO";
    case ErrorCode::KappaUndefined: return "KAPPA_UNDEFINED";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
    case ErrorCode::Unstable: return "UNSTABLE";
    case ErrorCode::EmptySlice: return "EMPTY_SLICE";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::NotInjective: return "NOT_INJECTIVE";
    case ErrorCode::NotSubalgebra: return "NOT_SUBALGEBRA";
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::BadRational: return "BAD_RATIONAL";
    case ErrorCode::BadExponent: return "BAD_EXPONENT";
  }
  return "UNKNOWN";
}

bool is_validation_error(ErrorCode code) {
  return code == ErrorCode::SchemaError || code == ErrorCode::BadRational ||
         code == ErrorCode::BadExponent;
}

}  // namespace newtok
