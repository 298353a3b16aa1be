#pragma once

// JSON series documents and the command runner behind the newtok CLI.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newtok/exactmath.hpp"
#include "newtok/limits.hpp"
#include "newtok/semigroup.hpp"
#include "newtok/series.hpp"

namespace newtok {

enum class DocumentType { Toric, Generated, Explicit, Multicomponent, Semigroup };

std::string document_type_name(DocumentType t);

struct DocumentOptions {
  std::optional<long> max_degree;
  std::vector<long> p;

  friend bool operator==(const DocumentOptions&, const DocumentOptions&) = default;
};

struct SeriesDocument {
  std::string schema_version = "1";
  DocumentType type = DocumentType::Toric;
  std::size_t d = 0;

  std::vector<IntVec> polytope;                 // toric
  std::vector<SeriesGenerator> generators;      // generated
  long max_degree = 0;                          // explicit, multicomponent
  std::map<long, std::vector<Poly>> bases;      // explicit
  std::vector<std::size_t> component_dims;      // multicomponent given by tuples
  std::map<long, std::vector<Tuple>> tuples;    // multicomponent given by tuples
  bool glued = false;                           // multicomponent glued at the origin
  std::vector<SeriesDocument> components;       // glued components
  std::vector<IntVec> semigroup_generators;     // semigroup, (horizontal, level)

  DocumentOptions options;

  friend bool operator==(const SeriesDocument&, const SeriesDocument&) = default;
};

/// Validates and parses a document. Throws SCHEMA_ERROR, BAD_RATIONAL or
/// BAD_EXPONENT with a JSON pointer to the offending value in the message.
SeriesDocument parse_document(const std::string& text);

/// Canonical JSON rendering; parse_document(emit_document(doc)) == doc.
std::string emit_document(const SeriesDocument& doc);

GradedLinearSeries to_series(const SeriesDocument& doc);
MultiComponentSeries to_multicomponent(const SeriesDocument& doc);
GradedSemigroup to_semigroup(const SeriesDocument& doc);

enum class OutputFormat { Json, Csv };

struct RunOptions {
  std::optional<long> max_degree;
  std::vector<long> p;
  OutputFormat format = OutputFormat::Json;
  std::vector<std::size_t> ordering;  // 0-based
  std::optional<Rational> tolerance;
  std::optional<long> n_max;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRefusal = 3;

struct RunResult {
  int exit_code = kExitOk;
  std::string output;  // report on success, JSON error object otherwise
};

const std::vector<std::string>& command_names();

/// Parses `text` and runs `command` on it. Never throws for input problems.
RunResult run(const std::string& command, const std::string& text, const RunOptions& options);

/// Parses a rational literal "p" or "p/q". Throws BAD_RATIONAL.
Rational parse_rational(const std::string& s);

}  // namespace newtok
