#pragma once

// Published non-norm element tables for Constructions A and B, and a row by
// row comparison against freshly constructed specs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stbc/cda.hpp"
#include "stbc/numtheory.hpp"

namespace stbc {

struct ReferenceRow {
  int n = 0;
  std::int64_t prime_power = 0;  // 0 when the table has no such column
  std::int64_t q = 0;
  GaussianInt gamma;
  std::string note;  // known misprint, empty otherwise
};

/// Reference rows n = 2..20.
const std::vector<ReferenceRow>& reference_table(Method m);
std::optional<ReferenceRow> reference_row(Method m, int n);

enum class RowStatus { Match, AnnotatedTypo, Mismatch, NoReference };
std::string to_string(RowStatus s);

struct TableRow {
  int n = 0;
  std::int64_t prime_power = 0;
  std::int64_t q = 0;
  GaussianInt gamma;
  std::optional<ReferenceRow> reference;
  RowStatus status = RowStatus::NoReference;
  std::string detail;
};

/// Builds the spec for every n in [from, to] and diffs it against the
/// reference. γ is compared up to units and conjugation, q exactly; on the
/// annotated misprint the reference γ must have norm equal to the computed q.
std::vector<TableRow> build_table(Method m, int from, int to);

std::string table_csv(Method m, const std::vector<TableRow>& rows);
std::string table_text(Method m, const std::vector<TableRow>& rows);

}  // namespace stbc
