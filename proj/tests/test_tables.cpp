#include <gtest/gtest.h>

#include <algorithm>

#include "stbc/tables.hpp"

using namespace stbc;

TEST(Tables, ConstructionB) {
  const auto rows = build_table(Method::B, 2, 20);
  ASSERT_EQ(rows.size(), 19u);
  for (const auto& r : rows) EXPECT_EQ(r.status, RowStatus::Match) << r.n << " " << r.detail;
}

TEST(Tables, ConstructionA) {
  const auto rows = build_table(Method::A, 2, 20);
  ASSERT_EQ(rows.size(), 19u);
  int match = 0;
  for (const auto& r : rows) {
    if (r.n == 14) {
      EXPECT_EQ(r.status, RowStatus::AnnotatedTypo);
      EXPECT_EQ(r.q, 37);
    } else if (r.n == 9 || r.n == 15) {
      // reference 29 and 53 satisfy the congruences but are not the smallest such primes
      EXPECT_EQ(r.status, RowStatus::Mismatch);
      EXPECT_EQ(r.q, 13);
    } else {
      EXPECT_EQ(r.status, RowStatus::Match) << r.n << " " << r.detail;
      ++match;
    }
  }
  EXPECT_EQ(match, 16);
}

TEST(Tables, ReferenceLookup) {
  EXPECT_EQ(reference_table(Method::A).size(), 19u);
  EXPECT_EQ(reference_row(Method::A, 9)->q, 29);
  EXPECT_FALSE(reference_row(Method::A, 21).has_value());
  const auto rows = build_table(Method::A, 21, 22);
  for (const auto& r : rows) EXPECT_EQ(r.status, RowStatus::NoReference);
}

TEST(Tables, Rendering) {
  const auto rows = build_table(Method::B, 2, 4);
  const std::string csv = table_csv(Method::B, rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const std::string text = table_text(Method::B, rows);
  EXPECT_NE(text.find("3 match"), std::string::npos) << text;
}
