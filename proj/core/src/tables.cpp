#include "stbc/tables.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace stbc {

namespace {

const std::vector<ReferenceRow> kTableA = {
    {2, 8, 5, {2, 1}, ""},       {3, 7, 5, {2, 1}, ""},     {4, 8, 5, {2, 1}, ""},
    {5, 11, 13, {3, 2}, ""},     {6, 7, 5, {2, 1}, ""},     {7, 29, 37, {6, 1}, ""},
    {8, 8, 5, {2, 1}, ""},       {9, 19, 29, {5, 2}, ""},   {10, 11, 13, {3, 2}, ""},
    {11, 23, 5, {2, 1}, ""},     {12, 7, 5, {2, 1}, ""},    {13, 53, 5, {2, 1}, ""},
    {14, 29, 36, {6, 1}, "reference q=36 is not prime; 6+i has norm 37"},
    {15, 31, 53, {7, 2}, ""},    {16, 8, 5, {2, 1}, ""},    {17, 103, 5, {2, 1}, ""},
    {18, 19, 13, {3, 2}, ""},    {19, 191, 29, {5, 2}, ""}, {20, 11, 13, {3, 2}, ""},
};

const std::vector<ReferenceRow> kTableB = {
    {2, 0, 5, {2, 1}, ""},   {3, 0, 5, {2, 1}, ""},   {4, 0, 5, {2, 1}, ""},     {5, 0, 13, {3, 2}, ""},
    {6, 0, 5, {2, 1}, ""},   {7, 0, 5, {2, 1}, ""},   {8, 0, 5, {2, 1}, ""},     {9, 0, 5, {2, 1}, ""},
    {10, 0, 13, {3, 2}, ""}, {11, 0, 13, {3, 2}, ""}, {12, 0, 5, {2, 1}, ""},    {13, 0, 37, {6, 1}, ""},
    {14, 0, 5, {2, 1}, ""},  {15, 0, 113, {7, 8}, ""}, {16, 0, 5, {2, 1}, ""},   {17, 0, 5, {2, 1}, ""},
    {18, 0, 5, {2, 1}, ""},  {19, 0, 13, {3, 2}, ""}, {20, 0, 37, {6, 1}, ""},
};

std::string gamma_text(const GaussianInt& g) { return g.to_string(); }

}  // namespace

const std::vector<ReferenceRow>& reference_table(Method m) {
  if (m == Method::A) return kTableA;
  if (m == Method::B) return kTableB;
  throw std::invalid_argument("reference tables exist for methods A and B only");
}

std::optional<ReferenceRow> reference_row(Method m, int n) {
  for (const auto& r : reference_table(m))
    if (r.n == n) return r;
  return std::nullopt;
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Match: return "match";
    case RowStatus::AnnotatedTypo: return "typo";
    case RowStatus::Mismatch: return "mismatch";
    case RowStatus::NoReference: return "no-reference";
  }
  return "?";
}

std::vector<TableRow> build_table(Method m, int from, int to) {
  if (m != Method::A && m != Method::B) throw std::invalid_argument("tables are defined for methods A and B");
  std::vector<TableRow> rows;
  for (int n = std::max(from, 2); n <= to; ++n) {
    const CodeSpec s = construct(m, n);
    TableRow row;
    row.n = n;
    row.prime_power = m == Method::A ? table_prime_power(s) : 0;
    row.q = s.q;
    row.gamma = {s.gamma[0], s.gamma[1]};
    row.reference = reference_row(m, n);
    if (row.reference) {
      const ReferenceRow& ref = *row.reference;
      std::vector<std::string> diffs;
      if (m == Method::A && ref.prime_power != row.prime_power)
        diffs.push_back("p^e " + std::to_string(row.prime_power) + " vs " + std::to_string(ref.prime_power));
      const bool gamma_ok = GaussianInt::associated_up_to_conjugation(row.gamma, ref.gamma);
      if (!gamma_ok) diffs.push_back("gamma " + gamma_text(row.gamma) + " vs " + gamma_text(ref.gamma));
      if (ref.q != row.q) {
        if (!ref.note.empty() && gamma_ok && ref.gamma.norm() == row.q)
          row.status = RowStatus::AnnotatedTypo;
        else
          diffs.push_back("q " + std::to_string(row.q) + " vs " + std::to_string(ref.q));
      }
      if (!diffs.empty()) {
        row.status = RowStatus::Mismatch;
        for (std::size_t i = 0; i < diffs.size(); ++i) row.detail += (i ? "; " : "") + diffs[i];
      } else if (row.status == RowStatus::AnnotatedTypo) {
        row.detail = ref.note;
      } else {
        row.status = RowStatus::Match;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string table_csv(Method m, const std::vector<TableRow>& rows) {
  std::ostringstream os;
  const bool a = m == Method::A;
  os << "n," << (a ? "p^e," : "") << "q,gamma," << (a ? "ref_p^e," : "") << "ref_q,ref_gamma,status,detail\n";
  for (const auto& r : rows) {
    os << r.n << ',';
    if (a) os << r.prime_power << ',';
    os << r.q << ',' << gamma_text(r.gamma) << ',';
    if (r.reference) {
      if (a) os << r.reference->prime_power << ',';
      os << r.reference->q << ',' << gamma_text(r.reference->gamma) << ',';
    } else {
      os << (a ? ",," : ",");
      os << ',';
    }
    os << to_string(r.status) << ",\"" << r.detail << "\"\n";
  }
  return os.str();
}

std::string table_text(Method m, const std::vector<TableRow>& rows) {
  std::ostringstream os;
  const bool a = m == Method::A;
  os << "Construction " << to_string(m) << " non-norm elements\n";
  os << std::left << std::setw(4) << "n";
  if (a) os << std::setw(6) << "p^e";
  os << std::setw(6) << "q" << std::setw(8) << "gamma" << std::setw(14) << "status"
     << "detail\n";
  for (const auto& r : rows) {
    os << std::setw(4) << r.n;
    if (a) os << std::setw(6) << r.prime_power;
    os << std::setw(6) << r.q << std::setw(8) << gamma_text(r.gamma) << std::setw(14) << to_string(r.status) << r.detail
       << '\n';
  }
  int match = 0, typo = 0, bad = 0;
  for (const auto& r : rows) {
    match += r.status == RowStatus::Match;
    typo += r.status == RowStatus::AnnotatedTypo;
    bad += r.status == RowStatus::Mismatch;
  }
  os << match << " match, " << typo << " annotated typo, " << bad << " mismatch\n";
  return os.str();
}

}  // namespace stbc
