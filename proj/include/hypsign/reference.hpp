#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypsign/search.hpp"

namespace hypsign {

enum class Expectation { Realizable, NotRealizable, Unknown };

std::string to_string(Expectation e);

/// Known realizability of (sign pattern, case) cells.
struct ReferenceTable {
  int d = 0;
  int c = 0;
  std::map<std::pair<SignPattern, InterleavingCase>, Expectation> cells;

  Expectation at(const SignPattern& sp, const InterleavingCase& kase) const;
  int count(Expectation e) const;
};

/// For (6, 2): the complete published classification closed under
/// reversion (69 realizable cells). For other (d, c): canonical cases are
/// realizable, cases excluded by the general restrictions are not, and the
/// few known low-degree facts are filled in; everything else is Unknown.
ReferenceTable reference_table(int d, int c);

/// Witness cells become Realizable, all others NotRealizable.
ReferenceTable as_reference(const ClassificationTable& table);

struct CellDiff {
  SignPattern sp;
  InterleavingCase kase;
  Expectation expected = Expectation::Unknown;
  CellStatus got = CellStatus::None;
};

struct TableDiff {
  std::vector<CellDiff> mismatches;
  int compared = 0;
  int skipped_unknown = 0;
  /// Reference cells of sign patterns present in the table but missing
  /// from it.
  int missing = 0;

  bool empty() const { return mismatches.empty() && missing == 0; }
};

/// Cells whose status disagrees with the reference; Unknown cells are
/// skipped and counted.
TableDiff compare_table(const ClassificationTable& got, const ReferenceTable& ref);

}  // namespace hypsign
