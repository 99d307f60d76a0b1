#include "hypsign/reference.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hypsign {

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::Realizable: return "Y";
    case Expectation::NotRealizable: return "N";
    case Expectation::Unknown: return "?";
  }
  return "?";
}

Expectation ReferenceTable::at(const SignPattern& sp, const InterleavingCase& kase) const {
  auto it = cells.find({sp, kase});
  return it == cells.end() ? Expectation::Unknown : it->second;
}

int ReferenceTable::count(Expectation e) const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [e](const auto& kv) { return kv.second == e; }));
}

namespace {

using Cases = std::vector<std::vector<int>>;

void set_with_mirror(ReferenceTable& ref, const SignPattern& sp, const InterleavingCase& kase, Expectation e) {
  ref.cells[{sp, kase}] = e;
  ref.cells[{sp.reverted(), kase.reversed()}] = e;
}

// Realizable (Y) and non-realizable (N) cases of the SPs listed in the
// degree-6 summary; every other admissible case of (3,2,2) is realizable.
void fill_degree6(ReferenceTable& ref) {
  for (const auto& sp : block_patterns(6, 2)) {
    for (const auto& k : all_cases(4, 3)) ref.cells[{sp, k}] = Expectation::NotRealizable;
  }
  auto yes = [&](const SignPattern& sp, const Cases& cases) {
    for (const auto& g : cases) set_with_mirror(ref, sp, InterleavingCase{g}, Expectation::Realizable);
  };
  yes(sigma(1, 5, 1), {{0, 4, 0}});
  for (int m = 1; m <= 5; ++m) {
    int q = 6 - m;
    yes(sigma(m, 1, q), {{q - 1, 0, m - 1}});
  }
  yes(sigma(2, 4, 1), {{0, 2, 2}, {0, 3, 1}, {0, 4, 0}});
  yes(sigma(3, 3, 1), {{1, 0, 3}, {0, 0, 4}, {0, 1, 3}, {0, 2, 2}, {0, 3, 1}, {0, 4, 0}});
  yes(sigma(4, 2, 1), {{1, 0, 3}, {0, 0, 4}, {0, 1, 3}, {0, 2, 2}});
  Cases all;
  for (const auto& k : all_cases(4, 3)) all.push_back(k.gaps);
  yes(sigma(2, 3, 2), all);
  Cases other;
  const Cases no322 = {{4, 0, 0}, {3, 1, 0}, {2, 2, 0}, {1, 3, 0}};
  for (const auto& g : all) {
    if (std::find(no322.begin(), no322.end(), g) == no322.end()) other.push_back(g);
  }
  yes(sigma(3, 2, 2), other);
}

}  // namespace

ReferenceTable reference_table(int d, int c) {
  if (c != 1 && c != 2) throw std::invalid_argument("reference_table: c must be 1 or 2");
  ReferenceTable ref;
  ref.d = d;
  ref.c = c;
  if (d == 6 && c == 2) {
    fill_degree6(ref);
    return ref;
  }
  for (const auto& sp : block_patterns(d, c)) {
    auto admissible = admissible_cases(sp);
    for (const auto& k : all_cases(d - c, c + 1)) {
      if (!admissible.count(k)) ref.cells[{sp, k}] = Expectation::NotRealizable;
    }
    ref.cells[{sp, canonical_case(sp)}] = Expectation::Realizable;
  }
  if (c == 2 && d >= 4) {
    // Σ_{d-2,2,1} is realizable in the case (1,0,d-3).
    set_with_mirror(ref, sigma(d - 2, 2, 1), InterleavingCase{{1, 0, d - 3}}, Expectation::Realizable);
  }
  if (d == 5 && c == 2) {
    for (const auto& k : all_cases(3, 3)) ref.cells[{sigma(2, 2, 2), k}] = Expectation::Realizable;
    set_with_mirror(ref, sigma(3, 2, 1), InterleavingCase{{0, 3, 0}}, Expectation::NotRealizable);
  }
  if (d == 5 && c == 1) {
    for (auto g : Cases{{3, 1}, {2, 2}}) set_with_mirror(ref, sigma2(2, 4), InterleavingCase{g}, Expectation::Realizable);
    for (auto g : Cases{{1, 3}, {0, 4}}) {
      set_with_mirror(ref, sigma2(2, 4), InterleavingCase{g}, Expectation::NotRealizable);
    }
  }
  if (d == 7 && c == 2) {
    set_with_mirror(ref, sigma(3, 2, 3), InterleavingCase{{0, 5, 0}}, Expectation::Realizable);
  }
  return ref;
}

ReferenceTable as_reference(const ClassificationTable& table) {
  ReferenceTable ref;
  ref.d = table.d;
  ref.c = table.c;
  for (const auto& cell : table.cells) {
    ref.cells[{cell.sp, cell.kase}] =
        cell.status == CellStatus::Witness ? Expectation::Realizable : Expectation::NotRealizable;
  }
  return ref;
}

TableDiff compare_table(const ClassificationTable& got, const ReferenceTable& ref) {
  if (got.d != ref.d || got.c != ref.c) throw std::invalid_argument("compare_table: (d, c) differ");
  TableDiff diff;
  for (const auto& cell : got.cells) {
    Expectation e = ref.at(cell.sp, cell.kase);
    if (e == Expectation::Unknown) {
      ++diff.skipped_unknown;
      continue;
    }
    ++diff.compared;
    bool found = cell.status == CellStatus::Witness;
    if (found != (e == Expectation::Realizable)) diff.mismatches.push_back({cell.sp, cell.kase, e, cell.status});
  }
  std::set<SignPattern> present;
  for (const auto& cell : got.cells) present.insert(cell.sp);
  for (const auto& [key, e] : ref.cells) {
    if (present.count(key.first) && !got.find(key.first, key.second)) ++diff.missing;
  }
  return diff;
}

}  // namespace hypsign
