#include "hypsign/signcase.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hypsign/errors.hpp"

namespace hypsign {

SignPattern::SignPattern(std::vector<bool> plus) : plus_(std::move(plus)) {
  if (plus_.empty()) throw std::invalid_argument("empty sign pattern");
  if (!plus_.front()) throw std::invalid_argument("sign pattern must begin with +");
}

SignPattern SignPattern::parse(std::string_view text) {
  std::vector<bool> v;
  for (char ch : text) {
    if (ch == '+') {
      v.push_back(true);
    } else if (ch == '-') {
      v.push_back(false);
    } else if (ch == ' ' || ch == ',' || ch == '(' || ch == ')') {
      continue;
    } else {
      throw std::invalid_argument("bad sign pattern character in '" + std::string(text) + "'");
    }
  }
  return SignPattern(std::move(v));
}

int SignPattern::changes() const {
  int c = 0;
  for (std::size_t i = 1; i < plus_.size(); ++i) c += plus_[i] != plus_[i - 1];
  return c;
}

SignPattern SignPattern::reverted() const {
  std::vector<bool> v(plus_.rbegin(), plus_.rend());
  if (!v.front()) v.flip();
  return SignPattern(std::move(v));
}

std::vector<int> SignPattern::blocks() const {
  std::vector<int> b;
  for (std::size_t i = 0; i < plus_.size(); ++i) {
    if (i == 0 || plus_[i] != plus_[i - 1]) {
      b.push_back(1);
    } else {
      ++b.back();
    }
  }
  return b;
}

std::string SignPattern::to_string() const {
  std::string s;
  for (bool p : plus_) s.push_back(p ? '+' : '-');
  return s;
}

int InterleavingCase::negatives() const {
  int n = 0;
  for (int g : gaps) n += g;
  return n;
}

InterleavingCase InterleavingCase::reversed() const { return {std::vector<int>(gaps.rbegin(), gaps.rend())}; }

std::string InterleavingCase::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < gaps.size(); ++i) os << (i ? "," : "") << gaps[i];
  os << ")";
  return os.str();
}

InterleavingCase InterleavingCase::parse(std::string_view text) {
  InterleavingCase k;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t used = 0;
    int v = std::stoi(cur, &used);
    if (used != cur.size() || v < 0) throw std::invalid_argument("bad case entry '" + cur + "'");
    k.gaps.push_back(v);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '(' || ch == ')' || ch == ' ') {
      continue;
    } else if (ch == ',') {
      if (cur.empty()) throw std::invalid_argument("bad case '" + std::string(text) + "'");
      flush();
    } else {
      cur.push_back(ch);
    }
  }
  flush();
  if (k.gaps.size() < 2) throw std::invalid_argument("case needs at least two entries: '" + std::string(text) + "'");
  return k;
}

SignPattern sign_pattern(const Polynomial& p) {
  if (p.degree() < 0) throw std::invalid_argument("sign pattern of the zero polynomial");
  if (p.leading() < 0) throw std::invalid_argument("sign pattern requires a positive leading coefficient");
  std::vector<bool> v;
  v.reserve(static_cast<std::size_t>(p.degree()) + 1);
  for (int j = p.degree(); j >= 0; --j) {
    int s = sgn(p[j]);
    if (s == 0) throw ZeroCoefficient(j);
    v.push_back(s > 0);
  }
  return SignPattern(std::move(v));
}

std::vector<int> zero_augmented_signs(const Polynomial& p, int degree) {
  std::vector<int> v;
  for (int j = degree; j >= 0; --j) v.push_back(sgn(p[j]));
  return v;
}

std::string format_zero_augmented(const std::vector<int>& signs) {
  std::string s = "(";
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) s += ",";
    s += signs[i] > 0 ? "+" : (signs[i] < 0 ? "-" : "0");
  }
  return s + ")";
}

SignPattern sigma(int m, int n, int q) {
  if (m < 1 || n < 1 || q < 0) throw std::invalid_argument("sigma: need m >= 1, n >= 1, q >= 0");
  std::vector<bool> v;
  v.insert(v.end(), static_cast<std::size_t>(m), true);
  v.insert(v.end(), static_cast<std::size_t>(n), false);
  v.insert(v.end(), static_cast<std::size_t>(q), true);
  return SignPattern(std::move(v));
}

SignPattern sigma2(int m, int n) { return sigma(m, n, 0); }

std::optional<std::vector<int>> block_form(const SignPattern& sp) {
  auto b = sp.blocks();
  if (b.size() == 2 || b.size() == 3) return b;
  return std::nullopt;
}

InterleavingCase case_of(const RootConfiguration& rc) {
  int pos = rc.positive_count();
  int neg = rc.negative_count();
  if (pos == 0 || neg == 0) throw std::invalid_argument("case_of needs positive and negative roots");
  auto rank = rc.moduli_ranking();
  auto roots = rc.roots();
  InterleavingCase k;
  k.gaps.assign(static_cast<std::size_t>(pos) + 1, 0);
  std::size_t slot = 0;
  for (std::size_t i = 0; i < rank.size(); ++i) {
    const Rational& r = roots[static_cast<std::size_t>(rank[i])];
    if (i > 0 && abs(r) == abs(roots[static_cast<std::size_t>(rank[i - 1])])) {
      throw ModulusTie("two roots share the modulus " + to_display(abs(r)));
    }
    if (r > 0) {
      ++slot;
    } else {
      ++k.gaps[slot];
    }
  }
  return k;
}

InterleavingCase canonical_case(const SignPattern& sp) {
  InterleavingCase k;
  k.gaps.push_back(0);
  // Adjacent pairs read from the constant term upward.
  for (int i = sp.degree(); i >= 1; --i) {
    if (sp.is_plus(i) != sp.is_plus(i - 1)) {
      k.gaps.push_back(0);
    } else {
      ++k.gaps.back();
    }
  }
  return k;
}

std::vector<InterleavingCase> all_cases(int total, int parts) {
  std::vector<InterleavingCase> out;
  if (parts < 1 || total < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == parts - 1) {
      cur[static_cast<std::size_t>(idx)] = left;
      out.push_back({cur});
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

std::vector<SignPattern> block_patterns(int d, int c) {
  std::vector<SignPattern> out;
  if (c == 1) {
    for (int m = 1; m <= d; ++m) out.push_back(sigma2(m, d + 1 - m));
  } else if (c == 2) {
    for (int m = 1; m <= d - 1; ++m)
      for (int n = 1; m + n <= d; ++n) out.push_back(sigma(m, n, d + 1 - m - n));
  } else {
    throw std::invalid_argument("block patterns are enumerated for c = 1 or c = 2 only");
  }
  return out;
}

namespace {

// Restriction for a pattern Σ_{m,n,q} read in its given orientation; empty
// optional when no restriction applies.
std::optional<std::set<InterleavingCase>> restriction_c2(int m, int n, int q) {
  int d = m + n + q - 1;
  std::set<InterleavingCase> allowed;
  if ((m == 1 && n == d - 1 && q == 1) || n == 1) {
    allowed.insert(canonical_case(sigma(m, n, q)));
    return allowed;
  }
  if (q != 1) return std::nullopt;
  bool two_three = (m == d - 2 && n == 2) || (m == d - 3 && n == 3);
  if (!two_three && n < 4) return std::nullopt;
  for (int b = 0; b <= d - 2; ++b) allowed.insert({{0, b, d - 2 - b}});
  if (two_three && d >= 3) allowed.insert({{1, 0, d - 3}});
  return allowed;
}

}  // namespace

std::set<InterleavingCase> admissible_cases(const SignPattern& sp) {
  auto blocks = block_form(sp);
  if (!blocks) throw std::invalid_argument("admissibility is defined for block patterns only");
  int d = sp.degree();
  std::set<InterleavingCase> out;
  if (blocks->size() == 2) {
    int m = (*blocks)[0];
    int n = (*blocks)[1];
    if (m == 1 || n == 1) {
      out.insert(canonical_case(sp));
      return out;
    }
    for (auto& k : all_cases(d - 1, 2)) out.insert(k);
    return out;
  }
  int m = (*blocks)[0];
  int n = (*blocks)[1];
  int q = (*blocks)[2];
  if (auto r = restriction_c2(m, n, q)) return *r;
  if (auto r = restriction_c2(q, n, m)) {
    for (const auto& k : *r) out.insert(k.reversed());
    return out;
  }
  for (auto& k : all_cases(d - 2, 3)) out.insert(k);
  return out;
}

}  // namespace hypsign
