#include "hypsign/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "hypsign/certificates.hpp"
#include "hypsign/errors.hpp"
#include "hypsign/realroots.hpp"

namespace hypsign {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::LogUniform: return "log-uniform";
    case Strategy::ClusterNearOne: return "cluster-near-one";
    case Strategy::Template: return "certificate-template";
    case Strategy::LocalRefine: return "local-refine";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "log-uniform") return Strategy::LogUniform;
  if (name == "cluster-near-one") return Strategy::ClusterNearOne;
  if (name == "certificate-template" || name == "template") return Strategy::Template;
  if (name == "local-refine") return Strategy::LocalRefine;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

void SearchConfig::validate() const {
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (!(min_modulus > 0) || !(max_modulus > min_modulus)) throw std::invalid_argument("bad modulus range");
  if (strategies.empty()) throw std::invalid_argument("at least one strategy is required");
  if (chunk_size < 1) throw std::invalid_argument("chunk size must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (digits < 2 || digits > 18) throw std::invalid_argument("digits must lie in [2, 18]");
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view cell_key, std::uint64_t chunk) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : cell_key) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed ^ splitmix64(h)) + chunk);
}

namespace {

std::vector<std::vector<double>> certificate_templates() {
  std::vector<std::vector<double>> out;
  for (const auto& cert : builtin_certificates()) {
    auto rep = verify_certificate(cert);
    if (!rep.generic_roots) continue;
    std::vector<double> logs;
    for (const auto& r : rep.generic_roots->roots()) logs.push_back(std::log(std::fabs(r.get_d())));
    std::sort(logs.begin(), logs.end());
    std::vector<double> recip;
    for (auto it = logs.rbegin(); it != logs.rend(); ++it) recip.push_back(-*it);
    out.push_back(std::move(logs));
    out.push_back(std::move(recip));
  }
  return out;
}

int sign_mismatches(const Polynomial& p, const SignPattern& sp) {
  int d = sp.degree();
  int bad = 0;
  for (int j = 0; j <= d; ++j) {
    int s = sgn(p[j]);
    bool want_plus = sp.is_plus(d - j);
    if (s == 0 || (s > 0) != want_plus) ++bad;
  }
  return bad;
}

void check_cell(const SignPattern& sp, const InterleavingCase& kase) {
  int c = sp.changes();
  if (kase.changes() != c) throw std::invalid_argument("case has the wrong number of parts for the sign pattern");
  if (kase.negatives() != sp.degree() - c) throw std::invalid_argument("case does not sum to d - c");
  for (int g : kase.gaps) {
    if (g < 0) throw std::invalid_argument("case entries must be nonnegative");
  }
}

}  // namespace

Sampler::Sampler(int degree, const SearchConfig& cfg)
    : degree_(degree),
      log_min_(std::log(cfg.min_modulus)),
      log_max_(std::log(cfg.max_modulus)),
      digits_(cfg.digits),
      templates_(certificate_templates()) {
  if (degree < 1) throw std::invalid_argument("Sampler: degree must be positive");
}

std::vector<double> Sampler::clamp_sorted(std::vector<double> logs) const {
  std::sort(logs.begin(), logs.end());
  double lo = logs.front();
  double hi = logs.back();
  double room = log_max_ - log_min_;
  if (hi - lo > room) {
    double f = room / (hi - lo) * 0.999;
    for (auto& l : logs) l = log_min_ + (l - lo) * f;
  } else if (lo < log_min_) {
    for (auto& l : logs) l += log_min_ - lo;
  } else if (hi > log_max_) {
    for (auto& l : logs) l -= hi - log_max_;
  }
  return logs;
}

std::vector<double> Sampler::draw_log_moduli(Rng& rng, Strategy strategy, const std::vector<double>* near_miss) const {
  const int d = degree_;
  std::vector<double> logs;
  if (strategy == Strategy::LocalRefine && (near_miss == nullptr || static_cast<int>(near_miss->size()) != d)) {
    strategy = Strategy::ClusterNearOne;
  }
  if (strategy == Strategy::Template && templates_.empty()) strategy = Strategy::ClusterNearOne;
  switch (strategy) {
    case Strategy::LogUniform:
      for (int i = 0; i < d; ++i) logs.push_back(rng.uniform(log_min_, log_max_));
      break;
    case Strategy::ClusterNearOne: {
      double pos = 0;
      logs.push_back(0);
      for (int i = 1; i < d; ++i) {
        pos += std::pow(10.0, rng.uniform(-4.0, 1.0));
        logs.push_back(pos);
      }
      double anchor = logs[rng.below(static_cast<std::uint64_t>(d))] + rng.uniform(-0.5, 0.5);
      for (auto& l : logs) l -= anchor;
      break;
    }
    case Strategy::Template: {
      logs = templates_[rng.below(templates_.size())];
      while (static_cast<int>(logs.size()) > d) {
        if (rng.below(2) == 0) {
          logs.erase(logs.begin());
        } else {
          logs.pop_back();
        }
      }
      while (static_cast<int>(logs.size()) < d) {
        if (rng.below(2) == 0) {
          logs.insert(logs.begin(), logs.front() - rng.uniform(0.5, 5.0));
        } else {
          logs.push_back(logs.back() + rng.uniform(0.5, 5.0));
        }
      }
      double sigma = std::pow(10.0, rng.uniform(-5.0, -1.0));
      for (auto& l : logs) l += sigma * rng.normal();
      break;
    }
    case Strategy::LocalRefine: {
      logs = *near_miss;
      double sigma = std::pow(10.0, rng.uniform(-4.0, -0.5));
      for (auto& l : logs) l += sigma * rng.normal();
      break;
    }
  }
  return clamp_sorted(std::move(logs));
}

std::optional<RootConfiguration> Sampler::realize(const InterleavingCase& kase,
                                                  const std::vector<double>& log_moduli) const {
  std::vector<Rational> moduli;
  moduli.reserve(log_moduli.size());
  for (double l : log_moduli) moduli.push_back(round_to_digits(std::exp(l), digits_));
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    if (!(moduli[i - 1] < moduli[i])) return std::nullopt;
  }
  std::vector<Rational> roots;
  roots.reserve(moduli.size());
  std::size_t idx = 0;
  for (std::size_t k = 0; k < kase.gaps.size(); ++k) {
    for (int j = 0; j < kase.gaps[k]; ++j) roots.push_back(-moduli.at(idx++));
    if (k + 1 < kase.gaps.size()) roots.push_back(moduli.at(idx++));
  }
  if (idx != moduli.size()) throw std::invalid_argument("case does not match the sampler degree");
  return RootConfiguration(std::move(roots));
}

RootConfiguration Sampler::sample(const InterleavingCase& kase, Rng& rng, Strategy strategy,
                                  const std::vector<double>* near_miss) const {
  for (;;) {
    auto rc = realize(kase, draw_log_moduli(rng, strategy, near_miss));
    if (rc) return *rc;
  }
}

RootConfiguration sample_case(const InterleavingCase& kase, int d, int c, Rng& rng, Strategy strategy) {
  if (kase.changes() != c || kase.negatives() != d - c) throw std::invalid_argument("sample_case: bad case");
  Sampler sampler(d, SearchConfig{});
  return sampler.sample(kase, rng, strategy);
}

bool verify_witness(const RootConfiguration& rc, const SignPattern& sp, const InterleavingCase& kase) {
  if (rc.degree() != sp.degree() || !rc.has_distinct_moduli()) return false;
  if (rc.positive_count() == 0 || rc.negative_count() == 0) return false;
  Polynomial p = rc.expand();
  try {
    if (sign_pattern(p) != sp) return false;
  } catch (const ZeroCoefficient&) {
    return false;
  }
  if (case_of(rc) != kase) return false;
  return is_hyperbolic(p);
}

namespace {

struct ChunkOutcome {
  std::optional<RootConfiguration> witness;
  std::uint64_t index = 0;
  Strategy strategy = Strategy::LogUniform;
};

ChunkOutcome run_chunk(const SignPattern& sp, const InterleavingCase& kase, const SearchConfig& cfg,
                       const Sampler& sampler, const std::string& key, std::uint64_t chunk) {
  ChunkOutcome out;
  Rng rng(derive_seed(cfg.seed, key, chunk));
  std::uint64_t first = chunk * cfg.chunk_size;
  std::uint64_t n = std::min<std::uint64_t>(cfg.chunk_size, cfg.budget - first);
  std::vector<double> near_miss;
  int near_dist = 3;
  const std::size_t k = cfg.strategies.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    Strategy strategy = cfg.strategies[(first + i) % k];
    const std::vector<double>* nm = near_miss.empty() ? nullptr : &near_miss;
    std::vector<double> logs;
    std::optional<RootConfiguration> rc;
    for (int attempt = 0; attempt < 16 && !rc; ++attempt) {
      logs = sampler.draw_log_moduli(rng, strategy, nm);
      rc = sampler.realize(kase, logs);
    }
    if (!rc) continue;
    int dist = sign_mismatches(rc->expand(), sp);
    if (dist == 0 && verify_witness(*rc, sp, kase)) {
      out.witness = std::move(rc);
      out.index = i;
      out.strategy = strategy;
      return out;
    }
    if (dist < near_dist) {
      near_dist = dist;
      near_miss = std::move(logs);
    }
  }
  return out;
}

}  // namespace

SearchResult search_realization(const SignPattern& sp, const InterleavingCase& kase, const SearchConfig& cfg) {
  cfg.validate();
  check_cell(sp, kase);
  Sampler sampler(sp.degree(), cfg);
  const std::string key = sp.to_string() + "|" + kase.to_string();
  const std::uint64_t chunks = (cfg.budget + cfg.chunk_size - 1) / cfg.chunk_size;
  for (std::uint64_t wave = 0; wave < chunks; wave += cfg.workers) {
    std::uint64_t wave_end = std::min<std::uint64_t>(chunks, wave + cfg.workers);
    std::vector<ChunkOutcome> outcomes(static_cast<std::size_t>(wave_end - wave));
    if (outcomes.size() == 1) {
      outcomes[0] = run_chunk(sp, kase, cfg, sampler, key, wave);
    } else {
      std::vector<std::thread> threads;
      for (std::uint64_t ch = wave; ch < wave_end; ++ch) {
        threads.emplace_back([&, ch] { outcomes[ch - wave] = run_chunk(sp, kase, cfg, sampler, key, ch); });
      }
      for (auto& t : threads) t.join();
    }
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i].witness) {
        SearchResult res;
        res.witness = std::move(outcomes[i].witness);
        res.samples_used = (wave + i) * cfg.chunk_size + outcomes[i].index + 1;
        res.strategy = outcomes[i].strategy;
        return res;
      }
    }
  }
  SearchResult res;
  res.samples_used = cfg.budget;
  return res;
}

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Witness: return "witness";
    case CellStatus::None: return "none";
    case CellStatus::Excluded: return "excluded";
  }
  return "?";
}

CellStatus parse_cell_status(std::string_view s) {
  if (s == "witness") return CellStatus::Witness;
  if (s == "none") return CellStatus::None;
  if (s == "excluded") return CellStatus::Excluded;
  throw std::invalid_argument("unknown cell status '" + std::string(s) + "'");
}

const Cell* ClassificationTable::find(const SignPattern& sp, const InterleavingCase& kase) const {
  for (const auto& cell : cells) {
    if (cell.sp == sp && cell.kase == kase) return &cell;
  }
  return nullptr;
}

int ClassificationTable::count(CellStatus s) const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [s](const Cell& c) { return c.status == s; }));
}

ClassificationTable classify(int d, int c, const SearchConfig& cfg, const ClassifyOptions& opts) {
  if (c != 1 && c != 2) throw std::invalid_argument("classify: c must be 1 or 2");
  cfg.validate();
  ClassificationTable table;
  table.d = d;
  table.c = c;
  table.theorem_filter = opts.theorem_filter;
  std::vector<SignPattern> patterns = opts.only.empty() ? block_patterns(d, c) : opts.only;
  for (const auto& sp : patterns) {
    if (sp.degree() != d || sp.changes() != c) throw std::invalid_argument("classify: pattern does not match (d, c)");
    auto admissible = admissible_cases(sp);
    for (const auto& kase : all_cases(d - c, c + 1)) {
      Cell cell;
      cell.sp = sp;
      cell.kase = kase;
      cell.status = (opts.theorem_filter && !admissible.count(kase)) ? CellStatus::Excluded : CellStatus::None;
      table.cells.push_back(std::move(cell));
    }
  }

  // Cells to search directly; with the reversion shortcut, a cell whose
  // mirror is also in the table and sorts earlier is mapped afterwards.
  std::vector<std::size_t> todo;
  std::vector<std::pair<std::size_t, std::size_t>> mirrored;
  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    const Cell& cell = table.cells[i];
    if (cell.status == CellStatus::Excluded) continue;
    if (opts.use_reversion) {
      SignPattern msp = cell.sp.reverted();
      InterleavingCase mk = cell.kase.reversed();
      auto it = std::find_if(table.cells.begin(), table.cells.end(),
                             [&](const Cell& o) { return o.sp == msp && o.kase == mk; });
      if (it != table.cells.end() && std::tie(msp, mk) < std::tie(cell.sp, cell.kase)) {
        mirrored.emplace_back(i, static_cast<std::size_t>(it - table.cells.begin()));
        continue;
      }
    }
    todo.push_back(i);
  }

  SearchConfig inner = cfg;
  inner.workers = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < todo.size(); k = next++) {
      Cell& cell = table.cells[todo[k]];
      auto res = search_realization(cell.sp, cell.kase, inner);
      cell.samples_used = res.samples_used;
      if (res.witness) {
        cell.status = CellStatus::Witness;
        cell.witness = std::move(res.witness);
      }
    }
  };
  unsigned n_threads = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(todo.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  for (auto [i, j] : mirrored) {
    const Cell& src = table.cells[j];
    Cell& dst = table.cells[i];
    dst.status = src.status;
    dst.samples_used = src.samples_used;
    if (src.witness) dst.witness = src.witness->reciprocal();
  }
  return table;
}

}  // namespace hypsign
