#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hypsign/polynomial.hpp"
#include "hypsign/signcase.hpp"

namespace hypsign {

enum class Strategy { LogUniform, ClusterNearOne, Template, LocalRefine };

std::string to_string(Strategy s);
/// Accepts "log-uniform", "cluster-near-one", "certificate-template" (or
/// "template") and "local-refine". Throws std::invalid_argument.
Strategy parse_strategy(std::string_view name);

/// Seed used when neither a flag nor HYPSIGN_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20250601;

struct SearchConfig {
  std::uint64_t seed = kDefaultSeed;
  /// Samples per cell.
  std::uint64_t budget = 100000;
  /// Cycled by sample index.
  std::vector<Strategy> strategies = {Strategy::LogUniform, Strategy::ClusterNearOne, Strategy::Template,
                                      Strategy::LocalRefine};
  double min_modulus = 1e-6;
  double max_modulus = 1e6;
  /// Samples per chunk; each chunk draws from its own derived seed.
  std::uint32_t chunk_size = 1024;
  unsigned workers = 1;
  /// Significant digits of each sampled modulus.
  int digits = 8;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// 64-bit Mersenne twister with explicitly defined real and normal draws,
/// so streams agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of chunk `chunk` of the search for `cell_key` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view cell_key, std::uint64_t chunk);

/// Draws root configurations in a prescribed case. Moduli are generated in
/// log space, rounded to `digits` significant decimal digits (exact
/// rationals) and made to respect the case by assigning signs along the
/// sorted moduli: n_0 negatives, a positive, n_1 negatives, and so on.
class Sampler {
 public:
  Sampler(int degree, const SearchConfig& cfg);

  int degree() const noexcept { return degree_; }

  /// `near_miss` holds sorted log-moduli of a near-miss for LocalRefine;
  /// without one LocalRefine falls back to ClusterNearOne.
  RootConfiguration sample(const InterleavingCase& kase, Rng& rng, Strategy strategy,
                           const std::vector<double>* near_miss = nullptr) const;

  /// Sorted natural-log moduli drawn by a strategy, before rounding.
  std::vector<double> draw_log_moduli(Rng& rng, Strategy strategy, const std::vector<double>* near_miss) const;

  /// Rounds sorted log-moduli and assigns signs; nullopt on a modulus tie.
  std::optional<RootConfiguration> realize(const InterleavingCase& kase, const std::vector<double>& log_moduli) const;

 private:
  std::vector<double> clamp_sorted(std::vector<double> logs) const;

  int degree_;
  double log_min_;
  double log_max_;
  int digits_;
  std::vector<std::vector<double>> templates_;
};

/// One draw from a fresh sampler with the default configuration.
RootConfiguration sample_case(const InterleavingCase& kase, int d, int c, Rng& rng, Strategy strategy);

struct SearchResult {
  std::optional<RootConfiguration> witness;
  /// Samples drawn up to and including the witness, or the full budget.
  std::uint64_t samples_used = 0;
  std::optional<Strategy> strategy;
};

/// Exact check that rc is a generic hyperbolic witness for (sp, kase).
bool verify_witness(const RootConfiguration& rc, const SignPattern& sp, const InterleavingCase& kase);

/// Searches for a configuration with the given sign pattern and case.
/// Deterministic for a fixed configuration regardless of `workers`.
SearchResult search_realization(const SignPattern& sp, const InterleavingCase& kase, const SearchConfig& cfg);

enum class CellStatus { Witness, None, Excluded };
std::string to_string(CellStatus s);
CellStatus parse_cell_status(std::string_view s);

struct Cell {
  SignPattern sp;
  InterleavingCase kase;
  CellStatus status = CellStatus::None;
  std::optional<RootConfiguration> witness;
  std::uint64_t samples_used = 0;
};

struct ClassificationTable {
  int d = 0;
  int c = 0;
  bool theorem_filter = true;
  std::vector<Cell> cells;

  const Cell* find(const SignPattern& sp, const InterleavingCase& kase) const;
  int count(CellStatus s) const;
};

struct ClassifyOptions {
  bool theorem_filter = true;
  /// Solve only one cell of each mirror pair and map its witness by
  /// reciprocal roots.
  bool use_reversion = false;
  /// Restrict to these sign patterns (all block patterns when empty).
  std::vector<SignPattern> only;
};

ClassificationTable classify(int d, int c, const SearchConfig& cfg, const ClassifyOptions& opts = {});

}  // namespace hypsign
