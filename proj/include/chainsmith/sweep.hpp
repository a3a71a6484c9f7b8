#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chainsmith/annealer.hpp"
#include "chainsmith/decode.hpp"
#include "chainsmith/io.hpp"
#include "chainsmith/metrics.hpp"
#include "chainsmith/paramset.hpp"
#include "chainsmith/sat.hpp"

#include <json.hpp>

namespace chainsmith {

// Corpus generation: random mixed-SAT instances downselected to a usable
// solution count (positive and below the cap, exactly counted).
struct GenPlan {
  std::vector<int> ns = {8, 10};
  std::vector<int> alphas = {10, 20};
  int per_cell = 6;
  int max_len = 3;
  std::uint64_t cap = 1000000;
  std::uint64_t master_seed = 0;
  std::filesystem::path out_dir;
  int max_attempts_factor = 50;  // candidate draws per accepted instance
};

std::vector<ManifestEntry> generate_corpus(const GenPlan& plan);

struct SweepPlan {
  std::filesystem::path corpus_manifest;
  std::filesystem::path hardware_path;
  std::vector<StrategyKind> strategies{kAllStrategies,
                                       kAllStrategies + 4};
  std::vector<double> c_values = {1.6, 1.8, 2.0, 2.2, 2.4};
  double h_min = 1.0 / 16;
  int srt_count = 1;
  SrtMode srt_mode = SrtMode::AllTerms;
  bool srt_chain_constant = false;
  StrategyKind srt_reference_strategy = StrategyKind::Even;
  std::optional<std::uint64_t> srt_seed;  // defaults to the master seed
  BackendConfig backend;
  std::uint64_t master_seed = 0;
  std::filesystem::path out_dir;
  ConcertPolicy policy = ConcertPolicy::Any;
  int embed_max_tries = 20;
  double baseline_c = 1.6;
};

// One results.csv row: everything needed to rebuild the report, plus the
// cell seed so the row can be replayed in isolation.
struct CellRow {
  std::string instance_id;
  std::string strategy;
  double c = 0.0;
  int srt_index = 0;
  std::uint64_t seed = 0;
  int reads = 0;
  double success_probability = 0.0;
  int unique_answers = 0;
  std::uint64_t solution_count = 0;
  double mpd = 0.0;
  std::vector<std::string> answers;  // sorted satisfying assignments observed
};

// Everything derived once per instance before the grid runs.
struct InstanceContext {
  ManifestEntry manifest;
  CnfFormula formula;
  IsingReduction reduction;
  Embedding embedding;
  WeightTable weights;
  std::vector<SpinVector> srt_vectors;
};

std::uint64_t cell_seed(std::uint64_t master, std::size_t instance_index,
                        std::size_t strategy_index, std::size_t c_index,
                        std::size_t srt_index);

CellRow run_cell(const InstanceContext& ctx, const HardwareGraph& g,
                 StrategyKind strategy, double c, int srt_index,
                 const SweepPlan& plan, std::uint64_t seed);

struct SweepOutcome {
  int instances_embedded = 0;
  int instances_skipped = 0;
  int cells_written = 0;
  std::vector<std::string> log;
  bool ok() const { return instances_embedded > 0; }
};

// Generates embeddings, runs the strategy × c × SRT grid with the configured
// backend, and writes results.csv, answers.csv, report.json, sweep_log.txt
// and per-instance embeddings under out_dir. Byte-deterministic for a fixed
// master seed regardless of worker count.
SweepOutcome run_sweep(const SweepPlan& plan);

// CSV round-trip used by the report command and the regression tests.
std::string results_to_csv(const std::vector<CellRow>& rows);
std::string answers_to_csv(const std::vector<CellRow>& rows);
std::vector<CellRow> load_results_csv(const std::filesystem::path& path);
void attach_answers_csv(std::vector<CellRow>& rows,
                        const std::filesystem::path& path);

struct ReportOptions {
  double baseline_c = 1.6;
  StrategyKind srt_reference_strategy = StrategyKind::Even;
};

// Pure aggregation over the CSV rows; run_sweep re-reads its own CSV output
// through this so report.json never contains state the CSVs lack.
nlohmann::json build_report(const std::vector<CellRow>& rows,
                            const ReportOptions& opts);

}  // namespace chainsmith
