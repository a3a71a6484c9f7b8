#include "chainsmith/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chainsmith/chimera.hpp"
#include "chainsmith/rng.hpp"

namespace chainsmith {

using nlohmann::json;

std::vector<ManifestEntry> generate_corpus(const GenPlan& plan) {
  if (plan.per_cell < 1)
    throw std::invalid_argument("generate_corpus: per_cell must be >= 1");
  std::vector<ManifestEntry> entries;
  std::uint64_t candidate = 0;
  for (int n : plan.ns)
    for (int alpha : plan.alphas) {
      int accepted = 0;
      int attempts = 0;
      int budget = plan.max_attempts_factor * plan.per_cell;
      while (accepted < plan.per_cell && attempts < budget) {
        ++attempts;
        std::uint64_t seed = derive_seed(plan.master_seed, "gen", candidate++);
        CnfFormula f = generate_mixed_sat(n, alpha, plan.max_len, seed);
        SolutionCount sc = count_solutions(f, plan.cap);
        // downselection: solvable, and solution count exactly known and
        // under the cap
        if (sc.capped || sc.count == 0 || sc.count >= plan.cap) continue;
        ManifestEntry m;
        char tag[64];
        std::snprintf(tag, sizeof(tag), "mixed_n%d_a%d_%03d", n, alpha, accepted);
        m.instance_id = tag;
        m.n = n;
        m.alpha = alpha;
        m.seed = seed;
        m.solution_count = sc.count;
        m.capped = false;
        m.cnf_path = "instances/" + m.instance_id + ".cnf";
        write_text_file(plan.out_dir / m.cnf_path, emit_dimacs(f));
        entries.push_back(std::move(m));
        ++accepted;
      }
    }
  save_manifest(entries, plan.out_dir / "manifest.json");
  return entries;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t instance_index,
                        std::size_t strategy_index, std::size_t c_index,
                        std::size_t srt_index) {
  std::uint64_t s = derive_seed(master, "cell", instance_index);
  s = derive_seed(s, "strategy", strategy_index);
  s = derive_seed(s, "c", c_index);
  s = derive_seed(s, "srt", srt_index);
  return s;
}

CellRow run_cell(const InstanceContext& ctx, const HardwareGraph& g,
                 StrategyKind strategy, double c, int srt_index,
                 const SweepPlan& plan, std::uint64_t seed) {
  ParamConfig cfg;
  cfg.strategy = strategy;
  cfg.chain_coupling = c;
  cfg.h_min = plan.h_min;
  PhysicalProblem p =
      parameterize(ctx.reduction.problem, g, ctx.embedding, cfg);
  const SpinVector& reversal =
      ctx.srt_vectors[static_cast<std::size_t>(srt_index)];
  p = apply_srt(p, reversal, plan.srt_mode);

  CellRow row;
  row.instance_id = ctx.manifest.instance_id;
  row.strategy = to_string(strategy);
  row.c = c;
  row.srt_index = srt_index;
  row.seed = seed;
  row.solution_count = ctx.manifest.solution_count;
  row.mpd = mpd(p);

  BackendConfig backend = plan.backend;
  backend.seed = derive_seed(seed, "sample");
  SampleSet samples = sample(p, backend);

  // readouts of the transformed problem are un-gauged back to the original
  // spin frame before decoding
  std::vector<std::array<DecodedSample, 3>> decoded;
  decoded.reserve(samples.reads.size());
  for (std::size_t r = 0; r < samples.reads.size(); ++r) {
    Rng rng(derive_seed(seed, "decode", r));
    SpinVector ungauged = samples.reads[r].state;
    for (std::size_t q = 0; q < ungauged.size(); ++q)
      ungauged[q] = static_cast<std::int8_t>(ungauged[q] * reversal[q]);
    decoded.push_back(
        decode_concert(ungauged, ctx.embedding, ctx.weights, rng));
  }

  int orig = ctx.reduction.map.original_vars;
  row.success_probability =
      success_probability(samples, decoded, ctx.formula, orig, plan.policy);
  std::set<std::string> answers;
  for (const auto& cand : decoded) {
    std::string a = observed_answer(cand, ctx.formula, orig, plan.policy);
    if (!a.empty()) answers.insert(std::move(a));
  }
  row.answers.assign(answers.begin(), answers.end());
  row.unique_answers = static_cast<int>(row.answers.size());
  int total_reads = 0;
  for (const auto& r : samples.reads) total_reads += r.multiplicity;
  row.reads = total_reads;
  return row;
}

namespace {

std::string mpd_to_string(double v) {
  return std::isinf(v) ? "inf" : format_double(v);
}

double mpd_from_string(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

constexpr const char* kResultsHeader =
    "instance_id,strategy,c,srt_index,seed,reads,success_probability,"
    "unique_answers,solution_count,mpd";
constexpr const char* kAnswersHeader = "instance_id,strategy,c,srt_index,assignment";

}  // namespace

std::string results_to_csv(const std::vector<CellRow>& rows) {
  std::ostringstream out;
  out << kResultsHeader << '\n';
  for (const auto& r : rows)
    out << r.instance_id << ',' << r.strategy << ',' << format_double(r.c)
        << ',' << r.srt_index << ',' << r.seed << ',' << r.reads << ','
        << format_double(r.success_probability) << ',' << r.unique_answers
        << ',' << r.solution_count << ',' << mpd_to_string(r.mpd) << '\n';
  return out.str();
}

std::string answers_to_csv(const std::vector<CellRow>& rows) {
  std::ostringstream out;
  out << kAnswersHeader << '\n';
  for (const auto& r : rows)
    for (const auto& a : r.answers)
      out << r.instance_id << ',' << r.strategy << ',' << format_double(r.c)
          << ',' << r.srt_index << ',' << a << '\n';
  return out.str();
}

std::vector<CellRow> load_results_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader)
    throw std::invalid_argument("results csv: bad header");
  std::vector<CellRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 10)
      throw std::invalid_argument("results csv: bad row: " + line);
    CellRow r;
    r.instance_id = f[0];
    r.strategy = f[1];
    r.c = std::stod(f[2]);
    r.srt_index = std::stoi(f[3]);
    r.seed = std::stoull(f[4]);
    r.reads = std::stoi(f[5]);
    r.success_probability = std::stod(f[6]);
    r.unique_answers = std::stoi(f[7]);
    r.solution_count = std::stoull(f[8]);
    r.mpd = mpd_from_string(f[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void attach_answers_csv(std::vector<CellRow>& rows,
                        const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line) || line != kAnswersHeader)
    throw std::invalid_argument("answers csv: bad header");
  std::map<std::tuple<std::string, std::string, std::string, int>,
           std::vector<std::string>>
      by_cell;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 5)
      throw std::invalid_argument("answers csv: bad row: " + line);
    by_cell[{f[0], f[1], f[2], std::stoi(f[3])}].push_back(f[4]);
  }
  for (auto& r : rows) {
    auto it = by_cell.find(
        {r.instance_id, r.strategy, format_double(r.c), r.srt_index});
    if (it != by_cell.end()) r.answers = it->second;
  }
}

nlohmann::json build_report(const std::vector<CellRow>& rows,
                            const ReportOptions& opts) {
  // strategy list in first-appearance order, c grid sorted
  std::vector<std::string> strategies;
  std::set<double> c_grid;
  int max_srt = 0;
  for (const auto& r : rows) {
    if (std::find(strategies.begin(), strategies.end(), r.strategy) ==
        strategies.end())
      strategies.push_back(r.strategy);
    c_grid.insert(r.c);
    max_srt = std::max(max_srt, r.srt_index);
  }

  json report;
  report["baseline_c"] = opts.baseline_c;
  report["strategies"] = strategies;
  {
    json grid = json::array();
    for (double c : c_grid) grid.push_back(c);
    report["c_grid"] = grid;
  }
  report["srt_count"] = max_srt + 1;

  // per-strategy success maps over identity-SRT rows
  json optimal = json::object();
  json ratio = json::object();
  json ratio_meta = json::object();
  for (const auto& strat : strategies) {
    std::map<std::string, std::map<double, double>> per_instance;
    for (const auto& r : rows)
      if (r.strategy == strat && r.srt_index == 0)
        per_instance[r.instance_id][r.c] = r.success_probability;
    std::vector<std::map<double, double>> success;
    success.reserve(per_instance.size());
    for (auto& [id, m] : per_instance) success.push_back(std::move(m));

    OptimalCHistogram hist = optimal_c_histogram(success);
    json counts = json::object();
    for (const auto& [c, n] : hist.counts) counts[format_double(c)] = n;
    optimal[strat] = {{"counts", counts},
                      {"ties", hist.ties},
                      {"skipped_all_zero", hist.skipped_all_zero}};

    RatioCurve curve = median_ratio_curve(success, opts.baseline_c);
    json med = json::object();
    for (const auto& [c, v] : curve.median) med[format_double(c)] = v;
    ratio[strat] = med;
    ratio_meta[strat] = {{"instances_used", curve.instances_used},
                         {"excluded_zero_baseline", curve.excluded_zero_baseline}};
  }
  report["optimal_c_histogram"] = optimal;
  report["median_success_ratio"] = ratio;
  report["success_ratio_meta"] = ratio_meta;

  json scatter = json::array();
  for (const auto& r : rows)
    if (r.srt_index == 0)
      scatter.push_back({{"instance_id", r.instance_id},
                         {"strategy", r.strategy},
                         {"c", r.c},
                         {"mpd", std::isinf(r.mpd) ? json("inf") : json(r.mpd)}});
  report["mpd_scatter"] = scatter;

  // answer diversity: SRT axis at the reference strategy and baseline c,
  // strategy axis at identity SRT and baseline c
  json diversity = json::array();
  if (max_srt > 0) {
    std::string ref = to_string(opts.srt_reference_strategy);
    std::vector<std::string> ids;
    for (const auto& r : rows)
      if (std::find(ids.begin(), ids.end(), r.instance_id) == ids.end())
        ids.push_back(r.instance_id);
    for (const auto& id : ids) {
      std::set<std::string> srt_union, strat_union;
      std::uint64_t solutions = 0;
      bool have_srt = false, have_strat = false;
      for (const auto& r : rows) {
        if (r.instance_id != id || r.c != opts.baseline_c) continue;
        solutions = r.solution_count;
        if (r.strategy == ref) {
          srt_union.insert(r.answers.begin(), r.answers.end());
          have_srt = true;
        }
        if (r.srt_index == 0) {
          strat_union.insert(r.answers.begin(), r.answers.end());
          have_strat = true;
        }
      }
      if (!have_srt || !have_strat || solutions == 0) continue;
      diversity.push_back(
          {{"instance_id", id},
           {"solution_count", solutions},
           {"srt_unique", srt_union.size()},
           {"srt_fraction", answer_set_fraction(srt_union.size(), solutions)},
           {"strategy_unique", strat_union.size()},
           {"strategy_fraction",
            answer_set_fraction(strat_union.size(), solutions)}});
    }
    report["srt_reference_strategy"] = ref;
  }
  report["srt_diversity"] = diversity;
  return report;
}

SweepOutcome run_sweep(const SweepPlan& plan) {
  if (plan.strategies.empty() || plan.c_values.empty())
    throw std::invalid_argument("sweep: strategies and chain couplings must be nonempty");
  if (plan.srt_count < 1)
    throw std::invalid_argument("sweep: srt count must be >= 1");

  SweepOutcome outcome;
  auto manifest = load_manifest(plan.corpus_manifest);
  HardwareGraph g = load_hardware_graph(plan.hardware_path);
  auto manifest_dir = plan.corpus_manifest.parent_path();
  std::uint64_t srt_base = plan.srt_seed.value_or(plan.master_seed);

  std::vector<InstanceContext> instances;
  std::vector<std::size_t> instance_index;  // manifest position per context
  for (std::size_t mi = 0; mi < manifest.size(); ++mi) {
    const auto& entry = manifest[mi];
    InstanceContext ctx;
    ctx.manifest = entry;
    try {
      ctx.formula = parse_dimacs(read_text_file(manifest_dir / entry.cnf_path));
      ctx.reduction = sat_to_ising(ctx.formula);
    } catch (const std::exception& ex) {
      outcome.log.push_back("skip " + entry.instance_id + ": " + ex.what());
      ++outcome.instances_skipped;
      continue;
    }
    auto emb = greedy_embed(ctx.reduction.problem, g,
                            derive_seed(plan.master_seed, "embed", mi),
                            plan.embed_max_tries);
    if (!emb) {
      outcome.log.push_back("skip " + entry.instance_id +
                            ": no embedding found");
      ++outcome.instances_skipped;
      continue;
    }
    ctx.embedding = *emb;
    ctx.weights = compute_weights(ctx.reduction.problem, g, ctx.embedding);
    ctx.srt_vectors =
        srt_set(g.num_qubits, plan.srt_count, derive_seed(srt_base, "srt-set", mi),
                plan.srt_chain_constant,
                plan.srt_chain_constant ? &ctx.embedding : nullptr);
    save_embedding(ctx.embedding,
                   plan.out_dir / "embeddings" / (entry.instance_id + ".json"));
    instances.push_back(std::move(ctx));
    instance_index.push_back(mi);
  }
  outcome.instances_embedded = static_cast<int>(instances.size());

  struct CellJob {
    std::size_t inst, si, ci, ri;
  };
  std::vector<CellJob> jobs;
  for (std::size_t inst = 0; inst < instances.size(); ++inst)
    for (std::size_t si = 0; si < plan.strategies.size(); ++si)
      for (std::size_t ci = 0; ci < plan.c_values.size(); ++ci)
        for (std::size_t ri = 0; ri < static_cast<std::size_t>(plan.srt_count); ++ri)
          jobs.push_back({inst, si, ci, ri});

  std::vector<CellRow> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t jid = 0; jid < static_cast<std::int64_t>(jobs.size()); ++jid) {
    const auto& job = jobs[static_cast<std::size_t>(jid)];
    const auto& ctx = instances[job.inst];
    std::uint64_t seed = cell_seed(plan.master_seed, instance_index[job.inst],
                                   job.si, job.ci, job.ri);
    try {
      rows[static_cast<std::size_t>(jid)] =
          run_cell(ctx, g, plan.strategies[job.si], plan.c_values[job.ci],
                   static_cast<int>(job.ri), plan, seed);
    } catch (const std::exception& ex) {
      errors[static_cast<std::size_t>(jid)] = ex.what();
    }
  }

  // an error in any cell drops the whole instance, mirroring downselection
  std::set<std::size_t> failed;
  for (std::size_t jid = 0; jid < jobs.size(); ++jid)
    if (!errors[jid].empty() && !failed.count(jobs[jid].inst)) {
      failed.insert(jobs[jid].inst);
      outcome.log.push_back("skip " + instances[jobs[jid].inst].manifest.instance_id +
                            ": " + errors[jid]);
    }
  outcome.instances_embedded -= static_cast<int>(failed.size());
  outcome.instances_skipped += static_cast<int>(failed.size());

  std::vector<CellRow> kept;
  kept.reserve(rows.size());
  for (std::size_t jid = 0; jid < jobs.size(); ++jid)
    if (!failed.count(jobs[jid].inst)) kept.push_back(std::move(rows[jid]));
  outcome.cells_written = static_cast<int>(kept.size());

  write_text_file(plan.out_dir / "results.csv", results_to_csv(kept));
  write_text_file(plan.out_dir / "answers.csv", answers_to_csv(kept));

  json plan_echo;
  plan_echo["master_seed"] = plan.master_seed;
  plan_echo["h_min"] = plan.h_min;
  plan_echo["baseline_c"] = plan.baseline_c;
  plan_echo["srt_count"] = plan.srt_count;
  plan_echo["srt_mode"] = to_string(plan.srt_mode);
  plan_echo["srt_chain_constant"] = plan.srt_chain_constant;
  plan_echo["policy"] = to_string(plan.policy);
  plan_echo["backend"] = to_string(plan.backend.kind);
  plan_echo["reads"] = plan.backend.reads;
  plan_echo["sweeps"] = plan.backend.schedule.sweeps;
  {
    json cs = json::array();
    for (double c : plan.c_values) cs.push_back(c);
    plan_echo["c_values"] = cs;
    json ss = json::array();
    for (auto s : plan.strategies) ss.push_back(to_string(s));
    plan_echo["strategies"] = ss;
  }
  write_text_file(plan.out_dir / "plan.json", plan_echo.dump(2) + "\n");

  // report built strictly from the files just written
  auto reread = load_results_csv(plan.out_dir / "results.csv");
  attach_answers_csv(reread, plan.out_dir / "answers.csv");
  ReportOptions opts;
  opts.baseline_c = plan.baseline_c;
  opts.srt_reference_strategy = plan.srt_reference_strategy;
  write_text_file(plan.out_dir / "report.json",
                  build_report(reread, opts).dump(2) + "\n");

  std::ostringstream logtext;
  for (const auto& line : outcome.log) logtext << line << '\n';
  write_text_file(plan.out_dir / "sweep_log.txt", logtext.str());
  return outcome;
}

}  // namespace chainsmith
