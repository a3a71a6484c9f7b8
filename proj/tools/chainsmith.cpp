#include <omp.h>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainsmith/chimera.hpp"
#include "chainsmith/io.hpp"
#include "chainsmith/rng.hpp"
#include "chainsmith/serial.hpp"
#include "chainsmith/sweep.hpp"

namespace fs = std::filesystem;
using namespace chainsmith;
using nlohmann::json;

namespace {

std::vector<StrategyKind> parse_strategies(const std::vector<std::string>& names) {
  std::vector<StrategyKind> out;
  for (const auto& n : names) out.push_back(strategy_from_string(n));
  return out;
}

void apply_workers(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chainsmith: embed, parameterize, anneal and score Ising/SAT problems"};
  app.require_subcommand(1);

  int workers = 0;
  app.add_option("--workers", workers, "OpenMP worker count (0 = default)")
      ->envname("CHAINSMITH_WORKERS");

  // ---- gen ----------------------------------------------------------------
  GenPlan gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a mixed-SAT corpus with manifest");
  std::string gen_out;
  cmd_gen->add_option("--out", gen_out, "output directory")->required();
  cmd_gen->add_option("--n", gen.ns, "variable counts");
  cmd_gen->add_option("--alpha", gen.alphas, "clause counts");
  cmd_gen->add_option("--per-cell", gen.per_cell, "instances per (n, alpha) cell");
  cmd_gen->add_option("--max-len", gen.max_len, "maximum clause length");
  cmd_gen->add_option("--cap", gen.cap, "solution-count cap for downselection");
  cmd_gen->add_option("--seed", gen.master_seed, "master seed");

  // ---- count --------------------------------------------------------------
  auto* cmd_count = app.add_subcommand("count", "count satisfying assignments of a DIMACS file");
  std::string count_cnf;
  std::uint64_t count_cap = 1000000;
  bool count_naive = false;
  cmd_count->add_option("--cnf", count_cnf, "DIMACS CNF file")->required();
  cmd_count->add_option("--cap", count_cap, "abort once the count exceeds this");
  cmd_count->add_flag("--naive", count_naive, "use the serial reference counter");

  // ---- reduce -------------------------------------------------------------
  auto* cmd_reduce = app.add_subcommand("reduce", "reduce a CNF formula to a logical Ising problem");
  std::string reduce_cnf, reduce_out, reduce_map;
  cmd_reduce->add_option("--cnf", reduce_cnf, "DIMACS CNF file")->required();
  cmd_reduce->add_option("--out", reduce_out, "logical problem JSON")->required();
  cmd_reduce->add_option("--map", reduce_map, "reduction map JSON");

  // ---- embed --------------------------------------------------------------
  auto* cmd_embed = app.add_subcommand("embed", "embed a logical problem on a hardware graph");
  std::string embed_problem, embed_hardware, embed_out;
  std::uint64_t embed_seed = 0;
  int embed_tries = 20;
  cmd_embed->add_option("--problem", embed_problem, "logical problem JSON")->required();
  cmd_embed->add_option("--hardware", embed_hardware, "hardware graph JSON")->required();
  cmd_embed->add_option("--out", embed_out, "embedding JSON")->required();
  cmd_embed->add_option("--seed", embed_seed, "embedding seed");
  cmd_embed->add_option("--max-tries", embed_tries, "retry budget");

  // ---- parametrize ----------------------------------------------------------
  auto* cmd_param = app.add_subcommand("parametrize", "turn a logical problem into a physical one");
  std::string param_problem, param_hardware, param_embedding, param_out;
  std::string param_strategy = "even", param_srt_mode = "all-terms";
  double param_c = 1.6, param_hmin = 1.0 / 16;
  int param_srt_count = 0, param_srt_index = 0;
  std::uint64_t param_srt_seed = 0;
  cmd_param->add_option("--problem", param_problem, "logical problem JSON")->required();
  cmd_param->add_option("--hardware", param_hardware, "hardware graph JSON")->required();
  cmd_param->add_option("--embedding", param_embedding, "embedding JSON")->required();
  cmd_param->add_option("--out", param_out, "physical problem JSON")->required();
  cmd_param->add_option("--strategy", param_strategy,
                        "single|even|weighted|weighted_regularized");
  cmd_param->add_option("--chain-coupling", param_c, "chain coupling magnitude c");
  cmd_param->add_option("--h-min", param_hmin, "hardware resolution floor");
  cmd_param->add_option("--srt-count", param_srt_count,
                        "size of the SRT set (0 = no transformation)");
  cmd_param->add_option("--srt-index", param_srt_index, "which SRT to apply");
  cmd_param->add_option("--srt-seed", param_srt_seed, "SRT set seed");
  cmd_param->add_option("--srt-mode", param_srt_mode, "all-terms|problem-terms-only");

  // ---- sample ---------------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "draw reads from a physical problem");
  std::string sample_physical, sample_out, sample_backend = "sa";
  SaSchedule sample_sched;
  std::uint64_t sample_seed = 0;
  int sample_reads = 1000;
  bool sample_serial = false;
  cmd_sample->add_option("--physical", sample_physical, "physical problem JSON")->required();
  cmd_sample->add_option("--out", sample_out,
                         "samples CSV (provenance sidecar written next to it)")->required();
  cmd_sample->add_option("--backend", sample_backend, "exact|sa");
  cmd_sample->add_option("--reads", sample_reads, "number of reads");
  cmd_sample->add_option("--sweeps", sample_sched.sweeps, "SA sweeps per read");
  cmd_sample->add_option("--beta-start", sample_sched.beta_start, "initial inverse temperature");
  cmd_sample->add_option("--beta-end", sample_sched.beta_end, "final inverse temperature");
  cmd_sample->add_option("--seed", sample_seed, "sampler seed");
  cmd_sample->add_flag("--serial", sample_serial, "use the serial reference sampler");

  // ---- decode ---------------------------------------------------------------
  auto* cmd_decode = app.add_subcommand("decode", "decode physical reads into logical assignments");
  std::string dec_samples, dec_problem, dec_hardware, dec_embedding, dec_out, dec_cnf;
  std::string dec_instance = "-";
  std::uint64_t dec_seed = 0;
  cmd_decode->add_option("--samples", dec_samples, "samples CSV")->required();
  cmd_decode->add_option("--problem", dec_problem, "logical problem JSON")->required();
  cmd_decode->add_option("--hardware", dec_hardware, "hardware graph JSON")->required();
  cmd_decode->add_option("--embedding", dec_embedding, "embedding JSON")->required();
  cmd_decode->add_option("--out", dec_out, "decoded CSV")->required();
  cmd_decode->add_option("--cnf", dec_cnf, "CNF for the satisfied flag");
  cmd_decode->add_option("--seed", dec_seed, "tie-break seed");
  cmd_decode->add_option("--instance-id", dec_instance, "tag for the CSV rows");

  // ---- sweep ----------------------------------------------------------------
  SweepPlan plan;
  auto* cmd_sweep = app.add_subcommand("sweep", "full corpus × strategy × c × SRT pipeline");
  std::string sweep_corpus, sweep_hardware, sweep_out;
  std::vector<std::string> sweep_strategies = {"single", "even", "weighted",
                                               "weighted_regularized"};
  std::string sweep_backend = "sa", sweep_policy = "any", sweep_srt_mode = "all-terms";
  std::string sweep_srt_ref = "even";
  std::uint64_t sweep_srt_seed = 0;
  bool sweep_have_srt_seed = false;
  cmd_sweep->add_option("--corpus", sweep_corpus, "corpus manifest JSON")->required();
  cmd_sweep->add_option("--hardware", sweep_hardware, "hardware graph JSON")->required();
  cmd_sweep->add_option("--out", sweep_out, "output directory")->required();
  cmd_sweep->add_option("--strategies", sweep_strategies, "strategies to sweep");
  cmd_sweep->add_option("--chain-couplings", plan.c_values, "chain coupling grid");
  cmd_sweep->add_option("--h-min", plan.h_min, "hardware resolution floor");
  cmd_sweep->add_option("--srt-count", plan.srt_count, "SRTs per instance (first is identity)");
  cmd_sweep->add_option("--srt-mode", sweep_srt_mode, "all-terms|problem-terms-only");
  cmd_sweep
      ->add_option("--srt-seed", sweep_srt_seed, "SRT seed (default: master seed)")
      ->each([&](const std::string&) { sweep_have_srt_seed = true; });
  cmd_sweep->add_flag("--srt-chain-constant", plan.srt_chain_constant,
                      "hold SRT signs constant within each chain");
  cmd_sweep->add_option("--srt-reference-strategy", sweep_srt_ref,
                        "strategy used for the SRT diversity axis");
  cmd_sweep->add_option("--concert-policy", sweep_policy, "any|majority-only");
  cmd_sweep->add_option("--backend", sweep_backend, "exact|sa");
  cmd_sweep->add_option("--reads", plan.backend.reads, "reads per cell");
  cmd_sweep->add_option("--sweeps", plan.backend.schedule.sweeps, "SA sweeps per read");
  cmd_sweep->add_option("--beta-start", plan.backend.schedule.beta_start,
                        "initial inverse temperature");
  cmd_sweep->add_option("--beta-end", plan.backend.schedule.beta_end,
                        "final inverse temperature");
  cmd_sweep->add_option("--seed", plan.master_seed, "master seed");
  cmd_sweep->add_option("--embed-max-tries", plan.embed_max_tries, "embedding retry budget");
  cmd_sweep->add_option("--baseline-c", plan.baseline_c, "chain coupling ratios normalize to");

  // ---- report ---------------------------------------------------------------
  auto* cmd_report = app.add_subcommand("report", "rebuild report.json from sweep CSVs");
  std::string rep_results, rep_answers, rep_out, rep_ref = "even";
  double rep_baseline = 1.6;
  cmd_report->add_option("--results", rep_results, "results.csv")->required();
  cmd_report->add_option("--answers", rep_answers, "answers.csv")->required();
  cmd_report->add_option("--out", rep_out, "report JSON")->required();
  cmd_report->add_option("--baseline-c", rep_baseline, "ratio baseline");
  cmd_report->add_option("--srt-reference-strategy", rep_ref,
                         "strategy used for the SRT diversity axis");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_workers(workers);

    if (*cmd_gen) {
      gen.out_dir = gen_out;
      auto entries = generate_corpus(gen);
      std::cout << "generated " << entries.size() << " instances under "
                << gen_out << "\n";
      return entries.empty() ? 2 : 0;
    }

    if (*cmd_count) {
      CnfFormula f = parse_dimacs(read_text_file(count_cnf));
      SolutionCount sc = count_naive ? serial::count_solutions(f, count_cap)
                                     : count_solutions(f, count_cap);
      json j{{"count", sc.count}, {"capped", sc.capped}};
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (*cmd_reduce) {
      CnfFormula f = parse_dimacs(read_text_file(reduce_cnf));
      IsingReduction red = sat_to_ising(f);
      save_logical_problem(red.problem, reduce_out);
      if (!reduce_map.empty()) {
        json j{{"original_vars", red.map.original_vars},
               {"ancilla_vars", red.map.ancilla_vars},
               {"clause_ancillas", red.map.clause_ancillas},
               {"clause_weights", red.map.clause_weights}};
        write_text_file(reduce_map, j.dump(2) + "\n");
      }
      std::cout << "reduced " << f.n_vars << " vars / " << f.clauses.size()
                << " clauses to " << red.map.total_vars() << " logical spins\n";
      return 0;
    }

    if (*cmd_embed) {
      LogicalProblem l = load_logical_problem(embed_problem);
      HardwareGraph g = load_hardware_graph(embed_hardware);
      auto emb = greedy_embed(l, g, embed_seed, embed_tries);
      if (!emb) {
        std::cerr << "embed: no embedding found after " << embed_tries
                  << " tries\n";
        return 2;
      }
      save_embedding(*emb, embed_out);
      std::size_t total = 0;
      for (const auto& c : emb->chains) total += c.size();
      std::cout << "embedded " << l.n << " logical qubits over " << total
                << " physical qubits\n";
      return 0;
    }

    if (*cmd_param) {
      LogicalProblem l = load_logical_problem(param_problem);
      HardwareGraph g = load_hardware_graph(param_hardware);
      Embedding e = load_embedding(param_embedding);
      ParamConfig cfg;
      cfg.strategy = strategy_from_string(param_strategy);
      cfg.chain_coupling = param_c;
      cfg.h_min = param_hmin;
      cfg.srt_mode = srt_mode_from_string(param_srt_mode);
      if (param_srt_count > 0) {
        auto set = srt_set(g.num_qubits, param_srt_count, param_srt_seed);
        if (param_srt_index < 0 || param_srt_index >= param_srt_count)
          throw std::invalid_argument("parametrize: srt index out of range");
        cfg.srt = set[static_cast<std::size_t>(param_srt_index)];
      }
      PhysicalProblem p = parameterize(l, g, e, cfg);
      save_physical_problem(p, param_out);
      for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "programmed " << p.biases.size() << " biases, "
                << p.problem_couplings.size() << " problem couplers, "
                << p.chain_couplings.size() << " chain couplers (scale "
                << format_double(p.scale) << ")\n";
      return 0;
    }

    if (*cmd_sample) {
      PhysicalProblem p = load_physical_problem(sample_physical);
      BackendConfig cfg;
      cfg.kind = backend_from_string(sample_backend);
      cfg.reads = sample_reads;
      cfg.schedule = sample_sched;
      cfg.seed = sample_seed;
      SampleSet set;
      if (sample_serial && cfg.kind == BackendKind::Sa) {
        SaSchedule sched = sample_sched;
        sched.reads = sample_reads;
        set = serial::sample_sa(p, sched, sample_seed);
      } else {
        set = sample(p, cfg);
      }
      fs::path csv = sample_out;
      fs::path prov = csv;
      prov.replace_extension(".provenance.json");
      save_sample_set(set, csv, prov);
      std::cout << "wrote " << set.reads.size() << " reads to " << csv.string()
                << "\n";
      return 0;
    }

    if (*cmd_decode) {
      LogicalProblem l = load_logical_problem(dec_problem);
      HardwareGraph g = load_hardware_graph(dec_hardware);
      Embedding e = load_embedding(dec_embedding);
      WeightTable w = compute_weights(l, g, e);
      fs::path prov = fs::path(dec_samples);
      prov.replace_extension(".provenance.json");
      SampleSet set = load_sample_set(dec_samples, prov);
      bool have_cnf = !dec_cnf.empty();
      CnfFormula f;
      if (have_cnf) f = parse_dimacs(read_text_file(dec_cnf));
      std::ostringstream csv;
      csv << "instance_id,read_index,decoder,assignment,broken_chain_count,satisfied\n";
      for (std::size_t r = 0; r < set.reads.size(); ++r) {
        Rng rng(derive_seed(dec_seed, "decode", r));
        auto concert = decode_concert(set.reads[r].state, e, w, rng);
        for (const auto& d : concert) {
          csv << dec_instance << ',' << r << ',' << to_string(d.decoder) << ','
              << spins_to_bits(d.values) << ',' << d.broken_chains.size() << ',';
          if (have_cnf)
            csv << (satisfies(f, std::span<const std::int8_t>(
                                     d.values.data(),
                                     static_cast<std::size_t>(f.n_vars)))
                        ? 1
                        : 0);
          else
            csv << '-';
          csv << '\n';
        }
      }
      write_text_file(dec_out, csv.str());
      std::cout << "decoded " << set.reads.size() << " reads\n";
      return 0;
    }

    if (*cmd_sweep) {
      plan.corpus_manifest = sweep_corpus;
      plan.hardware_path = sweep_hardware;
      plan.out_dir = sweep_out;
      plan.strategies = parse_strategies(sweep_strategies);
      plan.backend.kind = backend_from_string(sweep_backend);
      plan.policy = concert_policy_from_string(sweep_policy);
      plan.srt_mode = srt_mode_from_string(sweep_srt_mode);
      plan.srt_reference_strategy = strategy_from_string(sweep_srt_ref);
      if (sweep_have_srt_seed) plan.srt_seed = sweep_srt_seed;
      SweepOutcome outcome = run_sweep(plan);
      for (const auto& line : outcome.log) std::cerr << line << "\n";
      std::cout << "swept " << outcome.instances_embedded << " instances ("
                << outcome.instances_skipped << " skipped), "
                << outcome.cells_written << " cells -> " << sweep_out << "\n";
      return outcome.ok() ? 0 : 2;
    }

    if (*cmd_report) {
      auto rows = load_results_csv(rep_results);
      attach_answers_csv(rows, rep_answers);
      ReportOptions opts;
      opts.baseline_c = rep_baseline;
      opts.srt_reference_strategy = strategy_from_string(rep_ref);
      write_text_file(rep_out, build_report(rows, opts).dump(2) + "\n");
      std::cout << "report over " << rows.size() << " rows -> " << rep_out << "\n";
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
