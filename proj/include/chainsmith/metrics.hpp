#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chainsmith/annealer.hpp"
#include "chainsmith/decode.hpp"
#include "chainsmith/sat.hpp"

namespace chainsmith {

// Minimum parameter distance: the smallest absolute gap between distinct
// programmed values (biases, problem couplings, signed chain couplings).
// Values are deduplicated canonically (sorted, merged within 1e-12);
// coincident programmed values are intentional equalities, not distance
// zero. Returns +inf when fewer than two distinct values exist.
double mpd(const PhysicalProblem& p);

// Programmed values entering the MPD set, unsorted.
std::vector<double> mpd_value_set(const PhysicalProblem& p);

// Fraction of reads (weighted by multiplicity) whose decoded assignment
// satisfies the formula. Only the first `original_vars` entries of each
// decoded assignment are checked. Under Any, a read succeeds if any concert
// candidate satisfies; under MajorityOnly, only the majority-vote candidate
// counts.
double success_probability(
    const SampleSet& samples,
    const std::vector<std::array<DecodedSample, 3>>& decoded,
    const CnfFormula& f, int original_vars, ConcertPolicy policy);

// Per-read observed answer: the first satisfying concert candidate in
// decoder order (empty when the read fails). At most one answer per read, so
// unique-answer counts never exceed the read count.
std::string observed_answer(const std::array<DecodedSample, 3>& candidates,
                            const CnfFormula& f, int original_vars,
                            ConcertPolicy policy);

// Per-instance success map c -> P divided by its value at baseline_c.
// Returns an empty map when the baseline is missing or zero (the instance is
// then excluded from ratio aggregation).
std::map<double, double> success_ratio(
    const std::map<double, double>& success_per_c, double baseline_c);

struct RatioCurve {
  std::map<double, double> median;  // per c
  int instances_used = 0;
  int excluded_zero_baseline = 0;
};

RatioCurve median_ratio_curve(
    const std::vector<std::map<double, double>>& per_instance_success,
    double baseline_c);

struct OptimalCHistogram {
  std::map<double, int> counts;
  int ties = 0;
  int skipped_all_zero = 0;
};

// Each instance contributes 1 at its best-success chain coupling; ties go to
// the lowest c and are counted. Instances with zero success everywhere are
// skipped.
OptimalCHistogram optimal_c_histogram(
    const std::vector<std::map<double, double>>& per_instance_success);

// Unique satisfying answers observed over the exact solution count; the
// count must be exact (uncapped) and positive.
double answer_set_fraction(std::uint64_t unique_observed,
                           std::uint64_t total_known);

double median(std::vector<double> values);

}  // namespace chainsmith
