#include "chainsmith/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chainsmith {

std::vector<double> mpd_value_set(const PhysicalProblem& p) {
  std::vector<double> values;
  for (const auto& [q, v] : p.biases)
    if (v != 0.0) values.push_back(v);
  for (const auto& [e, v] : p.problem_couplings)
    if (v != 0.0) values.push_back(v);
  for (const auto& [e, v] : p.chain_couplings)
    if (v != 0.0) values.push_back(v);
  return values;
}

double mpd(const PhysicalProblem& p) {
  auto values = mpd_value_set(p);
  if (values.empty())
    throw std::invalid_argument("mpd: no programmed values");
  std::sort(values.begin(), values.end());
  std::vector<double> distinct;
  for (double v : values)
    if (distinct.empty() || v - distinct.back() > 1e-12) distinct.push_back(v);
  if (distinct.size() < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < distinct.size(); ++i)
    best = std::min(best, distinct[i] - distinct[i - 1]);
  return best;
}

namespace {

bool candidate_satisfies(const DecodedSample& d, const CnfFormula& f,
                         int original_vars) {
  return satisfies(f, std::span<const std::int8_t>(d.values.data(),
                                                   static_cast<std::size_t>(original_vars)));
}

std::string bitstring(const SpinVector& v, int length) {
  std::string s(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i)
    if (v[static_cast<std::size_t>(i)] > 0) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

}  // namespace

std::string observed_answer(const std::array<DecodedSample, 3>& candidates,
                            const CnfFormula& f, int original_vars,
                            ConcertPolicy policy) {
  if (policy == ConcertPolicy::MajorityOnly) {
    const auto& m = candidates[1];
    if (candidate_satisfies(m, f, original_vars))
      return bitstring(m.values, original_vars);
    return {};
  }
  for (const auto& c : candidates)
    if (candidate_satisfies(c, f, original_vars))
      return bitstring(c.values, original_vars);
  return {};
}

double success_probability(
    const SampleSet& samples,
    const std::vector<std::array<DecodedSample, 3>>& decoded,
    const CnfFormula& f, int original_vars, ConcertPolicy policy) {
  if (decoded.size() != samples.reads.size())
    throw std::invalid_argument("success_probability: decoded/read count mismatch");
  std::int64_t total = 0, good = 0;
  for (std::size_t r = 0; r < samples.reads.size(); ++r) {
    int mult = samples.reads[r].multiplicity;
    total += mult;
    if (!observed_answer(decoded[r], f, original_vars, policy).empty())
      good += mult;
  }
  if (total == 0) throw std::invalid_argument("success_probability: no reads");
  return static_cast<double>(good) / static_cast<double>(total);
}

std::map<double, double> success_ratio(
    const std::map<double, double>& success_per_c, double baseline_c) {
  auto it = success_per_c.find(baseline_c);
  if (it == success_per_c.end() || it->second == 0.0) return {};
  std::map<double, double> out;
  for (const auto& [c, p] : success_per_c) out[c] = p / it->second;
  return out;
}

double median(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("median: empty sample");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

RatioCurve median_ratio_curve(
    const std::vector<std::map<double, double>>& per_instance_success,
    double baseline_c) {
  RatioCurve curve;
  std::map<double, std::vector<double>> ratios;
  for (const auto& inst : per_instance_success) {
    auto r = success_ratio(inst, baseline_c);
    if (r.empty()) {
      ++curve.excluded_zero_baseline;
      continue;
    }
    ++curve.instances_used;
    for (const auto& [c, v] : r) ratios[c].push_back(v);
  }
  for (auto& [c, v] : ratios) curve.median[c] = median(std::move(v));
  return curve;
}

OptimalCHistogram optimal_c_histogram(
    const std::vector<std::map<double, double>>& per_instance_success) {
  OptimalCHistogram hist;
  for (const auto& inst : per_instance_success) {
    double best = 0.0;
    for (const auto& [c, p] : inst) best = std::max(best, p);
    if (best == 0.0) {
      ++hist.skipped_all_zero;
      continue;
    }
    int peaks = 0;
    double arg = 0.0;
    for (const auto& [c, p] : inst)
      if (p == best) {
        if (peaks == 0) arg = c;  // map iterates ascending: lowest c wins
        ++peaks;
      }
    if (peaks > 1) ++hist.ties;
    ++hist.counts[arg];
  }
  return hist;
}

double answer_set_fraction(std::uint64_t unique_observed,
                           std::uint64_t total_known) {
  if (total_known == 0)
    throw std::invalid_argument("answer_set_fraction: unknown or zero solution count");
  return static_cast<double>(unique_observed) / static_cast<double>(total_known);
}

}  // namespace chainsmith
