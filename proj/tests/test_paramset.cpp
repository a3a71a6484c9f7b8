#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "chainsmith/annealer.hpp"
#include "chainsmith/chimera.hpp"
#include "chainsmith/decode.hpp"
#include "chainsmith/paramset.hpp"
#include "test_util.hpp"

using namespace chainsmith;
using namespace testutil;

namespace {

// Two logical qubits with chains {0,1} and {2,3,4,5}; qubit 0 carries three
// inter-chain couplers and qubit 1 carries one, so chain 0 weighs [0.75, 0.25].
struct TwoChainFixture {
  LogicalProblem l;
  HardwareGraph g;
  Embedding e;

  TwoChainFixture(double h0, double j) {
    l.resize(2);
    l.set_bias(0, h0);
    l.add_coupling(0, 1, j);
    g.num_qubits = 6;
    g.active.assign(6, 1);
    g.edges = {{0, 1}, {2, 3}, {3, 4}, {4, 5}, {0, 2}, {0, 3}, {0, 4}, {1, 5}};
    e.chains = {{0, 1}, {2, 3, 4, 5}};
  }
};

void check_conservation(const LogicalProblem& l, const HardwareGraph& g,
                        const Embedding& e, const PhysicalProblem& p) {
  for (int i = 0; i < l.n; ++i) {
    double sum = 0.0;
    for (int q : e.chains[static_cast<std::size_t>(i)])
      if (p.biases.count(q)) sum += p.biases.at(q);
    CHECK(std::abs(sum / p.scale - l.bias(i)) <= 1e-9);
  }
  for (const auto& [edge, j] : l.couplings) {
    double sum = 0.0;
    for (int a : e.chains[static_cast<std::size_t>(edge.first)])
      for (int b : e.chains[static_cast<std::size_t>(edge.second)])
        if (g.has_edge(a, b) && p.problem_couplings.count(make_edge(a, b)))
          sum += p.problem_couplings.at(make_edge(a, b));
    CHECK(std::abs(sum / p.scale - j) <= 1e-9);
  }
}

}  // namespace

TEST_CASE("weights follow w = d/D") {
  TwoChainFixture fx(0.0, 1.0);
  WeightTable t = compute_weights(fx.l, fx.g, fx.e);
  CHECK(t.d[0] == std::vector<int>{3, 1});
  CHECK(t.total[0] == 4);
  CHECK(t.w[0][0] == doctest::Approx(0.75));
  CHECK(t.w[0][1] == doctest::Approx(0.25));
  // the long chain sees one coupler per member
  CHECK(t.d[1] == std::vector<int>{1, 1, 1, 1});
  for (double w : t.w[1]) CHECK(w == doctest::Approx(0.25));
}

TEST_CASE("a 1-qubit chain has weight 1") {
  LogicalProblem l;
  l.resize(1);
  l.set_bias(0, 1.0);
  HardwareGraph g;
  g.num_qubits = 1;
  g.active = {1};
  Embedding e;
  e.chains = {{0}};
  WeightTable t = compute_weights(l, g, e);
  CHECK(t.w[0] == std::vector<double>{1.0});
}

TEST_CASE("weights sum to one per logical qubit on embedded instances") {
  Rng rng(17);
  HardwareGraph g = build_chimera({3, 3, 4, {}});
  for (int trial = 0; trial < 10; ++trial) {
    LogicalProblem l = random_logical(rng, 3 + static_cast<int>(rng.next_below(5)), 0.5);
    auto emb = greedy_embed(l, g, rng.next_u64(), 10);
    if (!emb) continue;
    WeightTable t = compute_weights(l, g, *emb);
    for (int i = 0; i < l.n; ++i) {
      double sum = 0.0;
      for (double w : t.w[static_cast<std::size_t>(i)]) sum += w;
      CHECK(sum == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("single strategy: full bias on the most-coupled member") {
  LogicalProblem l;
  l.resize(2);
  l.set_bias(0, 0.5);
  l.add_coupling(0, 1, 1.0);
  HardwareGraph g;
  g.num_qubits = 4;
  g.active.assign(4, 1);
  g.edges = {{0, 1}, {1, 2}, {1, 3}};  // chain {0,1,2}; member 1 touches chain {3}
  Embedding e;
  e.chains = {{0, 1, 2}, {3}};
  ParamConfig cfg;
  cfg.strategy = StrategyKind::Single;
  cfg.chain_coupling = 1.0;
  cfg.h_min = 0.0;
  PhysicalProblem p = parameterize(l, g, e, cfg);
  CHECK(p.scale == doctest::Approx(1.0));
  REQUIRE(p.biases.size() == 1);
  CHECK(p.biases.at(1) == doctest::Approx(0.5));
  REQUIRE(p.problem_couplings.size() == 1);
  CHECK(p.problem_couplings.at({1, 3}) == doctest::Approx(1.0));
  // both intra-chain edges carry -c
  CHECK(p.chain_couplings.at({0, 1}) == doctest::Approx(-1.0));
  CHECK(p.chain_couplings.at({1, 2}) == doctest::Approx(-1.0));
}

TEST_CASE("even strategy clipping: floor members at h_min, then the remainder") {
  LogicalProblem l;
  l.resize(2);
  l.set_bias(0, 0.25);
  l.add_coupling(0, 1, 3.0);
  HardwareGraph g;
  g.num_qubits = 6;
  g.active.assign(6, 1);
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {0, 4}, {0, 5}, {1, 4}};
  Embedding e;
  e.chains = {{0, 1, 2, 3}, {4, 5}};
  ParamConfig cfg;
  cfg.strategy = StrategyKind::Even;
  cfg.chain_coupling = 1.6;
  cfg.h_min = 0.1;
  PhysicalProblem p = parameterize(l, g, e, cfg);
  CHECK(p.scale == doctest::Approx(1.0));  // coupler share 3/3 = 1 is the max
  // ranked by coupler count: qubit 0 (d=2), qubit 1 (d=1), then 2, 3
  CHECK(p.biases.at(0) == doctest::Approx(0.1));
  CHECK(p.biases.at(1) == doctest::Approx(0.1));
  CHECK(p.biases.at(2) == doctest::Approx(0.05));
  CHECK(p.biases.count(3) == 0);
  double sum = p.biases.at(0) + p.biases.at(1) + p.biases.at(2);
  CHECK(sum == doctest::Approx(0.25));
  // the three parallel couplers split 3.0 evenly
  CHECK(p.problem_couplings.at({0, 4}) == doctest::Approx(1.0));
  CHECK(p.problem_couplings.at({0, 5}) == doctest::Approx(1.0));
  CHECK(p.problem_couplings.at({1, 4}) == doctest::Approx(1.0));
}

TEST_CASE("sub-resolution couplers clip like biases") {
  // J = 0.15 over three parallel couplers with h_min = 0.1: one coupler at
  // 0.1, the next takes 0.05, the last stays unprogrammed
  LogicalProblem l;
  l.resize(2);
  l.set_bias(0, 1.0);
  l.add_coupling(0, 1, 0.15);
  HardwareGraph g;
  g.num_qubits = 6;
  g.active.assign(6, 1);
  g.edges = {{0, 1}, {2, 3}, {3, 4}, {0, 2}, {0, 3}, {1, 4}};
  Embedding e;
  e.chains = {{0, 1}, {2, 3, 4}};
  ParamConfig cfg;
  cfg.strategy = StrategyKind::Even;
  cfg.chain_coupling = 1.6;
  cfg.h_min = 0.1;
  PhysicalProblem p = parameterize(l, g, e, cfg);
  CHECK(p.scale == doctest::Approx(2.0));  // max problem term is the 0.5 bias
  CHECK(p.problem_couplings.at({0, 2}) == doctest::Approx(0.2));   // 0.1 * 2
  CHECK(p.problem_couplings.at({0, 3}) == doctest::Approx(0.1));   // 0.05 * 2
  CHECK(p.problem_couplings.count({1, 4}) == 0);
}

TEST_CASE("weighted regularized: base h_min plus weighted remainder") {
  TwoChainFixture fx(0.8, 4.0);
  ParamConfig cfg;
  cfg.strategy = StrategyKind::WeightedRegularized;
  cfg.chain_coupling = 1.6;
  cfg.h_min = 0.1;
  PhysicalProblem p = parameterize(fx.l, fx.g, fx.e, cfg);
  CHECK(p.scale == doctest::Approx(1.0));  // four parallel couplers at 1.0
  CHECK(p.biases.at(0) == doctest::Approx(0.55));
  CHECK(p.biases.at(1) == doctest::Approx(0.25));
}

TEST_CASE("weighted strategy: bias proportional to weight") {
  TwoChainFixture fx(0.8, 4.0);
  ParamConfig cfg;
  cfg.strategy = StrategyKind::Weighted;
  cfg.chain_coupling = 1.6;
  cfg.h_min = 0.1;
  PhysicalProblem p = parameterize(fx.l, fx.g, fx.e, cfg);
  CHECK(p.biases.at(0) == doctest::Approx(0.6));
  CHECK(p.biases.at(1) == doctest::Approx(0.2));
}

TEST_CASE("weighted strategy redistributes sub-resolution members") {
  // weights [0.75, 0.25] with h = 0.3: the light member's 0.075 < h_min drops
  // and the full value lands on the heavy member
  TwoChainFixture fx(0.3, 4.0);
  ParamConfig cfg;
  cfg.strategy = StrategyKind::Weighted;
  cfg.chain_coupling = 1.6;
  cfg.h_min = 0.1;
  PhysicalProblem p = parameterize(fx.l, fx.g, fx.e, cfg);
  CHECK(p.biases.at(0) == doctest::Approx(0.3));
  CHECK(p.biases.count(1) == 0);
}

TEST_CASE("conservation holds for every strategy and h_min, pre-rescale") {
  Rng rng(23);
  HardwareGraph g = build_chimera({4, 4, 4, {}});
  int checked = 0;
  while (checked < 12) {
    LogicalProblem l = random_logical(rng, 3 + static_cast<int>(rng.next_below(5)), 0.5);
    auto emb = greedy_embed(l, g, rng.next_u64(), 10);
    if (!emb) continue;
    ++checked;
    for (StrategyKind s : kAllStrategies)
      for (double h_min : {0.0, 1.0 / 16, 1.0 / 8}) {
        ParamConfig cfg;
        cfg.strategy = s;
        cfg.chain_coupling = 1.6;
        cfg.h_min = h_min;
        PhysicalProblem p = parameterize(l, g, *emb, cfg);
        check_conservation(l, g, *emb, p);
      }
  }
}

TEST_CASE("single strategy programs at most one device per logical term") {
  Rng rng(29);
  HardwareGraph g = build_chimera({3, 3, 4, {}});
  int checked = 0;
  while (checked < 8) {
    LogicalProblem l = random_logical(rng, 4 + static_cast<int>(rng.next_below(4)), 0.5);
    auto emb = greedy_embed(l, g, rng.next_u64(), 10);
    if (!emb) continue;
    ++checked;
    ParamConfig cfg;
    cfg.strategy = StrategyKind::Single;
    cfg.chain_coupling = 2.0;
    PhysicalProblem p = parameterize(l, g, *emb, cfg);
    for (int i = 0; i < l.n; ++i) {
      int nonzero = 0;
      for (int q : emb->chains[static_cast<std::size_t>(i)])
        nonzero += p.biases.count(q);
      CHECK(nonzero <= 1);
    }
    for (const auto& [edge, j] : l.couplings) {
      int nonzero = 0;
      for (int a : emb->chains[static_cast<std::size_t>(edge.first)])
        for (int b : emb->chains[static_cast<std::size_t>(edge.second)])
          if (g.has_edge(a, b))
            nonzero += p.problem_couplings.count(make_edge(a, b));
      CHECK(nonzero == (j != 0.0 ? 1 : 0));
    }
  }
}

TEST_CASE("even strategy without clipping gives uniform chain biases") {
  Rng rng(37);
  HardwareGraph g = build_chimera({3, 3, 4, {}});
  int checked = 0;
  while (checked < 6) {
    LogicalProblem l = random_logical(rng, 4, 0.6);
    for (int i = 0; i < l.n; ++i)
      l.set_bias(i, 0.5 + rng.next_unit());  // keep shares above any floor
    auto emb = greedy_embed(l, g, rng.next_u64(), 10);
    if (!emb) continue;
    ++checked;
    ParamConfig cfg;
    cfg.strategy = StrategyKind::Even;
    cfg.chain_coupling = 1.6;
    cfg.h_min = 0.0;
    PhysicalProblem p = parameterize(l, g, *emb, cfg);
    for (int i = 0; i < l.n; ++i) {
      const auto& chain = emb->chains[static_cast<std::size_t>(i)];
      double first = p.biases.at(chain[0]);
      for (int q : chain) CHECK(p.biases.at(q) == doctest::Approx(first));
    }
  }
}

TEST_CASE("weighted strategy without clipping keeps the weight ratios") {
  Rng rng(41);
  HardwareGraph g = build_chimera({3, 3, 4, {}});
  int checked = 0;
  while (checked < 6) {
    LogicalProblem l = random_logical(rng, 4, 0.7);
    for (int i = 0; i < l.n; ++i) l.set_bias(i, 1.0 + rng.next_unit());
    auto emb = greedy_embed(l, g, rng.next_u64(), 10);
    if (!emb) continue;
    ++checked;
    WeightTable t = compute_weights(l, g, *emb);
    ParamConfig cfg;
    cfg.strategy = StrategyKind::Weighted;
    cfg.chain_coupling = 1.6;
    cfg.h_min = 0.0;
    PhysicalProblem p = parameterize(l, g, *emb, cfg);
    for (int i = 0; i < l.n; ++i) {
      const auto& chain = emb->chains[static_cast<std::size_t>(i)];
      const auto& w = t.w[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < chain.size(); ++k)
        for (std::size_t m = 0; m < chain.size(); ++m) {
          if (w[k] == 0.0 || w[m] == 0.0) continue;
          double hk = p.biases.count(chain[k]) ? p.biases.at(chain[k]) : 0.0;
          double hm = p.biases.count(chain[m]) ? p.biases.at(chain[m]) : 0.0;
          if (hm == 0.0) continue;
          CHECK(hk / hm == doctest::Approx(w[k] / w[m]));
        }
    }
  }
}

TEST_CASE("parameterize validates its inputs") {
  TwoChainFixture fx(0.5, 1.0);
  ParamConfig cfg;
  cfg.chain_coupling = -1.0;
  CHECK_THROWS_AS(parameterize(fx.l, fx.g, fx.e, cfg), std::invalid_argument);
  cfg.chain_coupling = 1.6;
  cfg.h_min = 1.0;
  CHECK_THROWS_AS(parameterize(fx.l, fx.g, fx.e, cfg), std::invalid_argument);
  cfg.h_min = 0.0625;
  Embedding bad = fx.e;
  bad.chains[0] = {1};  // qubit 1 has no coupler into chain {2,3,4}
  bad.chains[1] = {2, 3, 4};
  CHECK_THROWS_AS(parameterize(fx.l, fx.g, bad, cfg), std::invalid_argument);
}

TEST_CASE("isolated chains under single fall back with a warning") {
  LogicalProblem l;
  l.resize(1);
  l.set_bias(0, 1.0);
  HardwareGraph g;
  g.num_qubits = 2;
  g.active = {1, 1};
  g.edges = {{0, 1}};
  Embedding e;
  e.chains = {{0, 1}};
  ParamConfig cfg;
  cfg.strategy = StrategyKind::Single;
  PhysicalProblem p = parameterize(l, g, e, cfg);
  CHECK(p.biases.at(0) == doctest::Approx(1.0));
  CHECK_FALSE(p.warnings.empty());
}

TEST_CASE("identity SRT leaves the problem unchanged") {
  Rng rng(51);
  PhysicalProblem p = random_physical(rng, 8);
  SpinVector r(8, 1);
  PhysicalProblem q = apply_srt(p, r, SrtMode::AllTerms);
  CHECK(q.biases == p.biases);
  CHECK(q.problem_couplings == p.problem_couplings);
  CHECK(q.chain_couplings == p.chain_couplings);
}

TEST_CASE("flipping one qubit negates its bias and incident couplings") {
  PhysicalProblem p;
  p.num_qubits = 3;
  p.add_bias(0, 0.5);
  p.add_bias(1, -0.25);
  p.add_problem_coupling(0, 1, 0.75);
  p.add_problem_coupling(1, 2, -0.5);
  SpinVector r{1, -1, 1};
  PhysicalProblem q = apply_srt(p, r, SrtMode::AllTerms);
  CHECK(q.biases.at(0) == doctest::Approx(0.5));
  CHECK(q.biases.at(1) == doctest::Approx(0.25));
  CHECK(q.problem_couplings.at({0, 1}) == doctest::Approx(-0.75));
  CHECK(q.problem_couplings.at({1, 2}) == doctest::Approx(0.5));
}

TEST_CASE("all-terms SRT preserves the energy spectrum and maps ground states") {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(5));
    PhysicalProblem p = random_physical(rng, n);
    SpinVector r(static_cast<std::size_t>(n));
    for (auto& v : r) v = static_cast<std::int8_t>(rng.next_sign());
    PhysicalProblem q = apply_srt(p, r, SrtMode::AllTerms);

    std::vector<double> before, after;
    for (const auto& s : all_states(n)) {
      before.push_back(energy(p, s));
      after.push_back(energy(q, s));
      // pointwise: E_q(r∘s) == E_p(s)
      SpinVector rs = s;
      for (std::size_t i = 0; i < rs.size(); ++i)
        rs[i] = static_cast<std::int8_t>(rs[i] * r[i]);
      CHECK(energy(q, rs) == doctest::Approx(energy(p, s)).epsilon(1e-12));
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    for (std::size_t i = 0; i < before.size(); ++i)
      CHECK(std::abs(before[i] - after[i]) <= 1e-9);
  }
}

TEST_CASE("problem-terms-only SRT with chain-constant r preserves the spectrum") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(5));
    PhysicalProblem p = random_physical(rng, n);
    Embedding e;
    e.chains = chains_of(p);
    auto set = srt_set(n, 3, rng.next_u64(), true, &e);
    for (const auto& r : set) {
      PhysicalProblem q = apply_srt(p, r, SrtMode::ProblemTermsOnly);
      std::vector<double> before, after;
      for (const auto& s : all_states(n)) {
        before.push_back(energy(p, s));
        after.push_back(energy(q, s));
      }
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(std::abs(before[i] - after[i]) <= 1e-9);
    }
  }
}

TEST_CASE("srt_set shapes and determinism") {
  auto set = srt_set(10, 4, 7);
  REQUIRE(set.size() == 4);
  CHECK(set[0] == SpinVector(10, 1));
  CHECK(srt_set(10, 4, 7) == set);
  CHECK(srt_set(10, 1, 7).size() == 1);
  bool any_negative = false;
  for (std::size_t t = 1; t < set.size(); ++t)
    for (auto v : set[t]) any_negative |= v < 0;
  CHECK(any_negative);
  CHECK_THROWS_AS(srt_set(10, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(srt_set(10, 2, 7, true, nullptr), std::invalid_argument);
}

TEST_CASE("chain-constant SRT vectors are uniform within chains") {
  Embedding e;
  e.chains = {{0, 1, 2}, {3, 4}, {5}};
  auto set = srt_set(7, 5, 13, true, &e);
  for (const auto& r : set)
    for (const auto& chain : e.chains)
      for (int q : chain) CHECK(r[static_cast<std::size_t>(q)] == r[static_cast<std::size_t>(chain[0])]);
}

TEST_CASE("srt length mismatch throws") {
  Rng rng(61);
  PhysicalProblem p = random_physical(rng, 6);
  CHECK_THROWS_AS(apply_srt(p, SpinVector(5, 1), SrtMode::AllTerms),
                  std::invalid_argument);
}

TEST_CASE("ground states of the embedded problem decode to the logical ones") {
  Rng rng(67);
  HardwareGraph g = build_chimera({2, 2, 2, {}});
  int checked = 0;
  while (checked < 8) {
    int n = 2 + static_cast<int>(rng.next_below(3));
    LogicalProblem l = random_logical(rng, n, 0.6);
    for (int i = 0; i < n; ++i)
      l.set_bias(i, (rng.next_unit() + 0.2) * (rng.next_sign()));
    auto emb = greedy_embed(l, g, rng.next_u64(), 10);
    if (!emb) continue;
    std::size_t physical = 0;
    for (const auto& chain : emb->chains) physical += chain.size();
    if (physical > 16) continue;
    ++checked;

    // chain coupling from the per-member bound on the rescaled problem
    ParamConfig probe;
    probe.strategy = StrategyKind::Even;
    probe.chain_coupling = 1.0;
    probe.h_min = 0.0625;
    PhysicalProblem trial = parameterize(l, g, *emb, probe);
    double bound = 0.0;
    for (const auto& chain : emb->chains)
      for (int q : chain) {
        double sum = trial.biases.count(q) ? std::abs(trial.biases.at(q)) : 0.0;
        for (const auto& [edge, v] : trial.problem_couplings)
          if (edge.first == q || edge.second == q) sum += std::abs(v);
        bound = std::max(bound, sum);
      }
    ParamConfig cfg = probe;
    cfg.chain_coupling = bound + 1.0;
    PhysicalProblem p = parameterize(l, g, *emb, cfg);

    GroundStates phys = exact_ground_states(p);
    GroundStates logical = exact_ground_states(l);
    WeightTable w = compute_weights(l, g, *emb);
    std::set<SpinVector> decoded, expected(logical.states.begin(),
                                           logical.states.end());
    for (const auto& s : phys.states) {
      Rng tie(1);
      auto concert = decode_concert(s, *emb, w, tie);
      CHECK(concert[0].broken_chains.empty());
      CHECK(concert[0].values == concert[1].values);
      CHECK(concert[1].values == concert[2].values);
      decoded.insert(concert[0].values);
    }
    CHECK(decoded == expected);
  }
}
