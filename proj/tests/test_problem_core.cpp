#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "chainsmith/problem.hpp"
#include "chainsmith/rng.hpp"
#include "test_util.hpp"

using namespace chainsmith;
using namespace testutil;

TEST_CASE("energy of linear terms only") {
  LogicalProblem p;
  p.resize(2);
  p.set_bias(0, 1.0);
  p.set_bias(1, -1.0);
  CHECK(energy(p, SpinVector{-1, 1}) == doctest::Approx(-2.0));
}

TEST_CASE("energy of a single coupler") {
  LogicalProblem p;
  p.resize(2);
  p.add_coupling(0, 1, 1.0);
  CHECK(energy(p, SpinVector{1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("energy length mismatch throws") {
  LogicalProblem p;
  p.resize(3);
  CHECK_THROWS_AS(energy(p, SpinVector{1, 1}), std::invalid_argument);
  PhysicalProblem q;
  q.num_qubits = 4;
  CHECK_THROWS_AS(energy(q, SpinVector{1, 1}), std::invalid_argument);
}

TEST_CASE("random 4-spin minimum matches full enumeration oracle") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    LogicalProblem p = random_logical(rng, 4, 0.6);
    double lib_min = std::numeric_limits<double>::infinity();
    double oracle_min = std::numeric_limits<double>::infinity();
    for (const auto& s : all_states(4)) {
      lib_min = std::min(lib_min, energy(p, s));
      oracle_min = std::min(oracle_min, naive_energy(p, s));
    }
    CHECK(lib_min == doctest::Approx(oracle_min).epsilon(1e-12));
  }
}

TEST_CASE("rescale doubles a problem whose largest term is 0.5") {
  PhysicalProblem p;
  p.num_qubits = 2;
  p.add_bias(0, 0.5);
  p.add_bias(1, -0.25);
  p.set_chain_coupling(0, 1, -1.6);
  PhysicalProblem r = rescale_to_hardware(p);
  CHECK(r.scale == doctest::Approx(2.0));
  CHECK(r.biases.at(0) == doctest::Approx(1.0));
  CHECK(r.biases.at(1) == doctest::Approx(-0.5));
  CHECK(r.chain_couplings.at({0, 1}) == doctest::Approx(-1.6));  // untouched
  CHECK_FALSE(r.zero_problem);
}

TEST_CASE("rescale is the identity when the max term is already 1") {
  PhysicalProblem p;
  p.num_qubits = 2;
  p.add_bias(0, 1.0);
  p.add_problem_coupling(0, 1, -0.5);
  PhysicalProblem r = rescale_to_hardware(p);
  CHECK(r.scale == doctest::Approx(1.0));
  CHECK(r.biases.at(0) == doctest::Approx(1.0));
  CHECK(r.problem_couplings.at({0, 1}) == doctest::Approx(-0.5));
}

TEST_CASE("rescale of an all-zero problem is a flagged no-op") {
  PhysicalProblem p;
  p.num_qubits = 2;
  p.set_chain_coupling(0, 1, -2.0);
  PhysicalProblem r = rescale_to_hardware(p);
  CHECK(r.scale == doctest::Approx(1.0));
  CHECK(r.zero_problem);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("rescale preserves the argmin state set") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    PhysicalProblem p = random_physical(rng, 8);
    auto states = all_states(8);
    auto argmin_of = [&](const PhysicalProblem& q) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& s : states) best = std::min(best, energy(q, s));
      std::set<std::size_t> ids;
      for (std::size_t i = 0; i < states.size(); ++i)
        if (energy(q, states[i]) <= best + kEnergyTol) ids.insert(i);
      return ids;
    };
    // chain couplings scale too so the whole spectrum is scaled uniformly
    PhysicalProblem scaled = p;
    double worst = 0.0;
    for (auto& [q, v] : scaled.biases) worst = std::max(worst, std::abs(v));
    for (auto& [e, v] : scaled.problem_couplings)
      worst = std::max(worst, std::abs(v));
    if (worst == 0.0) continue;
    for (auto& [e, v] : scaled.chain_couplings) v /= worst;
    scaled = rescale_to_hardware(scaled);
    CHECK(argmin_of(p) == argmin_of(scaled));
  }
}

TEST_CASE("energy is linear in each bias term") {
  Rng rng(11);
  LogicalProblem p = random_logical(rng, 6, 0.5);
  p.set_bias(2, 0.7);
  LogicalProblem doubled = p;
  doubled.set_bias(2, 1.4);
  for (const auto& s : all_states(6)) {
    double delta = energy(doubled, s) - energy(p, s);
    CHECK(delta == doctest::Approx(0.7 * s[2]).epsilon(1e-12));
  }
}

TEST_CASE("matrix view round-trip is lossless") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    PhysicalProblem p = random_physical(rng, 10);
    std::set<Edge> chain_edges;
    for (const auto& [e, v] : p.chain_couplings) chain_edges.insert(e);
    PhysicalProblem q = from_matrix(to_matrix(p), chain_edges, p.scale);
    CHECK(q.biases == p.biases);
    CHECK(q.problem_couplings == p.problem_couplings);
    CHECK(q.chain_couplings == p.chain_couplings);
    CHECK(q.scale == p.scale);
  }
}

TEST_CASE("validate_embedding accepts 1-qubit chains on a matching triangle") {
  LogicalProblem l;
  l.resize(3);
  l.add_coupling(0, 1, 1.0);
  l.add_coupling(1, 2, 1.0);
  l.add_coupling(0, 2, 1.0);
  HardwareGraph g;
  g.num_qubits = 3;
  g.active = {1, 1, 1};
  g.edges = {{0, 1}, {0, 2}, {1, 2}};
  Embedding e;
  e.chains = {{0}, {1}, {2}};
  CHECK(validate_embedding(l, g, e).valid());
}

TEST_CASE("validate_embedding flags a disconnected chain") {
  LogicalProblem l;
  l.resize(1);
  HardwareGraph g;
  g.num_qubits = 6;
  g.active.assign(6, 1);
  g.edges = {{0, 1}, {1, 2}, {4, 5}};
  Embedding e;
  e.chains = {{0, 5}};
  auto rep = validate_embedding(l, g, e);
  REQUIRE_FALSE(rep.valid());
  CHECK(rep.summary().find("disconnected chain") != std::string::npos);
}

TEST_CASE("validate_embedding flags overlap, inactive qubits and missing couplers") {
  LogicalProblem l;
  l.resize(2);
  l.add_coupling(0, 1, 1.0);
  HardwareGraph g;
  g.num_qubits = 4;
  g.active = {1, 1, 1, 0};
  g.edges = {{0, 1}, {1, 2}};

  Embedding overlap;
  overlap.chains = {{0}, {0}};
  CHECK(validate_embedding(l, g, overlap).summary().find("overlapping") !=
        std::string::npos);

  Embedding inactive;
  inactive.chains = {{0}, {3}};
  CHECK(validate_embedding(l, g, inactive).summary().find("inactive") !=
        std::string::npos);

  Embedding uncoupled;
  uncoupled.chains = {{0}, {2}};
  CHECK(validate_embedding(l, g, uncoupled).summary().find("no physical coupler") !=
        std::string::npos);
}
