#include "chainsmith/annealer.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chainsmith/rng.hpp"

namespace chainsmith {

IsingTerms flatten(const LogicalProblem& p) {
  IsingTerms t;
  t.n = p.n;
  t.full_size = p.n;
  t.offset = p.offset;
  t.bias = p.h;
  t.adj.resize(static_cast<std::size_t>(p.n));
  t.support.resize(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i) t.support[static_cast<std::size_t>(i)] = i;
  for (const auto& [e, j] : p.couplings) {
    if (j == 0.0) continue;
    t.pairs.emplace_back(e.first, e.second, j);
    t.adj[static_cast<std::size_t>(e.first)].emplace_back(e.second, j);
    t.adj[static_cast<std::size_t>(e.second)].emplace_back(e.first, j);
  }
  return t;
}

IsingTerms flatten(const PhysicalProblem& p) {
  IsingTerms t;
  t.support = p.support();
  t.n = static_cast<int>(t.support.size());
  t.full_size = p.num_qubits;
  t.offset = 0.0;
  t.bias.assign(static_cast<std::size_t>(t.n), 0.0);
  t.adj.resize(static_cast<std::size_t>(t.n));
  std::vector<int> index(static_cast<std::size_t>(p.num_qubits), -1);
  for (int i = 0; i < t.n; ++i)
    index[static_cast<std::size_t>(t.support[static_cast<std::size_t>(i)])] = i;
  for (const auto& [q, v] : p.biases)
    if (v != 0.0) t.bias[static_cast<std::size_t>(index[static_cast<std::size_t>(q)])] = v;
  auto add_pairs = [&](const std::map<Edge, double>& m) {
    for (const auto& [e, j] : m) {
      if (j == 0.0) continue;
      int a = index[static_cast<std::size_t>(e.first)];
      int b = index[static_cast<std::size_t>(e.second)];
      t.pairs.emplace_back(a, b, j);
      t.adj[static_cast<std::size_t>(a)].emplace_back(b, j);
      t.adj[static_cast<std::size_t>(b)].emplace_back(a, j);
    }
  };
  add_pairs(p.problem_couplings);
  add_pairs(p.chain_couplings);
  return t;
}

double terms_energy(const IsingTerms& t, const std::vector<std::int8_t>& s) {
  double e = t.offset;
  for (int i = 0; i < t.n; ++i)
    e += t.bias[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
  for (const auto& [a, b, j] : t.pairs)
    e += j * s[static_cast<std::size_t>(a)] * s[static_cast<std::size_t>(b)];
  return e;
}

SpinVector expand(const IsingTerms& t, const std::vector<std::int8_t>& s) {
  SpinVector full(static_cast<std::size_t>(t.full_size), 1);
  for (int i = 0; i < t.n; ++i)
    full[static_cast<std::size_t>(t.support[static_cast<std::size_t>(i)])] =
        s[static_cast<std::size_t>(i)];
  return full;
}

namespace detail {

namespace {

std::vector<std::int8_t> spins_of_code(std::uint64_t code, int n) {
  std::vector<std::int8_t> s(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b)
    s[static_cast<std::size_t>(b)] = (code >> b) & 1u ? 1 : -1;
  return s;
}

// Chunks have a fixed size so every state's energy is accumulated from the
// same anchor no matter how many threads run; within a chunk the drift of
// the delta walk stays orders of magnitude below kEnergyTol.
constexpr std::uint64_t kChunkStates = 1u << 14;
constexpr std::size_t kMaxGroundStates = 1u << 22;

}  // namespace

GroundStates exact_ground_states_terms(const IsingTerms& t) {
  if (t.n > 30)
    throw std::invalid_argument(
        "exact_ground_states: more than 30 programmed qubits");
  GroundStates out;
  if (t.n == 0) {
    out.states.push_back(expand(t, {}));
    out.energy = t.offset;
    return out;
  }
  const std::uint64_t num_states = 1ULL << t.n;
  const std::uint64_t num_chunks = (num_states + kChunkStates - 1) / kChunkStates;

  auto walk_chunk = [&](std::uint64_t chunk, auto&& visit) {
    const std::uint64_t begin = chunk * kChunkStates;
    const std::uint64_t end = std::min(begin + kChunkStates, num_states);
    std::uint64_t code = begin ^ (begin >> 1);  // Gray code of the anchor
    auto spins = spins_of_code(code, t.n);
    double e = terms_energy(t, spins);
    visit(code, e);
    for (std::uint64_t m = begin + 1; m < end; ++m) {
      int b = std::countr_zero(m);
      double field = t.bias[static_cast<std::size_t>(b)];
      for (const auto& [o, j] : t.adj[static_cast<std::size_t>(b)])
        field += j * spins[static_cast<std::size_t>(o)];
      e -= 2.0 * spins[static_cast<std::size_t>(b)] * field;
      spins[static_cast<std::size_t>(b)] =
          static_cast<std::int8_t>(-spins[static_cast<std::size_t>(b)]);
      code ^= 1ULL << b;
      visit(code, e);
    }
  };

  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    double local = std::numeric_limits<double>::infinity();
#pragma omp for schedule(dynamic)
    for (std::int64_t chunk = 0; chunk < static_cast<std::int64_t>(num_chunks); ++chunk)
      walk_chunk(static_cast<std::uint64_t>(chunk),
                 [&](std::uint64_t, double e) { local = std::min(local, e); });
#pragma omp critical
    best = std::min(best, local);
  }

  std::vector<std::vector<std::uint64_t>> hits(num_chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t chunk = 0; chunk < static_cast<std::int64_t>(num_chunks); ++chunk)
    walk_chunk(static_cast<std::uint64_t>(chunk),
               [&](std::uint64_t code, double e) {
                 if (e <= best + kEnergyTol)
                   hits[static_cast<std::size_t>(chunk)].push_back(code);
               });

  std::size_t total = 0;
  for (const auto& h : hits) total += h.size();
  if (total > kMaxGroundStates)
    throw std::runtime_error("exact_ground_states: degenerate ground set too large");

  out.states.reserve(total);
  double exact_best = std::numeric_limits<double>::infinity();
  for (const auto& h : hits)
    for (std::uint64_t code : h) {
      auto spins = spins_of_code(code, t.n);
      exact_best = std::min(exact_best, terms_energy(t, spins));
      out.states.push_back(expand(t, spins));
    }
  std::sort(out.states.begin(), out.states.end());
  out.energy = exact_best;
  return out;
}

SampleSet sample_sa_terms(const IsingTerms& t, const SaSchedule& sched,
                          std::uint64_t seed, const SpinVector* init,
                          bool parallel) {
  if (sched.sweeps < 1 || sched.reads < 1)
    throw std::invalid_argument("sample_sa: sweeps and reads must be >= 1");
  if (!(sched.beta_end > sched.beta_start) || sched.beta_start <= 0)
    throw std::invalid_argument("sample_sa: need beta_end > beta_start > 0");
  if (init && init->size() != static_cast<std::size_t>(t.full_size))
    throw std::invalid_argument("sample_sa: initial state length mismatch");

  std::vector<double> betas(static_cast<std::size_t>(sched.sweeps));
  for (int sw = 0; sw < sched.sweeps; ++sw)
    betas[static_cast<std::size_t>(sw)] =
        sched.sweeps == 1
            ? sched.beta_end
            : sched.beta_start *
                  std::pow(sched.beta_end / sched.beta_start,
                           static_cast<double>(sw) /
                               static_cast<double>(sched.sweeps - 1));

  SampleSet set;
  set.provenance.backend = "sa";
  set.provenance.seed = seed;
  set.provenance.schedule = sched;
  set.provenance.has_schedule = true;
  set.reads.resize(static_cast<std::size_t>(sched.reads));

  auto run_read = [&](int r) {
    Rng rng(derive_seed(seed, "read", static_cast<std::uint64_t>(r)));
    std::vector<std::int8_t> spins(static_cast<std::size_t>(t.n));
    if (init) {
      for (int i = 0; i < t.n; ++i)
        spins[static_cast<std::size_t>(i)] =
            (*init)[static_cast<std::size_t>(t.support[static_cast<std::size_t>(i)])];
    } else {
      for (int i = 0; i < t.n; ++i)
        spins[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(rng.next_sign());
    }
    for (int sw = 0; sw < sched.sweeps; ++sw) {
      double beta = betas[static_cast<std::size_t>(sw)];
      for (int b = 0; b < t.n; ++b) {
        double field = t.bias[static_cast<std::size_t>(b)];
        for (const auto& [o, j] : t.adj[static_cast<std::size_t>(b)])
          field += j * spins[static_cast<std::size_t>(o)];
        double delta = -2.0 * spins[static_cast<std::size_t>(b)] * field;
        // Zero-cost moves are taken with probability 1/2: under the fixed
        // sweep order, always accepting them lets domain walls translate in
        // lock-step and never annihilate. Detailed balance is unaffected.
        bool accept;
        if (delta < 0.0)
          accept = true;
        else if (delta == 0.0)
          accept = rng.next_unit() < 0.5;
        else
          accept = rng.next_unit() < std::exp(-beta * delta);
        if (accept)
          spins[static_cast<std::size_t>(b)] =
              static_cast<std::int8_t>(-spins[static_cast<std::size_t>(b)]);
      }
    }
    Read read;
    read.state = expand(t, spins);
    read.multiplicity = 1;
    read.energy = terms_energy(t, spins);
    set.reads[static_cast<std::size_t>(r)] = std::move(read);
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < sched.reads; ++r) run_read(r);
  } else {
    for (int r = 0; r < sched.reads; ++r) run_read(r);
  }
  return set;
}

}  // namespace detail

GroundStates exact_ground_states(const PhysicalProblem& p) {
  return detail::exact_ground_states_terms(flatten(p));
}

GroundStates exact_ground_states(const LogicalProblem& p) {
  return detail::exact_ground_states_terms(flatten(p));
}

SampleSet sample_sa(const PhysicalProblem& p, const SaSchedule& sched,
                    std::uint64_t seed, const SpinVector* init) {
  return detail::sample_sa_terms(flatten(p), sched, seed, init, true);
}

std::string to_string(BackendKind k) {
  return k == BackendKind::Exact ? "exact" : "sa";
}

BackendKind backend_from_string(const std::string& name) {
  if (name == "exact") return BackendKind::Exact;
  if (name == "sa") return BackendKind::Sa;
  throw std::invalid_argument("unknown backend '" + name + "'");
}

SampleSet sample(const PhysicalProblem& p, const BackendConfig& cfg) {
  if (cfg.reads < 1) throw std::invalid_argument("sample: reads must be >= 1");
  if (cfg.kind == BackendKind::Sa) {
    SaSchedule sched = cfg.schedule;
    sched.reads = cfg.reads;
    return sample_sa(p, sched, cfg.seed);
  }
  GroundStates gs = exact_ground_states(p);
  SampleSet set;
  set.provenance.backend = "exact";
  set.provenance.seed = cfg.seed;
  std::size_t g = gs.states.size();
  std::size_t base = static_cast<std::size_t>(cfg.reads) / g;
  std::size_t extra = static_cast<std::size_t>(cfg.reads) % g;
  for (std::size_t i = 0; i < g; ++i) {
    std::size_t mult = base + (i < extra ? 1 : 0);
    if (mult == 0) continue;
    Read read;
    read.state = gs.states[i];
    read.multiplicity = static_cast<int>(mult);
    read.energy = energy(p, gs.states[i]);
    set.reads.push_back(std::move(read));
  }
  return set;
}

}  // namespace chainsmith
