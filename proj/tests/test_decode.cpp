#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "chainsmith/decode.hpp"
#include "test_util.hpp"

using namespace chainsmith;
using namespace testutil;

namespace {

WeightTable table_for(const std::vector<std::vector<double>>& w) {
  WeightTable t;
  t.w = w;
  for (const auto& wi : w) {
    t.d.emplace_back(wi.size(), 0);
    t.total.push_back(0);
  }
  return t;
}

}  // namespace

TEST_CASE("single-qubit decoding picks the heaviest member") {
  Embedding e;
  e.chains = {{0, 1}};
  auto w = table_for({{0.75, 0.25}});
  DecodedSample d = decode_single(SpinVector{1, -1}, e, w);
  CHECK(d.values == SpinVector{1});
  CHECK(d.broken_chains == std::vector<int>{0});
  CHECK(d.tie_count == 0);
}

TEST_CASE("a 1-qubit chain decodes to its own value") {
  Embedding e;
  e.chains = {{0}};
  auto w = table_for({{1.0}});
  CHECK(decode_single(SpinVector{-1}, e, w).values == SpinVector{-1});
}

TEST_CASE("majority vote follows the sign of the sum") {
  Embedding e;
  e.chains = {{0, 1, 2}};
  Rng rng(0);
  DecodedSample d = decode_majority(SpinVector{1, 1, -1}, e, rng);
  CHECK(d.values == SpinVector{1});
  CHECK(d.broken_chains == std::vector<int>{0});
}

TEST_CASE("an unbroken chain decodes to its value with no broken set") {
  Embedding e;
  e.chains = {{0, 1, 2}};
  Rng rng(0);
  DecodedSample d = decode_majority(SpinVector{-1, -1, -1}, e, rng);
  CHECK(d.values == SpinVector{-1});
  CHECK(d.broken_chains.empty());
  CHECK(d.tie_count == 0);
}

TEST_CASE("majority ties are uniform over the seeded stream") {
  Embedding e;
  e.chains = {{0, 1}};
  int plus = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(99, "tie", static_cast<std::uint64_t>(t)));
    DecodedSample d = decode_majority(SpinVector{1, -1}, e, rng);
    CHECK(d.tie_count == 1);
    if (d.values[0] > 0) ++plus;
  }
  double freq = static_cast<double>(plus) / trials;
  CHECK(freq > 0.45);
  CHECK(freq < 0.55);
}

TEST_CASE("weighted majority follows the weighted sign") {
  Embedding e;
  e.chains = {{0, 1}};
  auto w = table_for({{0.75, 0.25}});
  Rng rng(0);
  DecodedSample d = decode_weighted_majority(SpinVector{-1, 1}, e, w, rng);
  CHECK(d.values == SpinVector{-1});
}

TEST_CASE("uniform weights make weighted majority equal majority") {
  Embedding e;
  e.chains = {{0, 1, 2}, {3, 4}};
  auto w = table_for({{1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.5}});
  Rng rng(5);
  for (const auto& s : all_states(5)) {
    Rng r1(derive_seed(1, "a", rng.next_u64()));
    Rng r2 = r1;
    DecodedSample dm = decode_majority(s, e, r1);
    DecodedSample dw = decode_weighted_majority(s, e, w, r2);
    CHECK(dm.values == dw.values);
  }
}

TEST_CASE("single equals weighted majority when one weight dominates a pair") {
  Embedding e;
  e.chains = {{0, 1}};
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    double heavy = 0.55 + 0.45 * rng.next_unit();
    auto w = table_for({{heavy, 1.0 - heavy}});
    for (const auto& s : all_states(2)) {
      Rng tie(0);
      CHECK(decode_single(s, e, w).values ==
            decode_weighted_majority(s, e, w, tie).values);
    }
  }
}

TEST_CASE("majority is invariant under chain member permutation") {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    Embedding e;
    e.chains = {{0, 1, 2, 3, 4}};
    SpinVector s(5);
    for (auto& v : s) v = static_cast<std::int8_t>(rng.next_sign());
    Rng r1(7), r2(7);
    DecodedSample base = decode_majority(s, e, r1);
    Embedding shuffled = e;
    for (std::size_t i = 5; i > 1; --i)
      std::swap(shuffled.chains[0][i - 1], shuffled.chains[0][rng.next_below(i)]);
    DecodedSample perm = decode_majority(s, shuffled, r2);
    CHECK(base.values == perm.values);
  }
}

TEST_CASE("weighted majority is invariant under joint permutation") {
  Rng rng(13);
  Embedding e;
  e.chains = {{0, 1, 2, 3}};
  std::vector<double> w = {0.4, 0.3, 0.2, 0.1};
  for (int t = 0; t < 30; ++t) {
    SpinVector s(4);
    for (auto& v : s) v = static_cast<std::int8_t>(rng.next_sign());
    Rng r1(7), r2(7);
    DecodedSample base = decode_weighted_majority(s, e, table_for({w}), r1);
    std::vector<std::size_t> perm = {0, 1, 2, 3};
    for (std::size_t i = 4; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.next_below(i)]);
    Embedding pe;
    pe.chains = {{}};
    std::vector<double> pw;
    for (std::size_t i : perm) {
      pe.chains[0].push_back(e.chains[0][i]);
      pw.push_back(w[i]);
    }
    DecodedSample permuted = decode_weighted_majority(s, pe, table_for({pw}), r2);
    CHECK(base.values == permuted.values);
  }
}

TEST_CASE("concert returns three identical decodings on unbroken readouts") {
  Embedding e;
  e.chains = {{0, 1}, {2}};
  auto w = table_for({{0.5, 0.5}, {1.0}});
  Rng rng(1);
  auto concert = decode_concert(SpinVector{1, 1, -1}, e, w, rng);
  CHECK(concert[0].decoder == DecoderKind::SingleQubit);
  CHECK(concert[1].decoder == DecoderKind::MajorityVote);
  CHECK(concert[2].decoder == DecoderKind::WeightedMajority);
  CHECK(concert[0].values == concert[1].values);
  CHECK(concert[1].values == concert[2].values);
  CHECK(concert[0].values == SpinVector{1, -1});
}

TEST_CASE("a fabricated broken chain can split the concert decisions") {
  Embedding e;
  e.chains = {{0, 1, 2}};
  auto w = table_for({{0.1, 0.2, 0.7}});
  Rng rng(2);
  // majority says +1, the dominant member says -1
  auto concert = decode_concert(SpinVector{1, 1, -1}, e, w, rng);
  CHECK(concert[0].values == SpinVector{-1});
  CHECK(concert[1].values == SpinVector{1});
  CHECK(concert[2].values == SpinVector{-1});
}

TEST_CASE("identical readout and seed reproduce identical tie-breaks") {
  Embedding e;
  e.chains = {{0, 1}, {2, 3}};
  auto w = table_for({{0.5, 0.5}, {0.5, 0.5}});
  SpinVector s{1, -1, -1, 1};
  Rng r1(123), r2(123);
  auto a = decode_concert(s, e, w, r1);
  auto b = decode_concert(s, e, w, r2);
  for (int k = 0; k < 3; ++k) {
    CHECK(a[k].values == b[k].values);
    CHECK(a[k].tie_count == b[k].tie_count);
  }
}

TEST_CASE("decoding rejects short readouts") {
  Embedding e;
  e.chains = {{0, 3}};
  auto w = table_for({{0.5, 0.5}});
  Rng rng(0);
  CHECK_THROWS_AS(decode_single(SpinVector{1, 1}, e, w), std::invalid_argument);
  CHECK_THROWS_AS(decode_majority(SpinVector{1}, e, rng), std::invalid_argument);
}
