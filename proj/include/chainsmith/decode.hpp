#pragma once

#include <array>
#include <string>
#include <vector>

#include "chainsmith/paramset.hpp"
#include "chainsmith/problem.hpp"
#include "chainsmith/rng.hpp"

namespace chainsmith {

enum class DecoderKind { SingleQubit, MajorityVote, WeightedMajority };

std::string to_string(DecoderKind k);

struct DecodedSample {
  SpinVector values;               // logical assignment, length n
  std::vector<int> broken_chains;  // logical indices whose members disagree
  DecoderKind decoder = DecoderKind::SingleQubit;
  int tie_count = 0;
};

// Value of the highest-weight chain member (ties -> first member). Never
// indeterminate.
DecodedSample decode_single(const SpinVector& s, const Embedding& e,
                            const WeightTable& w);

// v_i = sign(sum_k s_{i,k}); exact ties are resolved by a draw from the
// caller's seeded stream.
DecodedSample decode_majority(const SpinVector& s, const Embedding& e,
                              Rng& rng);

// v_i = sign(sum_k w_{i,k} s_{i,k}) with the same random tie rule at |sum|
// below 1e-12.
DecodedSample decode_weighted_majority(const SpinVector& s, const Embedding& e,
                                       const WeightTable& w, Rng& rng);

// All three decodings of one readout, in the order single / majority /
// weighted majority (the order in which tie draws are consumed).
std::array<DecodedSample, 3> decode_concert(const SpinVector& s,
                                            const Embedding& e,
                                            const WeightTable& w, Rng& rng);

enum class ConcertPolicy { Any, MajorityOnly };

std::string to_string(ConcertPolicy p);
ConcertPolicy concert_policy_from_string(const std::string& name);

}  // namespace chainsmith
