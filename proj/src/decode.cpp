#include "chainsmith/decode.hpp"

#include <cmath>
#include <stdexcept>

namespace chainsmith {

std::string to_string(DecoderKind k) {
  switch (k) {
    case DecoderKind::SingleQubit: return "single_qubit";
    case DecoderKind::MajorityVote: return "majority_vote";
    case DecoderKind::WeightedMajority: return "weighted_majority";
  }
  throw std::logic_error("unknown decoder");
}

std::string to_string(ConcertPolicy p) {
  return p == ConcertPolicy::Any ? "any" : "majority-only";
}

ConcertPolicy concert_policy_from_string(const std::string& name) {
  if (name == "any") return ConcertPolicy::Any;
  if (name == "majority-only") return ConcertPolicy::MajorityOnly;
  throw std::invalid_argument("unknown concert policy '" + name + "'");
}

namespace {

void check_readout(const SpinVector& s, const Embedding& e) {
  for (const auto& chain : e.chains)
    for (int q : chain)
      if (q < 0 || static_cast<std::size_t>(q) >= s.size())
        throw std::invalid_argument("decode: readout shorter than embedding");
}

void mark_broken(DecodedSample& out, const SpinVector& s, const Embedding& e) {
  for (int i = 0; i < e.num_logical(); ++i) {
    const auto& chain = e.chains[static_cast<std::size_t>(i)];
    for (std::size_t k = 1; k < chain.size(); ++k)
      if (s[static_cast<std::size_t>(chain[k])] !=
          s[static_cast<std::size_t>(chain[0])]) {
        out.broken_chains.push_back(i);
        break;
      }
  }
}

}  // namespace

DecodedSample decode_single(const SpinVector& s, const Embedding& e,
                            const WeightTable& w) {
  check_readout(s, e);
  DecodedSample out;
  out.decoder = DecoderKind::SingleQubit;
  out.values.resize(static_cast<std::size_t>(e.num_logical()));
  for (int i = 0; i < e.num_logical(); ++i) {
    const auto& chain = e.chains[static_cast<std::size_t>(i)];
    const auto& wi = w.w[static_cast<std::size_t>(i)];
    std::size_t best = 0;
    for (std::size_t k = 1; k < chain.size(); ++k)
      if (wi[k] > wi[best]) best = k;
    out.values[static_cast<std::size_t>(i)] =
        s[static_cast<std::size_t>(chain[best])];
  }
  mark_broken(out, s, e);
  return out;
}

DecodedSample decode_majority(const SpinVector& s, const Embedding& e,
                              Rng& rng) {
  check_readout(s, e);
  DecodedSample out;
  out.decoder = DecoderKind::MajorityVote;
  out.values.resize(static_cast<std::size_t>(e.num_logical()));
  for (int i = 0; i < e.num_logical(); ++i) {
    int sum = 0;
    for (int q : e.chains[static_cast<std::size_t>(i)])
      sum += s[static_cast<std::size_t>(q)];
    std::int8_t v;
    if (sum == 0) {
      v = static_cast<std::int8_t>(rng.next_sign());
      ++out.tie_count;
    } else {
      v = sum > 0 ? 1 : -1;
    }
    out.values[static_cast<std::size_t>(i)] = v;
  }
  mark_broken(out, s, e);
  return out;
}

DecodedSample decode_weighted_majority(const SpinVector& s, const Embedding& e,
                                       const WeightTable& w, Rng& rng) {
  check_readout(s, e);
  DecodedSample out;
  out.decoder = DecoderKind::WeightedMajority;
  out.values.resize(static_cast<std::size_t>(e.num_logical()));
  for (int i = 0; i < e.num_logical(); ++i) {
    const auto& chain = e.chains[static_cast<std::size_t>(i)];
    const auto& wi = w.w[static_cast<std::size_t>(i)];
    double sum = 0.0;
    for (std::size_t k = 0; k < chain.size(); ++k)
      sum += wi[k] * s[static_cast<std::size_t>(chain[k])];
    std::int8_t v;
    if (std::abs(sum) < 1e-12) {
      v = static_cast<std::int8_t>(rng.next_sign());
      ++out.tie_count;
    } else {
      v = sum > 0 ? 1 : -1;
    }
    out.values[static_cast<std::size_t>(i)] = v;
  }
  mark_broken(out, s, e);
  return out;
}

std::array<DecodedSample, 3> decode_concert(const SpinVector& s,
                                            const Embedding& e,
                                            const WeightTable& w, Rng& rng) {
  return {decode_single(s, e, w), decode_majority(s, e, rng),
          decode_weighted_majority(s, e, w, rng)};
}

}  // namespace chainsmith
