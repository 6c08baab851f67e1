#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/fsa/automaton.hpp"

namespace mlg::tone {

// Lexical tones; kDownstepH is written `↓H` (ASCII `!H`).
enum class Tone { kH, kL, kDownstepH };
// Phonetic allotones h and l.
enum class Allotone { kHigh, kLow };

using ToneString = std::vector<Tone>;
using AllotoneString = std::vector<Allotone>;

ToneString parse_tones(std::string_view text);
AllotoneString parse_allotones(std::string_view text);
std::string to_string(const ToneString& t);
std::string to_string(const AllotoneString& a);

// States INIT, S_H and S_L; S_H and S_L final.
fsa::Transducer tem_transducer();

// Runs the transducer and keeps the tones at `faithful` positions faithful
// (H -> h, L -> l). An empty span means the final position only.
AllotoneString tem_apply(const ToneString& t, std::span<const std::size_t> faithful = {});

// H -> h / H _, L -> h / H _, L -> l / L _, H -> l / L _ on every tone that
// is neither initial nor final; the context is the preceding lexical tone.
AllotoneString tem_rules_apply(const ToneString& t);

struct Expansion {
  ToneString tones;
  std::vector<bool> silent;  // inserted floating L
};
// Each ↓H becomes a silent L followed by H.
Expansion expand_floating(const ToneString& t);
std::string to_string(const Expansion& e);

struct SynthesisParams {
  double h0 = 200.0;
  double l0 = 150.0;
  double step = 0.9;
};
// Level targets per allotone. The register starts at 1 and is multiplied
// by `step` at every l-to-h boundary; h maps to h0 * register, l to
// l0 * register.
std::vector<double> synthesize_targets(const AllotoneString& a, const SynthesisParams& p = {});
// `index,f0_hz`, one line per target after a header.
std::string targets_csv(const std::vector<double>& targets);

}  // namespace mlg::tone
