#include "mlg/tone/tone.hpp"

#include <cstdio>
#include <sstream>

#include "mlg/fsa/algorithms.hpp"

namespace mlg::tone {
namespace {

std::vector<std::string> split(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

Allotone faithful_of(Tone t) { return t == Tone::kH ? Allotone::kHigh : Allotone::kLow; }

void require_plain(const ToneString& t) {
  if (t.empty()) throw DomainError("EMPTY_INPUT", "empty tone string");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == Tone::kDownstepH)
      throw DomainError("DOWNSTEP", "downstepped H at position " + std::to_string(i) +
                                        "; expand floating tones first");
}

}  // namespace

ToneString parse_tones(std::string_view text) {
  ToneString out;
  for (const auto& tok : split(text)) {
    if (tok == "H")
      out.push_back(Tone::kH);
    else if (tok == "L")
      out.push_back(Tone::kL);
    else if (tok == "!H" || tok == "↓H")
      out.push_back(Tone::kDownstepH);
    else
      throw ParseError(1, "unknown tone '" + tok + "'");
  }
  return out;
}

AllotoneString parse_allotones(std::string_view text) {
  AllotoneString out;
  for (const auto& tok : split(text)) {
    if (tok == "h")
      out.push_back(Allotone::kHigh);
    else if (tok == "l")
      out.push_back(Allotone::kLow);
    else
      throw ParseError(1, "unknown allotone '" + tok + "'");
  }
  return out;
}

std::string to_string(const ToneString& t) {
  std::string out;
  for (Tone x : t) {
    if (!out.empty()) out += ' ';
    out += x == Tone::kH ? "H" : x == Tone::kL ? "L" : "!H";
  }
  return out;
}

std::string to_string(const AllotoneString& a) {
  std::string out;
  for (Allotone x : a) {
    if (!out.empty()) out += ' ';
    out += x == Allotone::kHigh ? "h" : "l";
  }
  return out;
}

fsa::Transducer tem_transducer() {
  fsa::Transducer t;
  const auto init = t.add_state("INIT");
  const auto sh = t.add_state("S_H");
  const auto sl = t.add_state("S_L");
  t.set_initial(init);
  t.set_final(sh);
  t.set_final(sl);
  const fsa::Symbol H("H"), L("L"), h("h"), l("l");
  t.add_transition(init, H, h, sh);
  t.add_transition(init, L, l, sl);
  t.add_transition(sh, H, h, sh);
  t.add_transition(sl, L, l, sl);
  t.add_transition(sh, L, h, sl);
  t.add_transition(sl, H, l, sh);
  return t;
}

AllotoneString tem_apply(const ToneString& t, std::span<const std::size_t> faithful) {
  require_plain(t);
  static const fsa::Transducer kTem = tem_transducer();
  fsa::Word input;
  for (Tone x : t) input.emplace_back(x == Tone::kH ? "H" : "L");
  const auto result = fsa::transduce(kTem, input);
  if (result.outputs.size() != 1) throw DomainError("TRANSDUCER", "expected a single path");

  AllotoneString out;
  for (const auto& s : result.outputs.front())
    out.push_back(s.text() == "h" ? Allotone::kHigh : Allotone::kLow);
  if (faithful.empty()) {
    out.back() = faithful_of(t.back());
  } else {
    for (std::size_t i : faithful) {
      if (i >= t.size())
        throw DomainError("faithful position " + std::to_string(i) + " out of range");
      out[i] = faithful_of(t[i]);
    }
  }
  return out;
}

AllotoneString tem_rules_apply(const ToneString& t) {
  require_plain(t);
  AllotoneString out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i == 0 || i + 1 == t.size())
      out.push_back(faithful_of(t[i]));
    else
      out.push_back(t[i - 1] == Tone::kH ? Allotone::kHigh : Allotone::kLow);
  }
  return out;
}

Expansion expand_floating(const ToneString& t) {
  Expansion e;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != Tone::kDownstepH) {
      e.tones.push_back(t[i]);
      e.silent.push_back(false);
      continue;
    }
    if (i == 0) throw DomainError("DOWNSTEP", "downstepped H cannot be string-initial");
    e.tones.push_back(Tone::kL);
    e.silent.push_back(true);
    e.tones.push_back(Tone::kH);
    e.silent.push_back(false);
  }
  return e;
}

std::string to_string(const Expansion& e) {
  std::string out;
  for (std::size_t i = 0; i < e.tones.size(); ++i) {
    if (i) out += ' ';
    const std::string tone = e.tones[i] == Tone::kH ? "H" : "L";
    out += e.silent[i] ? "(" + tone + ")" : tone;
  }
  return out;
}

std::vector<double> synthesize_targets(const AllotoneString& a, const SynthesisParams& p) {
  if (!(p.l0 > 0.0) || !(p.h0 > p.l0))
    throw DomainError("PARAMS", "require h0 > l0 > 0");
  if (!(p.step > 0.0) || p.step > 1.0) throw DomainError("PARAMS", "require 0 < step <= 1");
  std::vector<double> out;
  double reg = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0 && a[i - 1] == Allotone::kLow && a[i] == Allotone::kHigh) reg *= p.step;
    out.push_back((a[i] == Allotone::kHigh ? p.h0 : p.l0) * reg);
  }
  return out;
}

std::string targets_csv(const std::vector<double>& targets) {
  std::string out = "index,f0_hz\n";
  char buf[64];
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.6f\n", i, targets[i]);
    out += buf;
  }
  return out;
}

}  // namespace mlg::tone
