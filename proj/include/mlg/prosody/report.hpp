#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mlg/prosody/prosody.hpp"

namespace mlg::prosody {

struct AnalysisOptions {
  PreprocessOptions preprocess;
  double min_pause = 0.200;
  ResetParams resets;
  double major_jump = 1.5;
  int accent_degree = 2;
  std::optional<std::pair<Span, Span>> chant_spans;
  double chant_tolerance = 0.05;
  std::vector<Accent> accents;
};

struct UnitFit {
  Span unit;
  RegressionFit fit;
};

struct Analysis {
  PitchTrack processed;
  RegressionFit linear;
  RegressionFit quadratic;
  std::vector<UnitFit> unit_fits;  // linear, units with >= 2 samples
  PauseSegmentation pauses;
  ResetAnalysis resets;
  std::vector<Paratone> paratones;
  std::optional<ChantMeasurement> chant;
  std::vector<AccentResult> accents;
};

// Pauses are read from the raw track; everything else from the
// preprocessed one.
Analysis analyze(const PitchTrack& raw, const AnalysisOptions& o = {});

// Sections: preprocess, fits, pauses, resets, paratones, chant, accents.
nlohmann::ordered_json to_json(const Analysis& a);
std::string to_text(const Analysis& a);
// Section name -> CSV document.
std::map<std::string, std::string> to_csv(const Analysis& a);

}  // namespace mlg::prosody
