#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/error.hpp"

namespace mlg::prosody {

struct Sample {
  double time = 0.0;
  std::optional<double> f0;  // nullopt = unvoiced
};

struct PitchTrack {
  std::vector<Sample> samples;
  std::string source;
  bool normalized = false;
  double scale_hz = 1.0;  // f0 * scale_hz is in Hz

  // Strictly increasing times, positive voiced f0.
  void validate() const;
  std::vector<double> times() const;
};

// Header `time_s,f0_hz`; 0 or empty f0 is unvoiced.
PitchTrack read_track_csv(std::string_view text, std::string source = {});
std::string write_track_csv(const PitchTrack& t);

// Window-`window` running median with edge replication, repeated until
// the signal no longer changes.
std::vector<double> median_filter(std::span<const double> x, int window);

struct PreprocessOptions {
  int window = 5;
  bool normalize = true;
};
// Drops leading/trailing unvoiced samples, bridges interior unvoiced runs
// linearly, median-filters, then divides by the voiced median.
PitchTrack preprocess(const PitchTrack& t, const PreprocessOptions& o = {});

struct RegressionFit {
  int degree = 1;
  std::vector<double> coefficients;  // lowest order first
  double rmse = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;

  double operator()(double t) const;
  double slope() const { return coefficients.at(1); }
};
// Least squares over the voiced samples.
RegressionFit fit_polynomial(const PitchTrack& t, int degree);

struct Span {
  double start = 0.0;
  double end = 0.0;
  double duration() const { return end - start; }
};

struct PauseSegmentation {
  std::vector<Span> pauses;
  std::vector<Span> units;
};
// A pause runs from the first sample of an unvoiced run to the next voiced
// sample (or the last sample) and counts when longer than `min_dur`.
PauseSegmentation detect_pauses(const PitchTrack& t, double min_dur = 0.200);

struct ResetParams {
  double head_s = 0.300;
  double tail_s = 0.300;
  double min_jump = 1.15;
};

struct ResetEvent {
  std::size_t unit_index = 0;  // unit that opens after the boundary
  double time = 0.0;
  double magnitude = 0.0;
};

struct ResetAnalysis {
  std::vector<ResetEvent> boundaries;  // every unit boundary
  std::vector<ResetEvent> events;      // magnitude >= min_jump
};
// magnitude = peak f0 in the next unit's head / mean f0 in the previous
// unit's tail.
ResetAnalysis detect_resets(const PitchTrack& t, const PauseSegmentation& seg,
                            const ResetParams& p = {});

struct Paratone {
  Span span;
  double onset_peak_hz = 0.0;
};
std::vector<Paratone> paratone_segment(const PitchTrack& t, const PauseSegmentation& seg,
                                       const ResetAnalysis& resets, double major_jump = 1.5,
                                       double head_s = 0.300);

enum class Interval { kMinorThird, kOther };
std::string to_string(Interval i);

struct ChantMeasurement {
  double level1 = 0.0;
  double level2 = 0.0;
  double ratio = 0.0;
  Interval classification = Interval::kOther;
};
inline constexpr double kMinorThird = 1.2;
ChantMeasurement chant_measure(double level1, double level2, double tolerance = 0.05);
// Levels are the mean voiced f0 (in Hz) over each span.
ChantMeasurement chant_measure(const PitchTrack& t, Span first, Span second,
                               double tolerance = 0.05);

enum class Polarity { kAbove, kBelow };
std::string to_string(Polarity p);

struct Accent {
  double time = 0.0;
  std::string label;
};

struct AccentResult {
  std::string label;
  double time = 0.0;
  double position = 0.0;  // time of the extremum
  Polarity polarity = Polarity::kAbove;
  double excursion = 0.0;  // f0 - fit at `position`; zero counts as above
  std::optional<std::string> error;
};
// The extremum is the voiced sample within +-window of the accent with the
// largest absolute deviation from the fit.
std::vector<AccentResult> accent_excursion(const PitchTrack& t, const RegressionFit& fit,
                                           std::span<const Accent> accents,
                                           double window = 0.050);
// `time_s,label` with a header line.
std::vector<Accent> read_accents_csv(std::string_view text);

// Synthetic broadcast-style track: ten interpausal units separated by
// nine pauses, declination within units and resets at the boundaries.
struct NewsFixture {
  PitchTrack track;
  std::vector<double> reset_magnitudes;  // per boundary, as constructed
  std::vector<std::size_t> reset_units;  // units opened by a reset >= 1.15
  std::vector<std::size_t> paratone_units;  // units opened by a reset >= 1.5
  double onset_peak_hz = 0.0;
};
NewsFixture news_fixture();

}  // namespace mlg::prosody
