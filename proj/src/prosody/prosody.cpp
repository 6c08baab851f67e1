#include "mlg/prosody/prosody.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mlg::prosody {
namespace {

constexpr double kEps = 1e-9;

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + static_cast<long>(n / 2), v.end());
  const double upper = v[n / 2];
  if (n % 2) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<long>(n / 2));
  return 0.5 * (lower + upper);
}

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

double parse_double(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad number '" + text + "'");
  }
}

// Voiced samples with time in [a, b), or [a, b] when `closed`.
std::vector<double> window_values(const PitchTrack& t, double a, double b, bool closed) {
  std::vector<double> out;
  for (const auto& s : t.samples) {
    if (!s.f0 || s.time < a - kEps) continue;
    if (closed ? s.time > b + kEps : s.time >= b - kEps) continue;
    out.push_back(*s.f0);
  }
  return out;
}

bool is_track_end(const PitchTrack& t, double time) {
  return !t.samples.empty() && std::abs(t.samples.back().time - time) < kEps;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void PitchTrack::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].time))
      throw ValidationError("sample " + std::to_string(i) + ": time is not finite");
    if (i && !(samples[i].time > samples[i - 1].time))
      throw ValidationError("sample " + std::to_string(i) + ": times must increase strictly");
    if (samples[i].f0 && !(*samples[i].f0 > 0.0 && std::isfinite(*samples[i].f0)))
      throw ValidationError("sample " + std::to_string(i) + ": voiced f0 must be positive");
  }
}

std::vector<double> PitchTrack::times() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.time);
  return out;
}

PitchTrack read_track_csv(std::string_view text, std::string source) {
  PitchTrack t;
  t.source = std::move(source);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "time_s,f0_hz") throw ParseError(number, "expected header 'time_s,f0_hz'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(number, "expected 'time,f0'");
    Sample s;
    s.time = parse_double(trim(line.substr(0, comma)), number);
    const std::string f0 = trim(line.substr(comma + 1));
    if (!f0.empty()) {
      const double v = parse_double(f0, number);
      if (v < 0.0) throw ParseError(number, "negative f0");
      if (v > 0.0) s.f0 = v;
    }
    t.samples.push_back(s);
  }
  if (!header) throw ParseError(number, "missing header 'time_s,f0_hz'");
  try {
    t.validate();
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  return t;
}

std::string write_track_csv(const PitchTrack& t) {
  std::string out = "time_s,f0_hz\n";
  for (const auto& s : t.samples) {
    out += fmt(s.time) + ",";
    out += s.f0 ? fmt(*s.f0) : "0";
    out += '\n';
  }
  return out;
}

std::vector<double> median_filter(std::span<const double> x, int window) {
  if (window < 1 || window % 2 == 0) throw DomainError("PARAMS", "window must be odd and positive");
  std::vector<double> cur(x.begin(), x.end());
  const long n = static_cast<long>(cur.size());
  const long half = window / 2;
  if (n == 0 || half == 0) return cur;
  std::vector<double> next(cur.size()), buf(static_cast<std::size_t>(window));
  for (int pass = 0; pass < 10000; ++pass) {
    for (long i = 0; i < n; ++i) {
      for (long k = -half; k <= half; ++k)
        buf[static_cast<std::size_t>(k + half)] = cur[static_cast<std::size_t>(std::clamp(i + k, 0L, n - 1))];
      std::nth_element(buf.begin(), buf.begin() + half, buf.end());
      next[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(half)];
    }
    if (next == cur) break;
    cur.swap(next);
  }
  return cur;
}

PitchTrack preprocess(const PitchTrack& t, const PreprocessOptions& o) {
  t.validate();
  std::size_t first = t.samples.size(), last = 0;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    if (!t.samples[i].f0) continue;
    first = std::min(first, i);
    last = i;
  }
  if (first == t.samples.size()) throw DomainError("ALL_UNVOICED", "track has no voiced samples");

  std::vector<double> times, values;
  std::size_t prev = first;
  for (std::size_t i = first; i <= last; ++i) {
    times.push_back(t.samples[i].time);
    if (t.samples[i].f0) {
      values.push_back(*t.samples[i].f0);
      prev = i;
      continue;
    }
    std::size_t next = i;
    while (!t.samples[next].f0) ++next;
    const double t0 = t.samples[prev].time, t1 = t.samples[next].time;
    const double f0 = *t.samples[prev].f0, f1 = *t.samples[next].f0;
    values.push_back(f0 + (f1 - f0) * (t.samples[i].time - t0) / (t1 - t0));
  }

  values = median_filter(values, o.window);
  PitchTrack out;
  out.source = t.source;
  out.normalized = t.normalized;
  out.scale_hz = t.scale_hz;
  if (o.normalize) {
    const double m = median_of(values);
    for (double& v : values) v /= m;
    out.normalized = true;
    out.scale_hz = t.scale_hz * m;
  }
  for (std::size_t i = 0; i < values.size(); ++i) out.samples.push_back({times[i], values[i]});
  return out;
}

double RegressionFit::operator()(double t) const {
  double y = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * t + *it;
  return y;
}

RegressionFit fit_polynomial(const PitchTrack& t, int degree) {
  if (degree < 1 || degree > 2) throw DomainError("PARAMS", "degree must be 1 or 2");
  std::vector<double> xs, ys;
  for (const auto& s : t.samples)
    if (s.f0) {
      xs.push_back(s.time);
      ys.push_back(*s.f0);
    }
  const auto n = static_cast<Eigen::Index>(xs.size());
  if (n < degree + 1)
    throw DomainError("DEGENERATE", "need at least " + std::to_string(degree + 1) +
                                        " voiced samples");
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k <= degree; ++k, p *= xs[static_cast<std::size_t>(i)]) a(i, k) = p;
    b(i) = ys[static_cast<std::size_t>(i)];
  }
  const auto qr = a.colPivHouseholderQr();
  if (qr.rank() < degree + 1) throw DomainError("DEGENERATE", "design matrix is rank deficient");
  const Eigen::VectorXd c = qr.solve(b);

  RegressionFit fit;
  fit.degree = degree;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.rmse = std::sqrt((a * c - b).squaredNorm() / static_cast<double>(n));
  fit.t_start = xs.front();
  fit.t_end = xs.back();
  return fit;
}

PauseSegmentation detect_pauses(const PitchTrack& t, double min_dur) {
  t.validate();
  PauseSegmentation seg;
  const auto& s = t.samples;
  if (s.empty()) return seg;
  for (std::size_t i = 0; i < s.size();) {
    if (s[i].f0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !s[j].f0) ++j;
    const Span pause{s[i].time, j < s.size() ? s[j].time : s.back().time};
    if (pause.duration() > min_dur + kEps) seg.pauses.push_back(pause);
    i = j;
  }
  double cursor = s.front().time;
  for (const auto& p : seg.pauses) {
    if (p.start > cursor + kEps) seg.units.push_back({cursor, p.start});
    cursor = p.end;
  }
  if (s.back().time > cursor + kEps) seg.units.push_back({cursor, s.back().time});
  return seg;
}

ResetAnalysis detect_resets(const PitchTrack& t, const PauseSegmentation& seg,
                            const ResetParams& p) {
  ResetAnalysis out;
  for (std::size_t k = 0; k + 1 < seg.units.size(); ++k) {
    const Span& prev = seg.units[k];
    const Span& next = seg.units[k + 1];
    const auto tail = window_values(t, std::max(prev.end - p.tail_s, prev.start), prev.end,
                                    is_track_end(t, prev.end));
    const auto head = window_values(t, next.start, std::min(next.start + p.head_s, next.end),
                                    is_track_end(t, next.end) && next.start + p.head_s >= next.end);
    if (tail.empty() || head.empty())
      throw DomainError("EMPTY_WINDOW", "no voiced samples around boundary " + std::to_string(k + 1));
    double mean = 0.0;
    for (double v : tail) mean += v;
    mean /= static_cast<double>(tail.size());
    const double peak = *std::max_element(head.begin(), head.end());
    ResetEvent e{k + 1, next.start, peak / mean};
    out.boundaries.push_back(e);
    if (e.magnitude >= p.min_jump) out.events.push_back(e);
  }
  return out;
}

std::vector<Paratone> paratone_segment(const PitchTrack& t, const PauseSegmentation& seg,
                                       const ResetAnalysis& resets, double major_jump,
                                       double head_s) {
  std::vector<Paratone> out;
  if (seg.units.empty()) return out;
  std::vector<std::size_t> openers{0};
  for (const auto& b : resets.boundaries)
    if (b.magnitude >= major_jump) openers.push_back(b.unit_index);
  for (std::size_t i = 0; i < openers.size(); ++i) {
    const Span& unit = seg.units[openers[i]];
    const double end = i + 1 < openers.size() ? seg.units[openers[i + 1]].start
                                              : seg.units.back().end;
    const auto head = window_values(t, unit.start, std::min(unit.start + head_s, unit.end),
                                    is_track_end(t, unit.end));
    const double peak = head.empty() ? 0.0 : *std::max_element(head.begin(), head.end());
    out.push_back({{unit.start, end}, peak * t.scale_hz});
  }
  return out;
}

std::string to_string(Interval i) { return i == Interval::kMinorThird ? "MINOR_THIRD" : "OTHER"; }

ChantMeasurement chant_measure(double level1, double level2, double tolerance) {
  if (!(level1 > 0.0) || !(level2 > 0.0))
    throw DomainError("LEVEL", "chant levels must be positive");
  ChantMeasurement m{level1, level2, level1 / level2, Interval::kOther};
  if (std::abs(m.ratio - kMinorThird) <= tolerance + kEps) m.classification = Interval::kMinorThird;
  return m;
}

ChantMeasurement chant_measure(const PitchTrack& t, Span first, Span second, double tolerance) {
  auto mean = [&](Span s) {
    const auto v = window_values(t, s.start, s.end, true);
    if (v.empty()) throw DomainError("LEVEL", "no voiced samples in chant span");
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size()) * t.scale_hz;
  };
  return chant_measure(mean(first), mean(second), tolerance);
}

std::string to_string(Polarity p) { return p == Polarity::kAbove ? "ABOVE" : "BELOW"; }

std::vector<AccentResult> accent_excursion(const PitchTrack& t, const RegressionFit& fit,
                                           std::span<const Accent> accents, double window) {
  std::vector<AccentResult> out;
  for (const auto& a : accents) {
    AccentResult r;
    r.label = a.label;
    r.time = a.time;
    r.position = a.time;
    if (a.time < fit.t_start - kEps || a.time > fit.t_end + kEps) {
      r.error = "accent outside the fitted domain";
      out.push_back(r);
      continue;
    }
    bool found = false;
    for (const auto& s : t.samples) {
      if (!s.f0 || std::abs(s.time - a.time) > window + kEps) continue;
      const double d = *s.f0 - fit(s.time);
      if (!found || std::abs(d) > std::abs(r.excursion)) {
        r.excursion = d;
        r.position = s.time;
        found = true;
      }
    }
    if (!found) r.error = "no voiced samples near the accent";
    r.polarity = r.excursion >= 0.0 ? Polarity::kAbove : Polarity::kBelow;
    out.push_back(r);
  }
  return out;
}

std::vector<Accent> read_accents_csv(std::string_view text) {
  std::vector<Accent> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "time_s,label") throw ParseError(number, "expected header 'time_s,label'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(number, "expected 'time,label'");
    out.push_back({parse_double(trim(line.substr(0, comma)), number), trim(line.substr(comma + 1))});
  }
  return out;
}

NewsFixture news_fixture() {
  constexpr double kRate = 100.0;
  const double magnitudes[] = {1.35, 1.20, 1.04, 1.62, 1.30, 1.17, 1.06, 1.58, 1.25};
  const double pauses[] = {0.30, 0.45, 0.25, 0.60, 0.35, 0.28, 0.40, 0.55, 0.32};
  constexpr double kFlat = 0.40;
  constexpr double kDeclination = 0.70;

  NewsFixture fx;
  fx.track.source = "synthetic-news";
  fx.onset_peak_hz = 430.0;
  std::size_t idx = 0;
  auto push = [&](std::optional<double> f0) {
    fx.track.samples.push_back({static_cast<double>(idx) / kRate, f0});
    ++idx;
  };
  auto count = [&](double seconds) { return static_cast<std::size_t>(std::lround(seconds * kRate)); };

  double onset = fx.onset_peak_hz;
  for (std::size_t u = 0; u < 10; ++u) {
    const double end = onset * kDeclination;
    const std::size_t ramp = count(0.5 + 0.1 * static_cast<double>(u % 4));
    for (std::size_t i = 0; i < count(kFlat); ++i) push(onset);
    for (std::size_t i = 1; i <= ramp; ++i) {
      // A short voiceless stretch that stays below the pause threshold.
      const bool gap = u == 2 && i > ramp / 2 && i <= ramp / 2 + 10;
      const double v = onset + (end - onset) * static_cast<double>(i) / static_cast<double>(ramp + 1);
      push(gap ? std::nullopt : std::optional<double>(v));
    }
    for (std::size_t i = 0; i < count(kFlat); ++i) push(end);
    if (u == 9) break;
    for (std::size_t i = 0; i < count(pauses[u]); ++i) push(std::nullopt);
    fx.reset_magnitudes.push_back(magnitudes[u]);
    if (magnitudes[u] >= 1.15) fx.reset_units.push_back(u + 1);
    if (magnitudes[u] >= 1.5) fx.paratone_units.push_back(u + 1);
    onset = end * magnitudes[u];
  }
  return fx;
}

}  // namespace mlg::prosody
