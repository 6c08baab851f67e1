#include "mlg/prosody/report.hpp"

#include <cstdio>

namespace mlg::prosody {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

nlohmann::ordered_json fit_json(const RegressionFit& f) {
  return {{"degree", f.degree},
          {"coefficients", f.coefficients},
          {"rmse", f.rmse},
          {"domain", {f.t_start, f.t_end}}};
}

nlohmann::ordered_json span_json(const Span& s) { return {s.start, s.end}; }

}  // namespace

Analysis analyze(const PitchTrack& raw, const AnalysisOptions& o) {
  Analysis a;
  a.pauses = detect_pauses(raw, o.min_pause);
  a.processed = preprocess(raw, o.preprocess);
  a.linear = fit_polynomial(a.processed, 1);
  a.quadratic = fit_polynomial(a.processed, 2);
  for (const auto& u : a.pauses.units) {
    PitchTrack part;
    for (const auto& s : a.processed.samples)
      if (s.time >= u.start - 1e-9 && s.time <= u.end + 1e-9) part.samples.push_back(s);
    if (part.samples.size() >= 2) a.unit_fits.push_back({u, fit_polynomial(part, 1)});
  }
  a.resets = detect_resets(a.processed, a.pauses, o.resets);
  a.paratones = paratone_segment(a.processed, a.pauses, a.resets, o.major_jump, o.resets.head_s);
  if (o.chant_spans)
    a.chant = chant_measure(a.processed, o.chant_spans->first, o.chant_spans->second,
                            o.chant_tolerance);
  const RegressionFit& accent_fit = o.accent_degree == 1 ? a.linear : a.quadratic;
  a.accents = accent_excursion(a.processed, accent_fit, o.accents);
  return a;
}

nlohmann::ordered_json to_json(const Analysis& a) {
  nlohmann::ordered_json j;
  j["preprocess"] = {{"source", a.processed.source},
                     {"samples", a.processed.samples.size()},
                     {"normalized", a.processed.normalized},
                     {"scale_hz", a.processed.scale_hz}};

  nlohmann::ordered_json units = nlohmann::ordered_json::array();
  for (const auto& u : a.unit_fits)
    units.push_back({{"unit", span_json(u.unit)}, {"slope", u.fit.slope()}, {"fit", fit_json(u.fit)}});
  j["fits"] = {{"linear", fit_json(a.linear)}, {"quadratic", fit_json(a.quadratic)}, {"units", units}};

  nlohmann::ordered_json pauses = nlohmann::ordered_json::array(), spans = nlohmann::ordered_json::array();
  for (const auto& p : a.pauses.pauses) pauses.push_back(span_json(p));
  for (const auto& u : a.pauses.units) spans.push_back(span_json(u));
  j["pauses"] = {{"count", a.pauses.pauses.size()}, {"pauses", pauses}, {"units", spans}};

  auto events = [](const std::vector<ResetEvent>& v) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& e : v)
      out.push_back({{"unit_index", e.unit_index}, {"time", e.time}, {"magnitude", e.magnitude}});
    return out;
  };
  j["resets"] = {{"boundaries", events(a.resets.boundaries)}, {"events", events(a.resets.events)}};

  nlohmann::ordered_json paratones = nlohmann::ordered_json::array();
  for (const auto& p : a.paratones)
    paratones.push_back({{"span", span_json(p.span)}, {"onset_peak_hz", p.onset_peak_hz}});
  j["paratones"] = paratones;

  if (a.chant)
    j["chant"] = {{"level1", a.chant->level1},
                  {"level2", a.chant->level2},
                  {"ratio", a.chant->ratio},
                  {"classification", to_string(a.chant->classification)}};
  else
    j["chant"] = nullptr;

  nlohmann::ordered_json accents = nlohmann::ordered_json::array();
  for (const auto& r : a.accents) {
    nlohmann::ordered_json e = {{"label", r.label},
                                {"time", r.time},
                                {"position", r.position},
                                {"polarity", to_string(r.polarity)},
                                {"excursion", r.excursion}};
    if (r.error) e["error"] = *r.error;
    accents.push_back(e);
  }
  j["accents"] = accents;
  return j;
}

std::string to_text(const Analysis& a) {
  std::string out;
  out += "samples " + std::to_string(a.processed.samples.size()) + "\n";
  out += "linear_slope " + num(a.linear.slope()) + "\n";
  out += "pauses " + std::to_string(a.pauses.pauses.size()) + "\n";
  out += "units " + std::to_string(a.pauses.units.size()) + "\n";
  for (const auto& b : a.resets.boundaries) {
    bool reset = false;
    for (const auto& e : a.resets.events) reset = reset || e.unit_index == b.unit_index;
    out += "boundary " + std::to_string(b.unit_index) + " " + num(b.magnitude) +
           (reset ? " reset" : "") + "\n";
  }
  for (const auto& p : a.paratones)
    out += "paratone " + num(p.span.start) + " " + num(p.span.end) + " " + num(p.onset_peak_hz) + "\n";
  if (a.chant)
    out += "chant " + num(a.chant->ratio) + " " + to_string(a.chant->classification) + "\n";
  for (const auto& r : a.accents)
    out += "accent " + r.label + " " + (r.error ? "ERROR " + *r.error
                                                : to_string(r.polarity) + " " + num(r.excursion)) +
           "\n";
  return out;
}

std::map<std::string, std::string> to_csv(const Analysis& a) {
  std::map<std::string, std::string> out;
  std::string& pre = out["preprocess"] = "time_s,f0\n";
  for (const auto& s : a.processed.samples) pre += num(s.time) + "," + num(*s.f0) + "\n";

  std::string& fits = out["fits"] = "time_s,linear,quadratic\n";
  for (const auto& s : a.processed.samples)
    fits += num(s.time) + "," + num(a.linear(s.time)) + "," + num(a.quadratic(s.time)) + "\n";

  std::string& pauses = out["pauses"] = "kind,start_s,end_s\n";
  for (const auto& p : a.pauses.pauses) pauses += "pause," + num(p.start) + "," + num(p.end) + "\n";
  for (const auto& u : a.pauses.units) pauses += "unit," + num(u.start) + "," + num(u.end) + "\n";

  std::string& resets = out["resets"] = "unit_index,time_s,magnitude\n";
  for (const auto& b : a.resets.boundaries)
    resets += std::to_string(b.unit_index) + "," + num(b.time) + "," + num(b.magnitude) + "\n";

  std::string& paratones = out["paratones"] = "start_s,end_s,onset_peak_hz\n";
  for (const auto& p : a.paratones)
    paratones += num(p.span.start) + "," + num(p.span.end) + "," + num(p.onset_peak_hz) + "\n";

  std::string& chant = out["chant"] = "level1,level2,ratio,classification\n";
  if (a.chant)
    chant += num(a.chant->level1) + "," + num(a.chant->level2) + "," + num(a.chant->ratio) + "," +
             to_string(a.chant->classification) + "\n";

  std::string& accents = out["accents"] = "label,time_s,position_s,polarity,excursion\n";
  for (const auto& r : a.accents)
    if (!r.error)
      accents += r.label + "," + num(r.time) + "," + num(r.position) + "," +
                 to_string(r.polarity) + "," + num(r.excursion) + "\n";
  return out;
}

}  // namespace mlg::prosody
