#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "mlg/fsa/text_format.hpp"
#include "mlg/prosody/prosody.hpp"
#include "mlg/prosody/report.hpp"

using namespace mlg;
using namespace mlg::prosody;

namespace {

PitchTrack sampled(double t0, double t1, double dt, const std::function<std::optional<double>(double)>& f) {
  PitchTrack t;
  const auto n = static_cast<std::size_t>(std::llround((t1 - t0) / dt));
  for (std::size_t i = 0; i <= n; ++i) {
    const double time = t0 + dt * static_cast<double>(i);
    t.samples.push_back({time, f(time)});
  }
  return t;
}

// Voiced at 150 Hz, with an unvoiced gap of `gap` seconds starting at 1.0.
PitchTrack gapped(double gap) {
  return sampled(0.0, 3.0, 0.01, [gap](double t) -> std::optional<double> {
    if (t > 1.0 + 1e-9 && t < 1.0 + gap + 0.01 - 1e-9) return std::nullopt;
    return 150.0;
  });
}

}  // namespace

TEST_SUITE("prosody") {
  TEST_CASE("track csv") {
    const auto t = read_track_csv("time_s,f0_hz\n0.00,120\n0.01,0\n0.02,\n0.03,125.5\n", "x");
    REQUIRE(t.samples.size() == 4);
    CHECK_FALSE(t.samples[1].f0);
    CHECK_FALSE(t.samples[2].f0);
    CHECK(*t.samples[3].f0 == 125.5);
    CHECK(read_track_csv(write_track_csv(t)).samples.size() == 4);
    CHECK(write_track_csv(read_track_csv(write_track_csv(t))) == write_track_csv(t));
    CHECK_THROWS_AS(read_track_csv("time,f0\n"), ParseError);
    CHECK_THROWS_AS(read_track_csv("time_s,f0_hz\n0,abc\n"), ParseError);
    CHECK_THROWS_AS(read_track_csv("time_s,f0_hz\n0.1,100\n0.0,100\n"), Error);
  }

  TEST_CASE("median filter reaches a root signal") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> d(100, 200);
    for (int i = 0; i < 50; ++i) {
      std::vector<double> x(40);
      for (auto& v : x) v = d(rng);
      const auto y = median_filter(x, 5);
      CHECK(median_filter(y, 5) == y);
      CHECK(y.size() == x.size());
    }
    const std::vector<double> spike = {1, 1, 1, 9, 1, 1, 1};
    CHECK(median_filter(spike, 3) == std::vector<double>(7, 1.0));
    CHECK_THROWS_AS(median_filter(spike, 4), DomainError);
  }

  TEST_CASE("preprocessing") {
    auto raw = sampled(0.0, 1.0, 0.01, [](double t) -> std::optional<double> {
      if (t < 0.05 || (t > 0.4 && t < 0.5)) return std::nullopt;
      return 100.0 + 50.0 * t;
    });
    const auto p = preprocess(raw);
    CHECK(p.normalized);
    CHECK(p.samples.front().time == doctest::Approx(0.05));
    for (const auto& s : p.samples) CHECK(s.f0.has_value());
    std::vector<double> f;
    for (const auto& s : p.samples) f.push_back(*s.f0);
    std::sort(f.begin(), f.end());
    const double median = f.size() % 2 ? f[f.size() / 2] : (f[f.size() / 2 - 1] + f[f.size() / 2]) / 2;
    CHECK(median == doctest::Approx(1.0));
    CHECK(p.scale_hz > 100.0);
    CHECK(preprocess(p, {5, false}).samples.size() == p.samples.size());

    PreprocessOptions keep_hz;
    keep_hz.normalize = false;
    const auto hz = preprocess(raw, keep_hz);
    CHECK(hz.scale_hz == 1.0);
    // Bridged samples lie on the line through the gap's neighbours.
    for (const auto& s : hz.samples)
      if (s.time > 0.41 && s.time < 0.49) CHECK(*s.f0 == doctest::Approx(100.0 + 50.0 * s.time));

    const auto silent = sampled(0, 1, 0.1, [](double) { return std::optional<double>(); });
    try {
      preprocess(silent);
      FAIL("expected an error");
    } catch (const DomainError& e) {
      CHECK(e.code() == "ALL_UNVOICED");
    }
  }

  TEST_CASE("line recovery") {
    const auto t = sampled(0.0, 2.0, 0.01, [](double x) { return std::optional<double>(5.0 * x + 120.0); });
    const auto f = fit_polynomial(t, 1);
    CHECK(std::abs(f.slope() - 5.0) <= 1e-9);
    CHECK(std::abs(f.coefficients[0] - 120.0) <= 1e-9);
    CHECK(f.rmse <= 1e-9);
  }

  TEST_CASE("quadratic recovery and residual orthogonality") {
    const auto t = sampled(0.0, 3.0, 0.01, [](double x) {
      return std::optional<double>(200.0 - 12.0 * x + 1.5 * x * x);
    });
    const auto f = fit_polynomial(t, 2);
    CHECK(std::abs(f.coefficients[0] - 200.0) <= 1e-6);
    CHECK(std::abs(f.coefficients[1] + 12.0) <= 1e-6);
    CHECK(std::abs(f.coefficients[2] - 1.5) <= 1e-6);

    std::mt19937 rng(8);
    std::normal_distribution<double> noise(0.0, 4.0);
    auto noisy = t;
    for (auto& s : noisy.samples) *s.f0 += noise(rng);
    for (int degree : {1, 2}) {
      const auto g = fit_polynomial(noisy, degree);
      for (int k = 0; k <= degree; ++k) {
        double dot = 0.0;
        for (const auto& s : noisy.samples) dot += (*s.f0 - g(s.time)) * std::pow(s.time, k);
        CHECK(std::abs(dot) <= 1e-9);
      }
    }
  }

  TEST_CASE("degenerate fits") {
    PitchTrack one;
    one.samples = {{0.0, 100.0}};
    CHECK_THROWS_AS(fit_polynomial(one, 1), DomainError);
    PitchTrack two;
    two.samples = {{0.0, 100.0}, {0.1, 110.0}};
    CHECK_NOTHROW(fit_polynomial(two, 1));
    CHECK_THROWS_AS(fit_polynomial(two, 2), DomainError);
    CHECK_THROWS_AS(fit_polynomial(two, 3), DomainError);
  }

  TEST_CASE("pause threshold") {
    const auto long_gap = detect_pauses(gapped(0.300));
    REQUIRE(long_gap.pauses.size() == 1);
    CHECK(long_gap.pauses[0].duration() == doctest::Approx(0.300));
    CHECK(long_gap.units.size() == 2);
    CHECK(detect_pauses(gapped(0.150)).pauses.empty());
    CHECK(detect_pauses(gapped(0.150)).units.size() == 1);
    CHECK(detect_pauses(gapped(0.150), 0.1).pauses.size() == 1);
  }

  TEST_CASE("news fixture segments as constructed") {
    const auto news = news_fixture();
    const auto seg = detect_pauses(news.track);
    CHECK(seg.pauses.size() == 9);
    CHECK(seg.units.size() == 10);
    const auto processed = preprocess(news.track);
    const auto resets = detect_resets(processed, seg);
    REQUIRE(resets.boundaries.size() == 9);
    for (std::size_t k = 0; k < 9; ++k)
      CHECK(resets.boundaries[k].magnitude == doctest::Approx(news.reset_magnitudes[k]).epsilon(1e-9));
    std::vector<std::size_t> units;
    for (const auto& e : resets.events) units.push_back(e.unit_index);
    CHECK(units == news.reset_units);
    const auto paratones = paratone_segment(processed, seg, resets);
    REQUIRE(paratones.size() == news.paratone_units.size() + 1);
    CHECK(paratones[0].onset_peak_hz == doctest::Approx(news.onset_peak_hz));
    for (std::size_t i = 0; i < news.paratone_units.size(); ++i)
      CHECK(paratones[i + 1].span.start == doctest::Approx(seg.units[news.paratone_units[i]].start));
    CHECK(paratones.back().span.end == doctest::Approx(news.track.samples.back().time));
  }

  TEST_CASE("news fixture file matches the generator") {
    const auto path = std::filesystem::path(MLG_FIXTURES) / "news.csv";
    CHECK(fsa::read_file(path.string()) == write_track_csv(news_fixture().track));
  }

  TEST_CASE("descending onsets within a paratone") {
    const auto news = news_fixture();
    const auto seg = detect_pauses(news.track);
    // Between major resets the onsets step down.
    std::vector<double> onsets;
    for (const auto& u : seg.units)
      for (const auto& s : news.track.samples)
        if (s.time >= u.start - 1e-9 && s.f0) {
          onsets.push_back(*s.f0);
          break;
        }
    REQUIRE(onsets.size() == 10);
    CHECK(onsets[4] > onsets[3]);
    CHECK(onsets[8] > onsets[7]);
  }

  TEST_CASE("chant ratios") {
    const double pairs[][3] = {{212, 177, 1.198}, {201, 168, 1.196}, {240, 196, 1.224}, {230, 197, 1.168}};
    for (const auto& p : pairs) CHECK(std::abs(chant_measure(p[0], p[1]).ratio - p[2]) <= 0.001);
    CHECK(chant_measure(212, 177).classification == Interval::kMinorThird);
    CHECK(chant_measure(201, 168).classification == Interval::kMinorThird);
    CHECK(chant_measure(300, 200).classification == Interval::kOther);
    CHECK(chant_measure(230, 197, 0.01).classification == Interval::kOther);
    CHECK_THROWS_AS(chant_measure(0, 100), DomainError);

    const auto t = sampled(0.0, 1.0, 0.01, [](double x) { return std::optional<double>(x < 0.5 ? 240.0 : 200.0); });
    const auto m = chant_measure(t, {0.0, 0.4}, {0.6, 1.0});
    CHECK(m.ratio == doctest::Approx(1.2));
    CHECK(m.classification == Interval::kMinorThird);
  }

  TEST_CASE("accent excursions") {
    const auto t = sampled(0.0, 2.0, 0.01, [](double x) {
      double f = 150.0 - 10.0 * x;
      if (std::abs(x - 0.5) < 0.025) f += 30.0;
      if (std::abs(x - 1.5) < 0.025) f -= 30.0;
      return std::optional<double>(f);
    });
    const auto fit = fit_polynomial(t, 1);
    const std::vector<Accent> accents = {{0.5, "H*"}, {1.5, "L*"}, {5.0, "far"}};
    const auto r = accent_excursion(t, fit, accents);
    REQUIRE(r.size() == 3);
    CHECK(r[0].polarity == Polarity::kAbove);
    CHECK(r[0].excursion > 20.0);
    CHECK(r[0].position == doctest::Approx(0.5).epsilon(0.05));
    CHECK(r[1].polarity == Polarity::kBelow);
    CHECK(r[1].excursion < -20.0);
    CHECK(r[2].error.has_value());
    CHECK(read_accents_csv("time_s,label\n0.5,H*\n").at(0).label == "H*");
    CHECK_THROWS_AS(read_accents_csv("t,l\n"), ParseError);
  }

  TEST_CASE("analysis report") {
    const auto news = news_fixture();
    AnalysisOptions o;
    o.accents = {{0.2, "H*"}};
    o.chant_spans = std::pair{Span{0.0, 0.3}, Span{0.75, 1.2}};
    const auto a = analyze(news.track, o);
    const auto j = to_json(a);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"preprocess", "fits", "pauses", "resets", "paratones",
                                           "chant", "accents"});
    CHECK(j["pauses"]["count"] == 9);
    CHECK(j["paratones"].size() == 3);
    CHECK(a.unit_fits.size() == 10);
    for (const auto& u : a.unit_fits) CHECK(u.fit.slope() <= 0.0);
    CHECK(to_json(analyze(news.track, o)).dump() == j.dump());
    CHECK(to_text(a) == to_text(analyze(news.track, o)));
    const auto csv = to_csv(a);
    CHECK(csv.size() == 7);
    CHECK(csv.at("resets").rfind("unit_index,time_s,magnitude\n", 0) == 0);
  }
}
