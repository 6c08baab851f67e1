#include "mlg/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "mlg/error.hpp"
#include "mlg/fragments/fragments.hpp"
#include "mlg/fsa/algorithms.hpp"
#include "mlg/fsa/grammar.hpp"
#include "mlg/fsa/text_format.hpp"
#include "mlg/prosody/report.hpp"
#include "mlg/rank/rank.hpp"
#include "mlg/stress/stress.hpp"
#include "mlg/tone/tone.hpp"

namespace mlg::cli {
namespace {

using nlohmann::ordered_json;

enum class Kind { kGrammar, kCfg, kAutomaton, kTransducer, kRegister };

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

Kind kind_of(const std::string& path, const std::string& text) {
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".rg") return Kind::kGrammar;
  if (ext == ".cfg") return Kind::kCfg;
  if (ext == ".fsa") return Kind::kAutomaton;
  if (ext == ".fst") return Kind::kTransducer;
  if (ext == ".ra") return Kind::kRegister;
  if (text.find("@register") != std::string::npos) return Kind::kRegister;
  if (text.find("@input-alphabet") != std::string::npos) return Kind::kTransducer;
  if (text.find("@initial") != std::string::npos) return Kind::kAutomaton;
  return Kind::kGrammar;
}

// Any recognizer format as a plain automaton.
fsa::FiniteAutomaton load_automaton(const std::string& path) {
  const std::string text = fsa::read_file(path);
  switch (kind_of(path, text)) {
    case Kind::kGrammar:
      return fsa::grammar_to_automaton(fsa::parse_regular_grammar(text));
    case Kind::kAutomaton:
      return fsa::parse_automaton(text);
    case Kind::kRegister:
      return fsa::expand_registers(fsa::parse_register_automaton(text));
    default:
      throw DomainError("FORMAT", path + ": not a recognizer");
  }
}

fsa::ContextFreeGrammar load_cfg(const std::string& path) {
  const std::string text = fsa::read_file(path);
  switch (kind_of(path, text)) {
    case Kind::kGrammar:
      return fsa::to_context_free(fsa::parse_regular_grammar(text));
    case Kind::kCfg:
      return fsa::parse_context_free_grammar(text);
    default:
      throw DomainError("FORMAT", path + ": not a grammar");
  }
}

std::string word_text(const fsa::Word& w) { return w.empty() ? "_" : fsa::to_string(w); }

fsa::Orientation parse_orientation(const std::string& s) {
  if (s == "right") return fsa::Orientation::kRight;
  if (s == "left") return fsa::Orientation::kLeft;
  throw DomainError("USAGE", "orientation must be right or left");
}

ordered_json fit_json(const prosody::RegressionFit& f) {
  return {{"degree", f.degree}, {"coefficients", f.coefficients}, {"rmse", f.rmse}};
}

// Option storage, fresh per dispatch.
struct Context {
  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;
  std::string format = "text";

  std::string file, second, target, manifest, input, name, vocab = "prefix";
  std::string accents, chant_a, chant_b, section;
  std::vector<std::string> args;
  std::vector<std::size_t> faithful;
  std::vector<double> levels;
  std::size_t max_len = 5, cap = 10000, pending_cap = rank::kDefaultPendingCap, bound = 3;
  std::uint64_t onsets = 0, nuclei = 0;
  bool flag = false, raw = false;
  int degree = 1;
  double tolerance = 0.05;
  tone::SynthesisParams params;
  prosody::AnalysisOptions analysis;
};

void add_format(CLI::App* app, Context& ctx) {
  app->add_option("--format", ctx.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
}

// ---- grammar --------------------------------------------------------------

void grammar_commands(CLI::App& app, Context& ctx) {
  auto* g = app.add_subcommand("grammar", "Regular and context-free grammars");
  g->require_subcommand(1);

  auto* check = g->add_subcommand("check", "Parse and validate a grammar");
  check->add_option("file", ctx.file)->required();
  check->callback([&] {
    const std::string text = fsa::read_file(ctx.file);
    if (kind_of(ctx.file, text) == Kind::kCfg) {
      const auto c = fsa::parse_context_free_grammar(text);
      ctx.out << "ok context-free rules=" << c.rules().size()
              << " nonterminals=" << c.nonterminals().size()
              << " terminals=" << c.terminals().size() << "\n";
      return;
    }
    const auto r = fsa::parse_regular_grammar(text);
    ctx.out << "ok regular " << fsa::to_string(r.orientation()) << " rules=" << r.rules().size()
            << " nonterminals=" << r.nonterminals().size()
            << " terminals=" << r.terminals().size() << "\n";
  });

  auto* to_fsa = g->add_subcommand("to-fsa", "Convert a regular grammar to an automaton");
  to_fsa->add_option("file", ctx.file)->required();
  to_fsa->callback([&] {
    ctx.out << fsa::serialize(fsa::grammar_to_automaton(fsa::parse_regular_grammar(fsa::read_file(ctx.file))));
  });

  auto* convert = g->add_subcommand(
      "convert", "Flip a grammar's orientation, or read a grammar off an automaton");
  convert->add_option("file", ctx.file)->required();
  convert->add_option("--to", ctx.target, "right | left (automaton input only)");
  convert->callback([&] {
    const std::string text = fsa::read_file(ctx.file);
    if (kind_of(ctx.file, text) == Kind::kGrammar) {
      ctx.out << fsa::serialize(fsa::convert_orientation(fsa::parse_regular_grammar(text)));
      return;
    }
    const auto o = parse_orientation(ctx.target.empty() ? "right" : ctx.target);
    ctx.out << fsa::serialize(fsa::automaton_to_grammar(load_automaton(ctx.file), o));
  });

  auto* classify = g->add_subcommand("classify", "Recursion type of a grammar");
  classify->add_option("file", ctx.file)->required();
  add_format(classify, ctx);
  classify->callback([&] {
    const auto c = fsa::classify_grammar(load_cfg(ctx.file));
    if (ctx.format == "json") {
      ordered_json j = {{"recursion_type", fsa::to_string(c.recursion_type)},
                        {"cnf", c.cnf},
                        {"finite_language", c.finite_language},
                        {"mixed_linear", c.mixed_linear}};
      ctx.out << j.dump(2) << "\n";
      return;
    }
    ctx.out << fsa::to_string(c.recursion_type) << " cnf=" << (c.cnf ? "true" : "false")
            << " finite=" << (c.finite_language ? "true" : "false") << "\n";
  });
}

// ---- fsa ------------------------------------------------------------------

void fsa_commands(CLI::App& app, Context& ctx) {
  auto* f = app.add_subcommand("fsa", "Finite automata, transducers and register automata");
  f->require_subcommand(1);

  auto* check = f->add_subcommand("check", "Parse and validate any automaton file");
  check->add_option("file", ctx.file)->required();
  check->callback([&] {
    const std::string text = fsa::read_file(ctx.file);
    switch (kind_of(ctx.file, text)) {
      case Kind::kTransducer: {
        const auto t = fsa::parse_transducer(text);
        ctx.out << "ok transducer states=" << t.num_states() << " arcs=" << t.arcs().size() << "\n";
        return;
      }
      case Kind::kRegister: {
        const auto r = fsa::parse_register_automaton(text);
        ctx.out << "ok register states=" << r.base().num_states()
                << " registers=" << r.registers().size() << "\n";
        return;
      }
      default: {
        const auto a = load_automaton(ctx.file);
        ctx.out << "ok automaton states=" << a.num_states() << " arcs=" << a.arcs().size()
                << "\n";
      }
    }
  });

  auto* run = f->add_subcommand("run", "Run an automaton on a word");
  run->add_option("file", ctx.file)->required();
  run->add_option("symbols", ctx.args, "Input symbols");
  run->callback([&] {
    const std::string text = fsa::read_file(ctx.file);
    const fsa::Word w = fsa::make_word(join(ctx.args));
    if (kind_of(ctx.file, text) == Kind::kRegister) {
      const bool ok = fsa::accepts(fsa::parse_register_automaton(text), w);
      ctx.out << (ok ? "ACCEPT" : "REJECT") << "\n";
      return;
    }
    const auto r = fsa::run(load_automaton(ctx.file), w);
    ctx.out << (r.accepted ? "ACCEPT" : "REJECT") << " steps=" << r.steps
            << " max_frontier=" << r.max_frontier << "\n";
  });

  auto* enumerate = f->add_subcommand("enumerate", "List accepted words in shortlex order");
  enumerate->add_option("file", ctx.file)->required();
  enumerate->add_option("--max-len", ctx.max_len, "Longest word listed");
  enumerate->callback([&] {
    for (const auto& w : fsa::enumerate_language(load_automaton(ctx.file), ctx.max_len))
      ctx.out << word_text(w) << "\n";
  });

  auto* count = f->add_subcommand("count", "Size of the language");
  count->add_option("file", ctx.file)->required();
  count->callback([&] { ctx.out << fsa::count_language(load_automaton(ctx.file)).to_string() << "\n"; });

  auto* det = f->add_subcommand("determinize", "Subset construction");
  det->add_option("file", ctx.file)->required();
  det->callback([&] { ctx.out << fsa::serialize(fsa::determinize(load_automaton(ctx.file))); });

  auto* min = f->add_subcommand("minimize", "Minimal trimmed DFA");
  min->add_option("file", ctx.file)->required();
  min->callback(
      [&] { ctx.out << fsa::serialize(fsa::minimize(fsa::determinize(load_automaton(ctx.file)))); });

  auto* compose = f->add_subcommand("compose", "Compose two transducers");
  compose->add_option("first", ctx.file)->required();
  compose->add_option("second", ctx.second)->required();
  compose->callback([&] {
    ctx.out << fsa::serialize(fsa::compose(fsa::parse_transducer(fsa::read_file(ctx.file)),
                                           fsa::parse_transducer(fsa::read_file(ctx.second))));
  });

  auto* expand = f->add_subcommand("expand-registers", "Compile registers into states");
  expand->add_option("file", ctx.file)->required();
  expand->callback([&] {
    ctx.out << fsa::serialize(
        fsa::expand_registers(fsa::parse_register_automaton(fsa::read_file(ctx.file))));
  });

  auto* transduce = f->add_subcommand("transduce", "All outputs of a transducer for an input");
  transduce->add_option("file", ctx.file)->required();
  transduce->add_option("symbols", ctx.args, "Input symbols");
  transduce->add_option("--cap", ctx.cap, "Maximum number of outputs");
  transduce->callback([&] {
    const auto r = fsa::transduce(fsa::parse_transducer(fsa::read_file(ctx.file)),
                                  fsa::make_word(join(ctx.args)), ctx.cap);
    for (const auto& w : r.outputs) ctx.out << word_text(w) << "\n";
    if (r.overflow) ctx.err << "warning: output truncated at " << ctx.cap << "\n";
  });
}

// ---- rank -----------------------------------------------------------------

std::string stream_file_text(const std::string& path) { return fsa::read_file(path); }

void rank_commands(CLI::App& app, Context& ctx) {
  auto* r = app.add_subcommand("rank", "Six-rank architecture");
  r->require_subcommand(1);

  auto* validate = r->add_subcommand("validate", "Check strict layering");
  validate->add_option("manifest", ctx.manifest)->required();
  add_format(validate, ctx);
  validate->callback([&] {
    const auto report = rank::validate_layering(rank::load_manifest(ctx.manifest));
    if (ctx.format == "json") {
      ordered_json v = ordered_json::array();
      for (const auto& x : report.violations)
        v.push_back({{"rank", rank::to_string(x.rank)}, {"symbol", x.symbol}, {"message", x.message}});
      ctx.out << ordered_json{{"ok", report.ok}, {"violations", v}, {"warnings", report.warnings}}.dump(2)
              << "\n";
    } else {
      for (const auto& x : report.violations)
        ctx.out << "violation " << rank::to_string(x.rank) << " " << x.symbol << ": " << x.message
                << "\n";
      for (const auto& w : report.warnings) ctx.out << "warning " << w << "\n";
      if (report.ok) ctx.out << "ok\n";
    }
    if (!report.ok)
      throw DomainError("LAYERING", std::to_string(report.violations.size()) + " violation(s)");
  });

  auto* process = r->add_subcommand("process", "Incremental cascade over a phoneme string");
  process->add_option("manifest", ctx.manifest)->required();
  process->add_option("phonemes", ctx.args);
  process->add_option("--input", ctx.input, "File of whitespace-separated phonemes");
  process->add_option("--pending-cap", ctx.pending_cap, "Tokens a rank may hold before forcing a decision");
  add_format(process, ctx);
  process->callback([&] {
    const auto arch = rank::load_manifest(ctx.manifest);
    std::string text = join(ctx.args);
    if (!ctx.input.empty()) text += " " + fsa::read_file(ctx.input);
    const fsa::Word w = fsa::make_word(text);
    const auto result = rank::process_incremental(arch, w, ctx.pending_cap);
    if (ctx.format == "json") {
      ordered_json streams;
      for (const auto& s : result.streams) {
        ordered_json tokens = ordered_json::array();
        for (const auto& t : s.tokens) tokens.push_back({t.symbol, t.start, t.end});
        streams[rank::to_string(s.rank)] = tokens;
      }
      ordered_json diags = ordered_json::array();
      for (const auto& d : result.diagnostics)
        diags.push_back({{"rank", rank::to_string(d.rank)},
                         {"position", d.position},
                         {"state", d.state},
                         {"symbol", d.symbol}});
      const auto& inst = result.instrumentation;
      ctx.out << ordered_json{{"streams", streams},
                              {"instrumentation",
                               {{"total_steps", inst.total_steps},
                                {"flush_steps", inst.flush_steps},
                                {"max_memory_cells", inst.max_memory_cells},
                                {"buffer_overflows", inst.buffer_overflows}}},
                              {"diagnostics", diags}}
                     .dump(2)
              << "\n";
      return;
    }
    ctx.out << rank::serialize_streams(result.streams);
    for (const auto& d : result.diagnostics)
      ctx.err << "warning: " << rank::to_string(d.rank) << " position " << d.position << " state "
              << d.state << " cannot read " << d.symbol << "\n";
  });

  auto* toy = r->add_subcommand("toy", "Write the toy architecture files into a directory");
  toy->add_option("dir", ctx.file)->required();
  toy->callback([&] {
    std::filesystem::create_directories(ctx.file);
    for (const auto& [name, text] : rank::toy_manifest_files()) {
      const auto path = std::filesystem::path(ctx.file) / name;
      std::ofstream f(path, std::ios::binary);
      if (!(f << text)) throw DomainError("IO", "cannot write '" + path.string() + "'");
      ctx.out << path.string() << "\n";
    }
  });

  auto* align = r->add_subcommand("align", "Align two streams sharing a base");
  align->add_option("primary", ctx.input)->required();
  align->add_option("secondary", ctx.second)->required();
  align->callback([&] {
    const auto a = rank::parse_streams(stream_file_text(ctx.input));
    const auto b = rank::parse_streams(stream_file_text(ctx.second));
    if (a.size() != 1 || b.size() != 1)
      throw DomainError("USAGE", "each stream file must hold exactly one stream");
    for (const auto& x : rank::multilinear_align(a[0], b[0])) {
      ctx.out << x.primary << " " << a[0].tokens[x.primary].symbol << ":";
      for (auto j : x.secondary) ctx.out << " " << j << "=" << b[0].tokens[j].symbol;
      ctx.out << "\n";
    }
  });
}

// ---- fragment -------------------------------------------------------------

void fragment_commands(CLI::App& app, Context& ctx) {
  auto* f = app.add_subcommand("fragment", "Fragment library");
  f->require_subcommand(1);

  auto* list = f->add_subcommand("list", "List fragments");
  list->callback([&] {
    std::vector<const fragments::FragmentInfo*> all;
    for (const auto& i : fragments::registry()) all.push_back(&i);
    std::sort(all.begin(), all.end(), [](auto* a, auto* b) { return a->name < b->name; });
    for (auto* i : all) ctx.out << i->name << "." << i->extension << "\t" << i->description << "\n";
  });

  auto* emit = f->add_subcommand("emit", "Print a fragment in its text format");
  emit->add_option("name", ctx.name)->required();
  emit->callback([&] { ctx.out << fragments::find_fragment(ctx.name).emit(); });

  auto* hop = f->add_subcommand("hop", "Affix hopping on an auxiliary morpheme string");
  hop->add_option("morphemes", ctx.args)->required();
  hop->callback([&] { ctx.out << join(fragments::affix_hop(fragments::parse_aux(join(ctx.args)))) << "\n"; });

  auto* seg = f->add_subcommand("segment", "Split words into vocabulary items");
  seg->add_option("args", ctx.args)->required();
  seg->add_option("--vocab", ctx.vocab)->check(CLI::IsMember({"prefix", "compound"}));
  seg->callback([&] {
    const auto v = ctx.vocab == "prefix" ? fragments::prefix_vocabulary() : fragments::compound_vocabulary();
    const auto r = fragments::segment(join(ctx.args), v);
    if (!r) throw DomainError("NO_SEGMENTATION", "'" + join(ctx.args) + "' is not in the " + ctx.vocab + " language");
    ctx.out << join(*r) << "\n";
  });

  auto* blend = f->add_subcommand("blend-count", "Onset by nucleus blend count");
  blend->add_option("onsets", ctx.onsets)->required();
  blend->add_option("nuclei", ctx.nuclei)->required();
  blend->callback([&] { ctx.out << fragments::blend_count(ctx.onsets, ctx.nuclei) << "\n"; });

  auto* cross = f->add_subcommand("cross-serial", "Pair items across lists, e.g. 'a b | x y'");
  cross->add_option("items", ctx.args)->required();
  cross->add_option("--bound", ctx.bound);
  cross->callback([&] {
    std::vector<std::vector<std::string>> lists(1);
    for (const auto& arg : ctx.args) {
      std::istringstream in(arg);
      for (std::string a; in >> a;) {
        if (a == "|")
          lists.emplace_back();
        else
          lists.back().push_back(a);
      }
    }
    const auto v = fragments::cross_serial_check(lists, ctx.bound);
    if (!v.ok) {
      ctx.out << to_string(v.reason) << "\n";
      return;
    }
    for (const auto& t : v.tuples) ctx.out << join(t) << "\n";
  });
}

// ---- stress ---------------------------------------------------------------

void stress_commands(CLI::App& app, Context& ctx) {
  auto* s = app.add_subcommand("stress", "Nuclear and compound stress rules");
  s->require_subcommand(1);

  for (const char* which : {"nsr", "csr"}) {
    const bool is_csr = std::string(which) == "csr";
    auto* c = s->add_subcommand(which, is_csr ? "Compound stress values" : "Nuclear stress values");
    c->add_option("tree", ctx.args)->required();
    c->callback([&, is_csr] {
      const auto tree = stress::parse_tree(join(ctx.args));
      const auto coding = is_csr ? stress::csr_encode(tree) : stress::nsr_encode(tree);
      ctx.out << stress::format_coding(tree.leaves(), coding.values) << "\n";
    });
  }

  auto* decode = s->add_subcommand("decode", "Rebuild the tree from stress values");
  decode->add_option("coding", ctx.args)->required();
  decode->add_flag("--csr", ctx.flag, "Values follow the compound rule");
  decode->callback([&] {
    const auto coded = stress::parse_coding(join(ctx.args));
    const auto tree = ctx.flag ? stress::csr_decode(coded.values, coded.words)
                          : stress::nsr_decode(coded.values, coded.words);
    ctx.out << stress::to_string(tree) << "\n";
  });
}

// ---- tone -----------------------------------------------------------------

void tone_commands(CLI::App& app, Context& ctx) {
  auto* t = app.add_subcommand("tone", "Tone sandhi");
  t->require_subcommand(1);

  auto* tem = t->add_subcommand("tem", "Tem sandhi transducer");
  tem->add_option("tones", ctx.args)->required();
  tem->add_option("--faithful", ctx.faithful, "0-based positions kept faithful")->delimiter(',');
  tem->callback([&] { ctx.out << tone::to_string(tone::tem_apply(tone::parse_tones(join(ctx.args)), ctx.faithful)) << "\n"; });

  auto* rules = t->add_subcommand("rules", "Tem sandhi as context rules");
  rules->add_option("tones", ctx.args)->required();
  rules->callback([&] { ctx.out << tone::to_string(tone::tem_rules_apply(tone::parse_tones(join(ctx.args)))) << "\n"; });

  auto* expand = t->add_subcommand("expand", "Expand floating tones");
  expand->add_option("tones", ctx.args)->required();
  expand->callback([&] { ctx.out << tone::to_string(tone::expand_floating(tone::parse_tones(join(ctx.args)))) << "\n"; });

  auto* synth = t->add_subcommand("synth", "Terraced F0 targets for allotones");
  synth->add_option("allotones", ctx.args)->required();
  synth->add_option("--h0", ctx.params.h0);
  synth->add_option("--l0", ctx.params.l0);
  synth->add_option("--step", ctx.params.step);
  synth->add_flag("--csv", ctx.flag);
  synth->callback([&] {
    const auto targets = tone::synthesize_targets(tone::parse_allotones(join(ctx.args)), ctx.params);
    if (ctx.flag) {
      ctx.out << tone::targets_csv(targets);
      return;
    }
    std::vector<std::string> parts;
    for (double v : targets) parts.push_back(num(v));
    ctx.out << join(parts) << "\n";
  });
}

// ---- prosody --------------------------------------------------------------

prosody::Span parse_span(const std::string& text) {
  const auto dash = text.find(':');
  if (dash == std::string::npos) throw DomainError("USAGE", "span must be START:END");
  try {
    return {std::stod(text.substr(0, dash)), std::stod(text.substr(dash + 1))};
  } catch (const std::exception&) {
    throw DomainError("USAGE", "bad span '" + text + "'");
  }
}

void prosody_commands(CLI::App& app, Context& ctx) {
  auto* p = app.add_subcommand("prosody", "Pitch track analysis");
  p->require_subcommand(1);

  auto load = [&ctx] { return prosody::read_track_csv(fsa::read_file(ctx.file), ctx.file); };

  auto* analyze = p->add_subcommand("analyze", "Full analysis report");
  analyze->add_option("track", ctx.file)->required();
  analyze->add_option("--window", ctx.analysis.preprocess.window, "Median filter window");
  analyze->add_flag("--raw", ctx.raw, "Keep Hz instead of normalizing");
  analyze->add_option("--min-pause", ctx.analysis.min_pause, "Seconds");
  analyze->add_option("--head", ctx.analysis.resets.head_s, "Reset head window, seconds");
  analyze->add_option("--tail", ctx.analysis.resets.tail_s, "Reset tail window, seconds");
  analyze->add_option("--min-jump", ctx.analysis.resets.min_jump);
  analyze->add_option("--major-jump", ctx.analysis.major_jump);
  analyze->add_option("--accent-degree", ctx.analysis.accent_degree)->check(CLI::IsMember({1, 2}));
  analyze->add_option("--accents", ctx.accents, "time_s,label CSV");
  analyze->add_option("--chant", ctx.chant_a, "First chant span START:END");
  analyze->add_option("--chant2", ctx.chant_b, "Second chant span START:END");
  analyze->add_option("--tolerance", ctx.analysis.chant_tolerance);
  analyze->add_option("--csv", ctx.section, "Print one CSV section instead")
      ->check(CLI::IsMember({"preprocess", "fits", "pauses", "resets", "paratones", "chant", "accents"}));
  add_format(analyze, ctx);
  analyze->callback([&, load] {
    ctx.analysis.preprocess.normalize = !ctx.raw;
    if (!ctx.accents.empty()) ctx.analysis.accents = prosody::read_accents_csv(fsa::read_file(ctx.accents));
    if (!ctx.chant_a.empty() || !ctx.chant_b.empty()) {
      if (ctx.chant_a.empty() || ctx.chant_b.empty())
        throw DomainError("USAGE", "--chant and --chant2 go together");
      ctx.analysis.chant_spans = std::pair{parse_span(ctx.chant_a), parse_span(ctx.chant_b)};
    }
    const auto a = prosody::analyze(load(), ctx.analysis);
    if (!ctx.section.empty())
      ctx.out << prosody::to_csv(a).at(ctx.section);
    else if (ctx.format == "json")
      ctx.out << prosody::to_json(a).dump(2) << "\n";
    else
      ctx.out << prosody::to_text(a);
  });

  auto* chant = p->add_subcommand("chant", "Ratio of two chant levels in Hz");
  chant->add_option("levels", ctx.levels)->required()->expected(2);
  chant->add_option("--tolerance", ctx.tolerance);
  chant->callback([&] {
    const auto m = prosody::chant_measure(ctx.levels[0], ctx.levels[1], ctx.tolerance);
    ctx.out << num(m.ratio) << " " << to_string(m.classification) << "\n";
  });

  auto* fit = p->add_subcommand("fit", "Polynomial regression over the preprocessed track");
  fit->add_option("track", ctx.file)->required();
  fit->add_option("--degree", ctx.degree)->check(CLI::IsMember({1, 2}));
  fit->add_flag("--raw", ctx.raw, "Keep Hz instead of normalizing");
  add_format(fit, ctx);
  fit->callback([&, load] {
    prosody::PreprocessOptions po;
    po.normalize = !ctx.raw;
    const auto f = prosody::fit_polynomial(prosody::preprocess(load(), po), ctx.degree);
    if (ctx.format == "json") {
      ctx.out << fit_json(f).dump(2) << "\n";
      return;
    }
    ctx.out << "degree " << f.degree << "\n";
    for (std::size_t i = 0; i < f.coefficients.size(); ++i)
      ctx.out << "c" << i << " " << num(f.coefficients[i]) << "\n";
    ctx.out << "rmse " << num(f.rmse) << "\n";
  });

  auto* pauses = p->add_subcommand("pauses", "Pauses and interpausal units");
  pauses->add_option("track", ctx.file)->required();
  pauses->add_option("--min-pause", ctx.analysis.min_pause, "Seconds");
  add_format(pauses, ctx);
  pauses->callback([&, load] {
    const auto seg = prosody::detect_pauses(load(), ctx.analysis.min_pause);
    if (ctx.format == "json") {
      ordered_json ps = ordered_json::array(), us = ordered_json::array();
      for (const auto& s : seg.pauses) ps.push_back({s.start, s.end});
      for (const auto& s : seg.units) us.push_back({s.start, s.end});
      ctx.out << ordered_json{{"pauses", ps}, {"units", us}}.dump(2) << "\n";
      return;
    }
    for (const auto& s : seg.pauses) ctx.out << "pause " << num(s.start) << " " << num(s.end) << "\n";
    for (const auto& s : seg.units) ctx.out << "unit " << num(s.start) << " " << num(s.end) << "\n";
  });

  auto* news = p->add_subcommand("synth-news", "Print the synthetic news-style track");
  news->callback([&] { ctx.out << prosody::write_track_csv(prosody::news_fixture().track); });
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multilinear grammar toolkit", "mlg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("mlg ") + kVersion);
  Context ctx(out, err);
  grammar_commands(app, ctx);
  fsa_commands(app, ctx);
  rank_commands(app, ctx);
  fragment_commands(app, ctx);
  stress_commands(app, ctx);
  tone_commands(app, ctx);
  prosody_commands(app, ctx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    out.flush();
    err << "error[" << e.code() << "]: " << e.what() << "\n";
    return e.code() == "USAGE" ? kExitUsage : kExitDomain;
  } catch (const std::exception& e) {
    err << "error[INTERNAL]: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace mlg::cli
