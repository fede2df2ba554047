// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line each. Exits nonzero when anything fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glyphga/deviation.hpp"
#include "glyphga/genetic.hpp"
#include "glyphga/raster.hpp"
#include "glyphga/recognizer.hpp"
#include "glyphga/render.hpp"
#include "glyphga/synthetic.hpp"
#include "support.hpp"

using namespace glyphga;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Corpus-scale settings: spec defaults except for a desk-sized evolution
// budget so the full run stays well inside its wall-clock bound.
Params corpus_params() {
  Params p;
  p.ga_generations = 4;
  p.pool_cap = 8;
  p.rng_seed = 42;
  return p;
}

struct CorpusOutcome {
  double accuracy_on = 0.0;
  double accuracy_off = 0.0;
  double seconds = 0.0;
  long dominance_checks = 0;
  long dominance_violations = 0;
  int total = 0;
};

// Criteria 1 and 8 share one pass over the synthetic corpus: recognition
// accuracy with and without the GA, plus the pointwise pool-dominance check.
CorpusOutcome run_corpus() {
  const Params p = corpus_params();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<TrainItem> items;
  for (const LabeledImage& img : corpus_templates(p))
    items.push_back({img.label, img.image, img.name});
  const TemplateSet store = train(items, p).templates;

  const std::vector<LabeledImage> tests = corpus_tests(p, 4, p.rng_seed);

  CorpusOutcome out;
  int correct_on = 0, correct_off = 0;
  for (const LabeledImage& test : tests) {
    const RecognitionResult off = recognize(test.image, store, p, false);
    const RecognitionResult on = recognize(test.image, store, p, true);
    ++out.total;
    if (off.best_char == test.label) ++correct_off;
    if (on.best_char == test.label) ++correct_on;
    for (const auto& [c, dev_off] : off.per_char) {
      ++out.dominance_checks;
      if (on.per_char.at(c) > dev_off) ++out.dominance_violations;
    }
  }
  out.accuracy_on = accuracy_percent(correct_on, out.total);
  out.accuracy_off = accuracy_percent(correct_off, out.total);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

void criterion_2() {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", accuracy_percent(379, 385));
  report(2, std::string(buf) == "98.44", "evaluate arithmetic for 379/385 prints " + std::string(buf));
}

void criterion_3() {
  Params p;
  std::mt19937_64 rng(1003);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    const Glyph g = oracle::random_glyph(rng, p);
    if (graph_deviation(g, g, p) != 0.0) ++bad;
  }
  report(3, bad == 0, "200 random glyphs, self-deviation exactly zero, " +
                          std::to_string(bad) + " violations");
}

void criterion_4() {
  Params p;
  std::mt19937_64 rng(1004);
  int undercuts = 0, equalities = 0;
  for (int i = 0; i < 500; ++i) {
    const Glyph g1 = oracle::random_glyph(rng, p, 5, 6);
    const Glyph g2 = i == 0 ? g1 : oracle::random_glyph(rng, p, 5, 6);
    const double greedy = graph_deviation(g1, g2, p);
    const double optimal = oracle::optimal_assignment_deviation(g1, g2, p);
    if (greedy < optimal - 1e-9) ++undercuts;
    if (greedy <= optimal + 1e-9) ++equalities;
  }
  report(4, undercuts == 0 && equalities >= 1,
         "500 pairs, greedy >= optimal, " + std::to_string(undercuts) + " undercuts, " +
             std::to_string(equalities) + " equalities");
}

void criterion_5() {
  Params p;
  std::mt19937_64 rng(1005);
  long mismatches = 0, bad_paths = 0, slots = 0;
  for (int i = 0; i < 500; ++i) {
    const AdjacencyMatrix w = oracle::random_adjacency(rng);
    const PathTable t = find_paths(w, p, rng);
    for (int a = 0; a < w.n; ++a)
      for (int b = 0; b < w.n; ++b)
        for (int l = 1; l <= 4; ++l) {
          ++slots;
          const bool stored = t.predecessor(a, b, l).has_value();
          if (stored != oracle::simple_path_exists(w, a, b, l)) ++mismatches;
          if (!stored) continue;
          const auto path = *reconstruct_path(t, a, b, l);
          std::set<int> uniq(path.begin(), path.end());
          bool ok = static_cast<int>(path.size()) == l + 1 && path.front() == a &&
                    path.back() == b && uniq.size() == path.size();
          for (std::size_t s = 0; ok && s + 1 < path.size(); ++s)
            ok = w.at(path[s], path[s + 1]) > 0;
          if (!ok) ++bad_paths;
        }
  }
  report(5, mismatches == 0 && bad_paths == 0,
         "500 matrices, " + std::to_string(slots) + " slots, " + std::to_string(mismatches) +
             " existence mismatches, " + std::to_string(bad_paths) + " bad reconstructions");
}

void criterion_6() {
  Params p;
  std::mt19937_64 rng(1006);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    Glyph g = oracle::random_glyph(rng, p);
    canonicalize(g);
    MatchAssignment identity;
    for (std::size_t k = 0; k < g.vertices.size(); ++k)
      identity.pairs.emplace_back(static_cast<int>(k), static_cast<int>(k));
    const Glyph out = make_graph(generate_adjacency(g), g, g, identity);
    bool ok = out.vertices == g.vertices;
    std::multiset<int> want, got;
    for (const Edge& e : g.edges) want.insert(static_cast<int>(e.kind));
    for (const Edge& e : out.edges) got.insert(static_cast<int>(e.kind));
    ok = ok && want == got;
    if (!ok) ++bad;
  }
  report(6, bad == 0, "200 adjacency round-trips, " + std::to_string(bad) + " mismatches");
}

void criterion_7() {
  Params p;
  std::mt19937_64 rng(1007);
  long offspring_count = 0;
  int invalid = 0;
  for (int i = 0; i < 1000; ++i) {
    const Glyph g1 = oracle::random_glyph(rng, p);
    const Glyph g2 = oracle::random_glyph(rng, p);
    const CrossoverResult r = crossover(g1, g2, p, rng);
    for (const Offspring& o : r.offspring) {
      ++offspring_count;
      std::string why;
      bool ok = oracle::glyph_is_valid(o.glyph, &why);
      if (ok) {
        try {
          const AdjacencyMatrix w = generate_adjacency(o.glyph);
          for (int a = 0; a < w.n && ok; ++a)
            for (int b = 0; b < w.n && ok; ++b)
              ok = w.at(a, b) <= 3 && w.at(a, b) == w.at(b, a);
        } catch (const Error&) {
          ok = false;
        }
      }
      if (!ok) ++invalid;
    }
  }
  report(7, invalid == 0, "1000 crossovers, " + std::to_string(offspring_count) +
                              " offspring, " + std::to_string(invalid) + " invalid");
}

void criterion_9() {
  auto run_scenario = [](const Scenario& sc, char32_t truth, const char* name) {
    std::vector<TrainItem> items;
    for (const LabeledImage& img : sc.training)
      items.push_back({img.label, img.image, img.name});
    const TemplateSet store = train(items, sc.params).templates;
    const RecognitionResult off = recognize(sc.input.image, store, sc.params, false);
    const RecognitionResult on = recognize(sc.input.image, store, sc.params, true);
    const bool pass = on.best_char == truth;
    std::string detail = std::string(name) + ": ga-on=" +
                         std::string(1, static_cast<char>(on.best_char)) +
                         " (want " + std::string(1, static_cast<char>(truth)) +
                         "), ga-off=" + std::string(1, static_cast<char>(off.best_char)) +
                         " recorded";
    return std::pair(pass, detail);
  };
  const auto [m_ok, m_detail] = run_scenario(scenario_m_between_extremes(), U'M', "M-vs-X");
  const auto [b_ok, b_detail] = run_scenario(scenario_b_mixed_styles(), U'B', "B-vs-S");
  report(9, m_ok && b_ok, m_detail + "; " + b_detail);
}

std::string run_command(const std::string& cmd, int* exit_code) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  char buf[512];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void criterion_10() {
  const Params p = corpus_params();
  const fs::path dir = fs::temp_directory_path() / "glyphga_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // A small labeled corpus on disk: three letters, two jittered tests each.
  const std::set<char32_t> keep{U'A', U'C', U'T'};
  for (const LabeledImage& img : corpus_templates(p)) {
    if (!keep.count(img.label)) continue;
    const fs::path path = dir / "templates" / img.name;
    fs::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << write_p1(img.image);
  }
  for (const LabeledImage& img : corpus_tests(p, 2, 7)) {
    if (!keep.count(img.label)) continue;
    const fs::path path = dir / "tests" / img.name;
    fs::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << write_p1(img.image);
  }

  const std::string cli = GLYPHGA_CLI_PATH;
  int code = 0;
  const std::string store = (dir / "store.json").string();
  run_command(cli + " train --data " + (dir / "templates").string() + " --out " + store, &code);
  if (code != 0) {
    report(10, false, "training run failed");
    return;
  }
  const std::string eval_cmd = cli + " evaluate --data " + (dir / "tests").string() +
                               " --templates " + store +
                               " --seed 11 --generations 4 --pool-cap 8 --report ";
  int code1 = 0, code2 = 0;
  const std::string out1 = run_command(eval_cmd + (dir / "r1.json").string(), &code1);
  const std::string out2 = run_command(eval_cmd + (dir / "r2.json").string(), &code2);
  const bool same_stdout = out1 == out2 && code1 == 0 && code2 == 0;
  const bool same_report = slurp(dir / "r1.json") == slurp(dir / "r2.json") &&
                           !slurp(dir / "r1.json").empty();
  report(10, same_stdout && same_report,
         std::string("two cmd_evaluate runs byte-identical: stdout ") +
             (same_stdout ? "yes" : "no") + ", report " + (same_report ? "yes" : "no"));
}

}  // namespace

int main() {
  const CorpusOutcome corpus = run_corpus();
  report(1,
         corpus.accuracy_on >= 90.0 && corpus.accuracy_on >= corpus.accuracy_off &&
             corpus.seconds <= 300.0,
         "synthetic corpus (" + std::to_string(corpus.total) + " tests): ga-on " +
             fmt(corpus.accuracy_on) + "%, ga-off " + fmt(corpus.accuracy_off) + "%, " +
             fmt(corpus.seconds) + "s");
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  report(8, corpus.dominance_violations == 0,
         std::to_string(corpus.dominance_checks) + " input/character pairs, " +
             std::to_string(corpus.dominance_violations) + " dominance violations");
  criterion_9();
  criterion_10();

  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
