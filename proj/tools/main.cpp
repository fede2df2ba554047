#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "glyphga/extract.hpp"
#include "glyphga/genetic.hpp"
#include "glyphga/raster.hpp"
#include "glyphga/recognizer.hpp"
#include "glyphga/serialize.hpp"
#include "glyphga/svg.hpp"
#include "glyphga/synthetic.hpp"

namespace fs = std::filesystem;
using namespace glyphga;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitEmptyImage = 3;
constexpr int kExitNoTemplates = 4;
constexpr int kExitBadStore = 5;

struct Fail {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Fail{kExitBadInput, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Fail{kExitBadInput, "cannot write " + path};
}

std::string fmt_dev(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Optional per-command parameter overrides.
struct ParamFlags {
  std::vector<int> canvas;
  std::optional<double> gamma, beta, eta, spread;
  std::optional<int> max_path_len, generations, pool_cap;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;

  void attach(CLI::App* cmd, bool with_ga_knobs) {
    cmd->add_option("--canvas", canvas, "canvas size in units (width height)")
        ->expected(2);
    cmd->add_option("--gamma", gamma, "curve-test probe arc distance");
    cmd->add_option("--beta", beta, "near-circle / vertex dedup threshold");
    cmd->add_option("--eta", eta, "line-vs-curve mismatch overhead");
    cmd->add_option("--line-angle-spread", spread, "max angle spread still read as a line");
    cmd->add_option("--max-path-len", max_path_len, "crossover path cap in edges");
    if (with_ga_knobs) {
      cmd->add_option("--generations", generations, "evolution rounds per character");
      cmd->add_option("--pool-cap", pool_cap, "population cap per character");
      cmd->add_option("--seed", seed, "rng seed");
    }
  }

  // Applies overrides onto base; when `stored` is set, differing values are
  // reported since deviations are only comparable under one parameter set.
  Params apply(Params base, bool stored) const {
    auto warn = [&](const char* flag) {
      if (stored) std::cerr << "warning: " << flag << " overrides the stored value\n";
    };
    if (!canvas.empty()) {
      if (canvas[0] != base.canvas_width || canvas[1] != base.canvas_height) warn("--canvas");
      base.canvas_width = canvas[0];
      base.canvas_height = canvas[1];
    }
    if (gamma && *gamma != base.gamma) warn("--gamma");
    if (gamma) base.gamma = *gamma;
    if (beta && *beta != base.beta) warn("--beta");
    if (beta) base.beta = *beta;
    if (eta && *eta != base.eta) warn("--eta");
    if (eta) base.eta = *eta;
    if (spread && *spread != base.line_angle_spread_max) warn("--line-angle-spread");
    if (spread) base.line_angle_spread_max = *spread;
    if (max_path_len && *max_path_len != base.max_path_len) warn("--max-path-len");
    if (max_path_len) base.max_path_len = *max_path_len;
    if (generations && *generations != base.ga_generations) warn("--generations");
    if (generations) base.ga_generations = *generations;
    if (pool_cap && *pool_cap != base.pool_cap) warn("--pool-cap");
    if (pool_cap) base.pool_cap = *pool_cap;
    if (seed) base.rng_seed = *seed;
    try {
      base.validate();
    } catch (const Error& e) {
      throw Fail{kExitBadInput, std::string("invalid parameters: ") + e.what()};
    }
    return base;
  }
};

BinaryRaster load_image_file(const std::string& path) {
  const std::string bytes = read_file(path);
  try {
    return load_raster(bytes);
  } catch (const MalformedImage& e) {
    throw Fail{kExitBadInput, path + ": " + e.what()};
  }
}

bool is_image_file(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".pbm" || ext == ".pgm";
}

// <dir>/<char>/<files>.p[bg]m
std::vector<TrainItem> load_data_dir(const std::string& dir) {
  std::vector<TrainItem> items;
  std::error_code ec;
  fs::directory_iterator top(dir, ec);
  if (ec) throw Fail{kExitBadInput, "cannot read directory " + dir};

  std::vector<fs::path> subdirs;
  for (const auto& entry : top)
    if (entry.is_directory()) subdirs.push_back(entry.path());
  std::sort(subdirs.begin(), subdirs.end());

  for (const fs::path& sub : subdirs) {
    char32_t label;
    try {
      label = decode_single_utf8(sub.filename().string());
    } catch (const Error&) {
      std::cerr << "warning: skipping directory " << sub.string()
                << " (name is not a single character)\n";
      continue;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(sub))
      if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      try {
        items.push_back({label, load_image_file(f.string()),
                         sub.filename().string() + "/" + f.filename().string()});
      } catch (const Fail& fail) {
        std::cerr << "warning: " << fail.message << " (skipped)\n";
      }
    }
  }
  return items;
}

std::string label_str(char32_t c) { return encode_utf8(c); }

TemplateSet load_store_file(const std::string& path) {
  const std::string bytes = read_file(path);
  try {
    return load_templates(bytes);
  } catch (const MalformedStore& e) {
    throw Fail{kExitBadStore, path + ": " + e.what()};
  }
}

int cmd_extract(const std::string& image, const std::string& json_out,
                const std::string& svg_out, const ParamFlags& flags) {
  const Params p = flags.apply(Params{}, false);
  const BinaryRaster raster = load_image_file(image);
  Glyph g;
  try {
    g = extract_graph(normalize_raster(thin(raster), p).first, p);
  } catch (const EmptyImage& e) {
    throw Fail{kExitEmptyImage, image + ": " + e.what()};
  }
  if (!json_out.empty()) write_file(json_out, glyph_to_json(g));
  if (!svg_out.empty()) write_file(svg_out, glyph_to_svg(g, p));

  int lines = 0, curves = 0;
  for (const Edge& e : g.edges) (e.kind == EdgeKind::Line ? lines : curves)++;
  std::string summary = std::to_string(g.vertices.size()) +
                        (g.vertices.size() == 1 ? " vertex" : " vertices");
  if (lines) summary += ", " + std::to_string(lines) + (lines == 1 ? " line" : " lines");
  if (curves) summary += ", " + std::to_string(curves) + (curves == 1 ? " curve" : " curves");
  if (!lines && !curves) summary += ", 0 edges";
  std::cout << summary << "\n";
  return 0;
}

int cmd_train(const std::string& dir, const std::string& out, const ParamFlags& flags) {
  const Params p = flags.apply(Params{}, false);
  const std::vector<TrainItem> items = load_data_dir(dir);
  if (items.empty()) throw Fail{kExitNoTemplates, "no usable templates under " + dir};
  TrainResult result;
  try {
    result = train(items, p);
  } catch (const EmptyTrainingSet& e) {
    throw Fail{kExitNoTemplates, e.what()};
  }
  write_file(out, save_templates(result.templates));
  for (const auto& [c, glyphs] : result.templates.entries)
    std::cout << label_str(c) << ": " << glyphs.size() << "\n";
  for (const std::string& s : result.skipped)
    std::cerr << "warning: skipped blank image " << s << "\n";
  std::cout << "stored " << result.templates.entries.size() << " characters -> " << out << "\n";
  return 0;
}

int cmd_recognize(const std::string& image, const std::string& store_path, bool no_ga,
                  const ParamFlags& flags) {
  const TemplateSet t = load_store_file(store_path);
  const Params p = flags.apply(t.params, true);
  const BinaryRaster raster = load_image_file(image);
  RecognitionResult r;
  try {
    r = recognize(raster, t, p, !no_ga, flags.threads.value_or(1));
  } catch (const EmptyImage& e) {
    throw Fail{kExitEmptyImage, image + ": " + e.what()};
  }
  std::cout << "best: " << label_str(r.best_char) << "\n";
  std::cout << "deviation: " << fmt_dev(r.best_deviation) << "\n";
  std::cout << "per-character:\n";
  std::vector<std::pair<char32_t, Deviation>> rows(r.per_char.begin(), r.per_char.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& [c, dev] : rows)
    std::cout << "  " << label_str(c) << " " << fmt_dev(dev) << "\n";
  return 0;
}

int cmd_evaluate(const std::string& dir, const std::string& store_path, bool no_ga,
                 const std::string& report_path, const ParamFlags& flags) {
  const TemplateSet t = load_store_file(store_path);
  const Params p = flags.apply(t.params, true);
  const std::vector<TrainItem> raw = load_data_dir(dir);
  if (raw.empty()) throw Fail{kExitBadInput, "no test images under " + dir};
  std::vector<EvalItem> items;
  items.reserve(raw.size());
  for (const TrainItem& item : raw) items.push_back({item.label, item.image, item.name});

  const EvalReport report = evaluate(items, t, p, !no_ga, flags.threads.value_or(0));
  char acc[32];
  std::snprintf(acc, sizeof(acc), "%.2f", report.accuracy);
  std::cout << "accuracy: " << acc << "\n";
  std::cout << "total: " << report.total << " correct: " << report.correct
            << " skipped: " << report.skipped.size() << "\n";
  if (!report.confusions.empty()) {
    std::cout << "confusions:\n";
    for (const Confusion& c : report.confusions)
      std::cout << "  " << label_str(c.truth) << " -> " << label_str(c.predicted) << " ("
                << c.file << ")\n";
  }
  if (!report_path.empty()) write_file(report_path, eval_report_to_json(report));
  return 0;
}

int cmd_crossover_demo(const std::string& image_a, const std::string& image_b,
                       const std::string& out_dir, const ParamFlags& flags) {
  const Params p = flags.apply(Params{}, false);
  const BinaryRaster ra = load_image_file(image_a);
  const BinaryRaster rb = load_image_file(image_b);
  Glyph ga, gb;
  try {
    ga = extract_graph(normalize_raster(thin(ra), p).first, p);
  } catch (const EmptyImage& e) {
    throw Fail{kExitEmptyImage, image_a + ": " + e.what()};
  }
  try {
    gb = extract_graph(normalize_raster(thin(rb), p).first, p);
  } catch (const EmptyImage& e) {
    throw Fail{kExitEmptyImage, image_b + ": " + e.what()};
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Fail{kExitBadInput, "cannot create " + out_dir};

  std::mt19937_64 rng(p.rng_seed);
  const CrossoverResult result = crossover(ga, gb, p, rng);
  for (std::size_t k = 0; k < result.offspring.size(); ++k) {
    const Offspring& o = result.offspring[k];
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(glyph_to_json(o.glyph));
    nlohmann::ordered_json lineage;
    lineage["parents"] = {o.lineage.parent_a, o.lineage.parent_b};
    if (o.lineage.splice_from >= 0) {
      lineage["splice"] = {o.lineage.splice_from, o.lineage.splice_to};
      lineage["removed_len"] = o.lineage.removed_len;
      lineage["added_len"] = o.lineage.added_len;
    } else {
      lineage["splice"] = nullptr;
    }
    j["lineage"] = std::move(lineage);
    const std::string stem = out_dir + "/offspring_" + std::to_string(k);
    write_file(stem + ".json", j.dump(2) + "\n");
    write_file(stem + ".svg", glyph_to_svg(o.glyph, p));
  }
  std::cout << "offspring: " << result.offspring.size() << " (aborted: " << result.aborted
            << ")\n";
  return 0;
}

int cmd_gen_corpus(const std::string& out_dir, int tests_per_letter, const ParamFlags& flags) {
  const Params p = flags.apply(Params{}, false);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Fail{kExitBadInput, "cannot create " + out_dir};

  const std::vector<LabeledImage> templates = corpus_templates(p);
  const std::vector<LabeledImage> tests = corpus_tests(p, tests_per_letter, p.rng_seed);
  for (const LabeledImage& img : templates) {
    const fs::path path = fs::path(out_dir) / "templates" / img.name;
    fs::create_directories(path.parent_path());
    write_file(path.string(), write_p1(img.image));
  }
  for (const LabeledImage& img : tests) {
    const fs::path path = fs::path(out_dir) / "tests" / img.name;
    fs::create_directories(path.parent_path());
    write_file(path.string(), write_p1(img.image));
  }
  std::cout << "templates: " << templates.size() << "\n";
  std::cout << "tests: " << tests.size() << "\n";
  return 0;
}

int cmd_inspect(const std::string& store_path) {
  const TemplateSet t = load_store_file(store_path);
  std::cout << "canvas: " << t.canvas_width << "x" << t.canvas_height << "\n";
  std::cout << "gamma " << t.params.gamma << ", beta " << t.params.beta << ", eta "
            << t.params.eta << ", line-angle-spread " << t.params.line_angle_spread_max
            << ", max-path-len " << t.params.max_path_len << "\n";
  std::size_t total = 0;
  for (const auto& [c, glyphs] : t.entries) {
    std::cout << "  " << label_str(c) << ": " << glyphs.size() << "\n";
    total += glyphs.size();
  }
  std::cout << "characters: " << t.entries.size() << ", templates: " << total << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"offline handwritten character recognition over line/curve glyph graphs"};
  app.require_subcommand(1);

  std::string image, image_b, json_out, svg_out, data_dir, store_path, report_path, out_dir;
  bool no_ga = false;
  int tests_per_letter = 4;

  auto* extract = app.add_subcommand("extract", "image -> glyph (JSON/SVG)");
  extract->add_option("image", image, "input P1/P2/P4/P5 image")->required();
  extract->add_option("--json", json_out, "write glyph JSON here");
  extract->add_option("--svg", svg_out, "write debug SVG here");
  ParamFlags extract_flags;
  extract_flags.attach(extract, false);

  auto* train_cmd = app.add_subcommand("train", "build a template store from <dir>/<char>/*.p[bg]m");
  train_cmd->add_option("--data", data_dir, "training data directory")->required();
  train_cmd->add_option("--out", store_path, "template store output path")->required();
  ParamFlags train_flags;
  train_flags.attach(train_cmd, true);

  auto* recognize_cmd = app.add_subcommand("recognize", "recognize one image against a store");
  recognize_cmd->add_option("image", image, "input image")->required();
  recognize_cmd->add_option("--templates", store_path, "template store")->required();
  recognize_cmd->add_flag("--no-ga", no_ga, "plain template matching, no evolution");
  ParamFlags recognize_flags;
  recognize_flags.attach(recognize_cmd, true);
  recognize_cmd->add_option("--threads", recognize_flags.threads, "worker threads");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a labeled corpus against a store");
  evaluate_cmd->add_option("--data", data_dir, "test data directory")->required();
  evaluate_cmd->add_option("--templates", store_path, "template store")->required();
  evaluate_cmd->add_flag("--no-ga", no_ga, "plain template matching, no evolution");
  evaluate_cmd->add_option("--report", report_path, "write the JSON report here");
  ParamFlags evaluate_flags;
  evaluate_flags.attach(evaluate_cmd, true);
  evaluate_cmd->add_option("--threads", evaluate_flags.threads, "worker threads");

  auto* demo = app.add_subcommand("crossover-demo", "emit every offspring of two images");
  demo->add_option("imageA", image, "first parent image")->required();
  demo->add_option("imageB", image_b, "second parent image")->required();
  demo->add_option("--out", out_dir, "output directory")->required();
  ParamFlags demo_flags;
  demo_flags.attach(demo, true);

  auto* gen = app.add_subcommand("gen-corpus", "write the synthetic block-capital corpus");
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_option("--tests", tests_per_letter, "jittered test images per letter");
  ParamFlags gen_flags;
  gen_flags.attach(gen, true);

  auto* inspect = app.add_subcommand("inspect", "summarize a template store");
  inspect->add_option("--templates", store_path, "template store")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) return cmd_extract(image, json_out, svg_out, extract_flags);
    if (train_cmd->parsed()) return cmd_train(data_dir, store_path, train_flags);
    if (recognize_cmd->parsed())
      return cmd_recognize(image, store_path, no_ga, recognize_flags);
    if (evaluate_cmd->parsed())
      return cmd_evaluate(data_dir, store_path, no_ga, report_path, evaluate_flags);
    if (demo->parsed()) return cmd_crossover_demo(image, image_b, out_dir, demo_flags);
    if (gen->parsed()) return cmd_gen_corpus(out_dir, tests_per_letter, gen_flags);
    if (inspect->parsed()) return cmd_inspect(store_path);
  } catch (const Fail& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const MalformedStore& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadStore;
  } catch (const EmptyImage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmptyImage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
