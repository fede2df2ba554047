#pragma once

#include <map>
#include <string>
#include <vector>

#include "glyphga/extract.hpp"
#include "glyphga/genetic.hpp"
#include "glyphga/raster.hpp"
#include "glyphga/serialize.hpp"

namespace glyphga {

struct EmptyTrainingSet : Error {
  using Error::Error;
};

// Per-character template pools, together with the canvas and parameters the
// glyphs were extracted under.
struct TemplateSet {
  int canvas_width = 100;
  int canvas_height = 100;
  Params params;
  std::map<char32_t, std::vector<Glyph>> entries;
};

struct TrainItem {
  char32_t label = 0;
  BinaryRaster image;
  std::string name;
};

struct TrainResult {
  TemplateSet templates;
  std::vector<std::string> skipped;  // unreadable/blank items, reported not fatal
};

// thin -> normalize -> extract per item, grouped by character.
// Throws EmptyTrainingSet when nothing usable remains.
TrainResult train(const std::vector<TrainItem>& items, const Params& p);

struct RecognitionResult {
  char32_t best_char = 0;
  Deviation best_deviation = 0.0;
  std::map<char32_t, Deviation> per_char;
  bool ga_used = false;
};

// Scores the input glyph against every character: with ga, the evolved pool
// best (rng stream seeded rng_seed ^ character index); without, the best
// plain template deviation. Ties break toward the lowest codepoint.
RecognitionResult recognize(const BinaryRaster& img, const TemplateSet& t, const Params& p,
                            bool ga, int threads = 1);

struct EvalItem {
  char32_t truth = 0;
  BinaryRaster image;
  std::string file;
};

struct Confusion {
  char32_t truth = 0;
  char32_t predicted = 0;
  std::string file;
};

struct EvalReport {
  int total = 0;
  int correct = 0;
  double accuracy = 0.0;  // percent, two decimals, half-up
  std::vector<Confusion> confusions;
  std::vector<std::string> skipped;
};

// Runs recognize over the whole set; per-item failures become skips.
// threads = 0 picks the hardware concurrency; outputs are order-stable and
// independent of the thread count.
EvalReport evaluate(const std::vector<EvalItem>& items, const TemplateSet& t, const Params& p,
                    bool ga, int threads = 0);

// 100 * correct / total, rounded half-up to two decimals.
double accuracy_percent(int correct, int total);

std::string eval_report_to_json(const EvalReport& r);

// Single-document JSON store embedding version, canvas, params and per-
// character glyph lists. load_templates throws MalformedStore.
std::string save_templates(const TemplateSet& t);
TemplateSet load_templates(std::string_view text);

// Minimal UTF-8 helpers for single-codepoint character keys.
std::string encode_utf8(char32_t c);
char32_t decode_single_utf8(std::string_view s);  // throws Error unless exactly one scalar

}  // namespace glyphga
