#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glyphga/geometry.hpp"
#include "glyphga/raster.hpp"

namespace glyphga {

struct LabeledImage {
  char32_t label = 0;
  std::string name;
  BinaryRaster image;
};

// Ideal stroke glyphs for the 26 block capitals, two or three styles each
// (69 in total). These are render sources; graphs for matching always come
// from the extraction pipeline.
std::vector<Glyph> letter_styles(char32_t letter, const Params& p);

// Renders every style of every letter: the training corpus.
std::vector<LabeledImage> corpus_templates(const Params& p);

// Test images: per letter, `per_letter` re-rasterizations with every stroke
// vertex jittered independently by up to `jitter_frac` of the canvas
// (curve through-points follow the mean shift of their endpoints).
std::vector<LabeledImage> corpus_tests(const Params& p, int per_letter, std::uint64_t seed,
                                       double jitter_frac = 0.08);

struct Scenario {
  Params params;
  std::vector<LabeledImage> training;
  LabeledImage input;
};

// Distance-optimization fixture: an M with a mid-depth center vee, templates
// with extreme vees on either side, X as the distractor.
Scenario scenario_m_between_extremes();

// Style-optimization fixture: a B whose top bowl is curved like the first
// template and whose bottom is angular like the second, S as the distractor.
Scenario scenario_b_mixed_styles();

}  // namespace glyphga
