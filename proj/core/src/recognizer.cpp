#include "glyphga/recognizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "json_detail.hpp"

namespace glyphga {

TrainResult train(const std::vector<TrainItem>& items, const Params& p) {
  if (items.empty()) throw EmptyTrainingSet("no training items");
  p.validate();
  TrainResult out;
  out.templates.canvas_width = p.canvas_width;
  out.templates.canvas_height = p.canvas_height;
  out.templates.params = p;
  for (const TrainItem& item : items) {
    try {
      const BinaryRaster normalized = normalize_raster(thin(item.image), p).first;
      out.templates.entries[item.label].push_back(extract_graph(normalized, p));
    } catch (const EmptyImage&) {
      out.skipped.push_back(item.name.empty() ? "<unnamed>" : item.name);
    }
  }
  if (out.templates.entries.empty())
    throw EmptyTrainingSet("no usable training items after extraction");
  return out;
}

namespace {

Deviation score_character(const std::vector<Glyph>& templates, const Glyph& input,
                          const Params& p, bool ga, std::uint64_t char_index) {
  if (!ga) {
    Deviation best = std::numeric_limits<Deviation>::infinity();
    for (const Glyph& t : templates) best = std::min(best, graph_deviation(t, input, p));
    return best;
  }
  std::mt19937_64 rng(p.rng_seed ^ char_index);
  return evolve_pool(templates, input, p, rng).best;
}

}  // namespace

RecognitionResult recognize(const BinaryRaster& img, const TemplateSet& t, const Params& p,
                            bool ga, int threads) {
  if (t.entries.empty()) throw EmptyTemplates("template set has no characters");
  p.validate();
  const BinaryRaster normalized = normalize_raster(thin(img), p).first;
  const Glyph input = extract_graph(normalized, p);

  std::vector<std::pair<char32_t, const std::vector<Glyph>*>> chars;
  chars.reserve(t.entries.size());
  for (const auto& [c, glyphs] : t.entries) chars.emplace_back(c, &glyphs);

  std::vector<Deviation> devs(chars.size());
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(chars.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < chars.size(); ++i)
      devs[i] = score_character(*chars[i].second, input, p, ga, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < chars.size(); i = next.fetch_add(1))
          devs[i] = score_character(*chars[i].second, input, p, ga, i);
      });
    for (std::thread& w : workers) w.join();
  }

  RecognitionResult r;
  r.ga_used = ga;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    r.per_char[chars[i].first] = devs[i];
    if (i == 0 || devs[i] < r.best_deviation) {
      r.best_deviation = devs[i];
      r.best_char = chars[i].first;
    }
  }
  return r;
}

double accuracy_percent(int correct, int total) {
  if (total <= 0) return 0.0;
  return std::floor(10000.0 * correct / total + 0.5) / 100.0;
}

EvalReport evaluate(const std::vector<EvalItem>& items, const TemplateSet& t, const Params& p,
                    bool ga, int threads) {
  EvalReport report;
  struct Outcome {
    bool skipped = false;
    char32_t predicted = 0;
  };
  std::vector<Outcome> outcomes(items.size());

  auto run_item = [&](std::size_t i) {
    try {
      outcomes[i].predicted = recognize(items[i].image, t, p, ga, 1).best_char;
    } catch (const Error&) {
      outcomes[i].skipped = true;
    }
  };

  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(items.size(), 1))));
  if (threads <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) run_item(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1))
          run_item(i);
      });
    for (std::thread& w : workers) w.join();
  }

  for (std::size_t i = 0; i < items.size(); ++i) {
    if (outcomes[i].skipped) {
      report.skipped.push_back(items[i].file);
      continue;
    }
    ++report.total;
    if (outcomes[i].predicted == items[i].truth) {
      ++report.correct;
    } else {
      report.confusions.push_back({items[i].truth, outcomes[i].predicted, items[i].file});
    }
  }
  report.accuracy = accuracy_percent(report.correct, report.total);
  return report;
}

std::string encode_utf8(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
  return out;
}

char32_t decode_single_utf8(std::string_view s) {
  if (s.empty()) throw Error("empty character key");
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  char32_t c = 0;
  std::size_t len = 0;
  if (byte(0) < 0x80) {
    c = byte(0);
    len = 1;
  } else if ((byte(0) >> 5) == 0x6) {
    len = 2;
    c = byte(0) & 0x1F;
  } else if ((byte(0) >> 4) == 0xE) {
    len = 3;
    c = byte(0) & 0x0F;
  } else if ((byte(0) >> 3) == 0x1E) {
    len = 4;
    c = byte(0) & 0x07;
  } else {
    throw Error("invalid UTF-8 character key");
  }
  if (s.size() != len) throw Error("character key must be a single codepoint");
  for (std::size_t i = 1; i < len; ++i) {
    if ((byte(i) >> 6) != 0x2) throw Error("invalid UTF-8 continuation byte");
    c = (c << 6) | (byte(i) & 0x3F);
  }
  return c;
}

namespace {

using detail::ordered_json;

ordered_json params_to_json(const Params& p) {
  ordered_json j;
  j["gamma"] = p.gamma;
  j["beta"] = p.beta;
  j["eta"] = p.eta;
  j["line_angle_spread_max"] = p.line_angle_spread_max;
  j["max_path_len"] = p.max_path_len;
  j["ga_generations"] = p.ga_generations;
  j["pool_cap"] = p.pool_cap;
  j["rng_seed"] = p.rng_seed;
  return j;
}

Params params_from_json(const ordered_json& j, int canvas_w, int canvas_h) {
  if (!j.is_object()) throw MalformedStore("params must be an object");
  Params p;
  p.canvas_width = canvas_w;
  p.canvas_height = canvas_h;
  auto number = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw MalformedStore(std::string("param ") + key + " must be a number");
    return j[key].get<double>();
  };
  p.gamma = number("gamma", p.gamma);
  p.beta = number("beta", p.beta);
  p.eta = number("eta", p.eta);
  p.line_angle_spread_max = number("line_angle_spread_max", p.line_angle_spread_max);
  p.max_path_len = static_cast<int>(number("max_path_len", p.max_path_len));
  p.ga_generations = static_cast<int>(number("ga_generations", p.ga_generations));
  p.pool_cap = static_cast<int>(number("pool_cap", p.pool_cap));
  p.rng_seed = j.contains("rng_seed") && j["rng_seed"].is_number_unsigned()
                   ? j["rng_seed"].get<std::uint64_t>()
                   : static_cast<std::uint64_t>(number("rng_seed", static_cast<double>(p.rng_seed)));
  try {
    p.validate();
  } catch (const Error& e) {
    throw MalformedStore(std::string("stored params invalid: ") + e.what());
  }
  return p;
}

}  // namespace

std::string save_templates(const TemplateSet& t) {
  ordered_json j;
  j["version"] = 1;
  j["canvas"] = ordered_json::array({t.canvas_width, t.canvas_height});
  j["params"] = params_to_json(t.params);
  ordered_json chars = ordered_json::object();
  for (const auto& [c, glyphs] : t.entries) {
    ordered_json list = ordered_json::array();
    for (const Glyph& g : glyphs) list.push_back(detail::glyph_to_json_value(g));
    chars[encode_utf8(c)] = std::move(list);
  }
  j["characters"] = std::move(chars);
  return j.dump(2) + "\n";
}

TemplateSet load_templates(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedStore(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw MalformedStore("store must be a JSON object");
  if (!j.contains("version")) throw MalformedStore("store is missing \"version\"");
  if (!j["version"].is_number_integer() || j["version"].get<int>() != 1)
    throw MalformedStore("unknown store version");
  if (!j.contains("canvas") || !j["canvas"].is_array() || j["canvas"].size() != 2 ||
      !j["canvas"][0].is_number_integer() || !j["canvas"][1].is_number_integer())
    throw MalformedStore("store needs a [width, height] canvas");

  TemplateSet t;
  t.canvas_width = j["canvas"][0].get<int>();
  t.canvas_height = j["canvas"][1].get<int>();
  if (t.canvas_width < 2 || t.canvas_height < 2) throw MalformedStore("canvas too small");
  t.params = params_from_json(j.contains("params") ? j["params"] : ordered_json::object(),
                              t.canvas_width, t.canvas_height);

  if (!j.contains("characters") || !j["characters"].is_object())
    throw MalformedStore("store needs a characters object");
  for (const auto& [key, list] : j["characters"].items()) {
    char32_t c;
    try {
      c = decode_single_utf8(key);
    } catch (const Error& e) {
      throw MalformedStore(std::string("bad character key: ") + e.what());
    }
    if (!list.is_array() || list.empty())
      throw MalformedStore("every character needs a non-empty glyph list");
    std::vector<Glyph> glyphs;
    for (const auto& jg : list) glyphs.push_back(detail::glyph_from_json_value(jg));
    t.entries[c] = std::move(glyphs);
  }
  if (t.entries.empty()) throw MalformedStore("store has no characters");
  return t;
}

std::string eval_report_to_json(const EvalReport& r) {
  ordered_json j;
  j["total"] = r.total;
  j["correct"] = r.correct;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", r.accuracy);
  j["accuracy"] = ordered_json::parse(buf);
  ordered_json confusions = ordered_json::array();
  for (const Confusion& c : r.confusions) {
    ordered_json jc;
    jc["truth"] = encode_utf8(c.truth);
    jc["predicted"] = encode_utf8(c.predicted);
    jc["file"] = c.file;
    confusions.push_back(std::move(jc));
  }
  j["confusions"] = std::move(confusions);
  j["skipped"] = r.skipped;
  return j.dump(2) + "\n";
}

}  // namespace glyphga
