#include "glyphga/synthetic.hpp"

#include <cmath>
#include <random>

#include "glyphga/render.hpp"

namespace glyphga {

namespace {

// Stroke builder over the unit box (y grows downward), mapped into a margin
// box on the canvas. Curve "through" points are the quadratic midpoints the
// renderer steers through, not extraction max points.
class Pen {
 public:
  explicit Pen(const Params& p) {
    mx_ = 0.12 * (p.canvas_width - 1);
    my_ = 0.12 * (p.canvas_height - 1);
    sx_ = (p.canvas_width - 1) - 2.0 * mx_;
    sy_ = (p.canvas_height - 1) - 2.0 * my_;
  }

  Point map(double ux, double uy) const {
    return Point{static_cast<float>(mx_ + ux * sx_), static_cast<float>(my_ + uy * sy_)};
  }

  void line(double ax, double ay, double bx, double by) {
    const Point a = vertex(map(ax, ay));
    const Point b = vertex(map(bx, by));
    g_.edges.push_back(line_edge(a, b));
  }

  void curve(double ax, double ay, double bx, double by, double tx, double ty) {
    const Point a = vertex(map(ax, ay));
    const Point b = vertex(map(bx, by));
    g_.edges.push_back(curve_edge(a, b, map(tx, ty)));
  }

  // Closed curve: starts at the circle top, max point diametrically below.
  void ring(double cx, double cy, double r) {
    const Point top = vertex(map(cx, cy - r));
    g_.edges.push_back(curve_edge(top, top, map(cx, cy + r)));
  }

  Glyph take() { return std::move(g_); }

 private:
  Point vertex(Point p) {
    const int i = vertex_index_near(g_, p, kPointEps);
    if (i >= 0) return g_.vertices[i];
    g_.vertices.push_back(p);
    return p;
  }

  Glyph g_;
  double mx_, my_, sx_, sy_;
};

using Draw = void (*)(Pen&);

struct LetterSpec {
  char32_t letter;
  std::vector<Draw> styles;
};

const std::vector<LetterSpec>& letter_table() {
  static const std::vector<LetterSpec> table = {
      {U'A',
       {[](Pen& d) {
          d.line(0, 1, .5, 0);
          d.line(.5, 0, 1, 1);
          d.line(.275, .55, .725, .55);
        },
        [](Pen& d) {
          d.line(.1, 1, .5, 0);
          d.line(.5, 0, .9, 1);
          d.line(.32, .45, .68, .45);
        },
        [](Pen& d) {
          d.line(0, 1, .5, 0);
          d.line(.5, 0, 1, 1);
          d.line(.36, .72, .64, .72);
        }}},
      {U'B',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 0, 0, .5, .46, .25);
          d.curve(0, .5, 0, 1, .52, .75);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 0, .45, .04);
          d.line(.45, .04, .45, .4);
          d.line(.45, .4, 0, .44);
          d.line(0, .56, .52, .6);
          d.line(.52, .6, .52, .96);
          d.line(.52, .96, 0, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 0, 0, .42, .40, .21);
          d.curve(0, .42, 0, 1, .56, .71);
        }}},
      {U'C',
       {[](Pen& d) { d.curve(.9, .12, .9, .88, .04, .5); },
        [](Pen& d) { d.curve(.85, .06, .85, .94, .18, .5); }}},
      {U'D',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 1, 0, 0, .78, .5);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 1, 0, 0, .60, .5);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 1, 0, 0, .88, .5);
        }}},
      {U'E',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 0, .8, 0);
          d.line(0, .5, .6, .5);
          d.line(0, 1, .8, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 0, .9, 0);
          d.line(0, .45, .55, .45);
          d.line(0, 1, .9, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 0, .7, 0);
          d.line(0, .55, .7, .55);
          d.line(0, 1, .7, 1);
        }}},
      {U'F',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 0, .8, 0);
          d.line(0, .45, .6, .45);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 0, .9, 0);
          d.line(0, .5, .5, .5);
        }}},
      {U'G',
       {[](Pen& d) {
          d.curve(.85, .12, .8, .78, .05, .5);
          d.line(.6, .6, .97, .6);
        },
        [](Pen& d) {
          d.curve(.8, .08, .75, .82, .08, .48);
          d.line(.55, .62, .95, .62);
        },
        [](Pen& d) {
          d.curve(.88, .16, .84, .74, .03, .52);
          d.line(.62, .56, 1.0, .56);
        }}},
      {U'H',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(1, 0, 1, 1);
          d.line(0, .5, 1, .5);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(1, 0, 1, 1);
          d.line(0, .42, 1, .42);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(1, 0, 1, 1);
          d.line(0, .58, 1, .58);
        }}},
      {U'I',
       {[](Pen& d) { d.line(.5, 0, .5, 1); },
        [](Pen& d) {
          d.line(.5, 0, .5, 1);
          d.line(.3, 0, .7, 0);
          d.line(.3, 1, .7, 1);
        }}},
      {U'J',
       {[](Pen& d) {
          d.line(.6, 0, .6, .5);
          d.curve(.6, .5, .18, .55, .4, .97);
        },
        [](Pen& d) {
          d.line(.25, 0, .95, 0);
          d.line(.6, 0, .6, .48);
          d.curve(.6, .48, .2, .52, .42, .95);
        },
        [](Pen& d) {
          d.line(.62, 0, .62, .55);
          d.curve(.62, .55, .22, .62, .45, .98);
        }}},
      {U'K',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, .5, .9, 0);
          d.line(0, .5, .9, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, .45, .8, 0);
          d.line(0, .45, .85, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, .55, .95, .05);
          d.line(0, .55, .8, 1);
        }}},
      {U'L',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 1, .8, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 1, .95, 1);
        }}},
      {U'M',
       {[](Pen& d) {
          d.line(0, 1, 0, 0);
          d.line(0, 0, .5, .6);
          d.line(.5, .6, 1, 0);
          d.line(1, 0, 1, 1);
        },
        [](Pen& d) {
          d.line(0, 1, .12, 0);
          d.line(.12, 0, .5, .65);
          d.line(.5, .65, .88, 0);
          d.line(.88, 0, 1, 1);
        },
        [](Pen& d) {
          d.line(0, 1, 0, 0);
          d.line(0, 0, .5, .5);
          d.line(.5, .5, 1, 0);
          d.line(1, 0, 1, 1);
        }}},
      {U'N',
       {[](Pen& d) {
          d.line(0, 1, 0, 0);
          d.line(0, 0, 1, 1);
          d.line(1, 1, 1, 0);
        },
        [](Pen& d) {
          d.line(0, 1, 0, 0);
          d.line(0, 0, 1, .93);
          d.line(1, .93, 1, 0);
        }}},
      {U'O',
       {[](Pen& d) { d.ring(.5, .5, .5); }, [](Pen& d) { d.ring(.5, .5, .42); }}},
      {U'P',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 0, 0, .55, .5, .27);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 0, 0, .62, .56, .3);
        }}},
      {U'Q',
       {[](Pen& d) {
          d.ring(.5, .45, .44);
          d.line(.811, .761, 1, 1);
        },
        [](Pen& d) {
          d.ring(.5, .42, .4);
          d.line(.783, .703, 1, 1);
        },
        [](Pen& d) {
          d.ring(.5, .46, .46);
          d.line(.825, .785, 1, 1);
        }}},
      {U'R',
       {[](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 0, 0, .5, .48, .25);
          d.line(0, .5, .85, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.line(0, 0, .5, .04);
          d.line(.5, .04, .5, .46);
          d.line(.5, .46, 0, .5);
          d.line(0, .5, .9, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 0, 1);
          d.curve(0, 0, 0, .55, .52, .28);
          d.line(0, .55, .8, 1);
        }}},
      {U'S',
       {[](Pen& d) {
          d.line(.85, .06, .15, .06);
          d.line(.15, .06, .15, .5);
          d.line(.15, .5, .85, .5);
          d.line(.85, .5, .85, .94);
          d.line(.85, .94, .15, .94);
        },
        [](Pen& d) {
          d.line(.9, .04, .25, .04);
          d.line(.25, .04, .25, .44);
          d.line(.25, .44, .78, .44);
          d.line(.78, .44, .78, .96);
          d.line(.78, .96, .1, .96);
        },
        [](Pen& d) {
          d.line(.8, .1, .2, .1);
          d.line(.2, .1, .2, .55);
          d.line(.2, .55, .8, .55);
          d.line(.8, .55, .8, .9);
          d.line(.8, .9, .2, .9);
        }}},
      {U'T',
       {[](Pen& d) {
          d.line(0, 0, 1, 0);
          d.line(.5, 0, .5, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 1, 0);
          d.line(.45, 0, .45, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 1, 0);
          d.line(.55, 0, .55, 1);
        }}},
      {U'U',
       {[](Pen& d) {
          d.line(0, 0, 0, .6);
          d.curve(0, .6, 1, .6, .5, .98);
          d.line(1, .6, 1, 0);
        },
        [](Pen& d) {
          d.line(0, 0, 0, .72);
          d.curve(0, .72, 1, .72, .5, 1.0);
          d.line(1, .72, 1, 0);
        },
        [](Pen& d) {
          d.line(0, 0, 0, .5);
          d.curve(0, .5, 1, .5, .5, .95);
          d.line(1, .5, 1, 0);
        }}},
      {U'V',
       {[](Pen& d) {
          d.line(0, 0, .5, 1);
          d.line(.5, 1, 1, 0);
        },
        [](Pen& d) {
          d.line(.12, 0, .5, 1);
          d.line(.5, 1, .88, 0);
        }}},
      {U'W',
       {[](Pen& d) {
          d.line(0, 0, .25, 1);
          d.line(.25, 1, .5, .35);
          d.line(.5, .35, .75, 1);
          d.line(.75, 1, 1, 0);
        },
        [](Pen& d) {
          d.line(0, 0, .22, 1);
          d.line(.22, 1, .5, .55);
          d.line(.5, .55, .78, 1);
          d.line(.78, 1, 1, 0);
        },
        [](Pen& d) {
          d.line(0, 0, .25, 1);
          d.line(.25, 1, .5, .2);
          d.line(.5, .2, .75, 1);
          d.line(.75, 1, 1, 0);
        }}},
      {U'X',
       {[](Pen& d) {
          d.line(0, 0, 1, 1);
          d.line(1, 0, 0, 1);
        },
        [](Pen& d) {
          d.line(0, 0, .46, .55);
          d.line(.46, .55, 1, 1);
          d.line(1, 0, .46, .55);
          d.line(.46, .55, 0, 1);
        }}},
      {U'Y',
       {[](Pen& d) {
          d.line(0, 0, .5, .5);
          d.line(1, 0, .5, .5);
          d.line(.5, .5, .5, 1);
        },
        [](Pen& d) {
          d.line(0, 0, .5, .42);
          d.line(1, 0, .5, .42);
          d.line(.5, .42, .5, 1);
        },
        [](Pen& d) {
          d.line(0, 0, .5, .6);
          d.line(1, 0, .5, .6);
          d.line(.5, .6, .5, 1);
        }}},
      {U'Z',
       {[](Pen& d) {
          d.line(0, 0, 1, 0);
          d.line(1, 0, 0, 1);
          d.line(0, 1, 1, 1);
        },
        [](Pen& d) {
          d.line(0, 0, 1, 0);
          d.line(1, 0, .06, 1);
          d.line(.06, 1, 1, 1);
        },
        [](Pen& d) {
          d.line(.1, 0, 1, 0);
          d.line(1, 0, 0, 1);
          d.line(0, 1, .9, 1);
        }}},
  };
  return table;
}

std::string letter_name(char32_t letter) {
  return std::string(1, static_cast<char>(letter));  // the table is ASCII capitals
}

Glyph jitter_glyph(const Glyph& ideal, double amount, std::mt19937_64& rng) {
  auto uniform = [&rng, amount] {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return (2.0 * u - 1.0) * amount;
  };
  std::vector<Point> moved(ideal.vertices.size());
  std::vector<std::pair<float, float>> offsets(ideal.vertices.size());
  for (std::size_t i = 0; i < ideal.vertices.size(); ++i) {
    offsets[i] = {static_cast<float>(uniform()), static_cast<float>(uniform())};
    moved[i] = Point{ideal.vertices[i].x + offsets[i].first,
                     ideal.vertices[i].y + offsets[i].second};
  }
  Glyph out;
  out.vertices = moved;
  for (const Edge& e : ideal.edges) {
    const int a = vertex_index_near(ideal, e.start, kPointEps);
    const int b = vertex_index_near(ideal, e.end, kPointEps);
    if (e.kind == EdgeKind::Line) {
      out.edges.push_back(line_edge(moved[a], moved[b]));
    } else {
      const Point max{e.max_point.x + (offsets[a].first + offsets[b].first) / 2.0f,
                      e.max_point.y + (offsets[a].second + offsets[b].second) / 2.0f};
      out.edges.push_back(curve_edge(moved[a], moved[b], max));
    }
  }
  return out;
}

}  // namespace

std::vector<Glyph> letter_styles(char32_t letter, const Params& p) {
  for (const LetterSpec& spec : letter_table()) {
    if (spec.letter != letter) continue;
    std::vector<Glyph> styles;
    for (Draw draw : spec.styles) {
      Pen pen(p);
      draw(pen);
      styles.push_back(pen.take());
    }
    return styles;
  }
  throw Error("no stroke table entry for that letter");
}

std::vector<LabeledImage> corpus_templates(const Params& p) {
  std::vector<LabeledImage> out;
  for (const LetterSpec& spec : letter_table()) {
    const std::vector<Glyph> styles = letter_styles(spec.letter, p);
    for (std::size_t s = 0; s < styles.size(); ++s) {
      out.push_back({spec.letter,
                     letter_name(spec.letter) + "/t" + std::to_string(s) + ".pbm",
                     render_glyph(styles[s], p)});
    }
  }
  return out;
}

std::vector<LabeledImage> corpus_tests(const Params& p, int per_letter, std::uint64_t seed,
                                       double jitter_frac) {
  const double amount = jitter_frac * std::min(p.canvas_width, p.canvas_height);
  std::vector<LabeledImage> out;
  for (const LetterSpec& spec : letter_table()) {
    const std::vector<Glyph> styles = letter_styles(spec.letter, p);
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (spec.letter + 1)));
    for (int k = 0; k < per_letter; ++k) {
      const Glyph& base = styles[k % styles.size()];
      const Glyph shaken = jitter_glyph(base, amount, rng);
      out.push_back({spec.letter,
                     letter_name(spec.letter) + "/j" + std::to_string(k) + ".pbm",
                     render_glyph(shaken, p)});
    }
  }
  return out;
}

namespace {

LabeledImage rendered(char32_t label, std::string name, const Glyph& g, const Params& p) {
  return {label, std::move(name), render_glyph(g, p)};
}

}  // namespace

Scenario scenario_m_between_extremes() {
  Scenario sc;
  sc.params.beta = 25.0;  // lets the two extreme vee bottoms match as one point

  auto m_with_vee = [&](double v) {
    Pen d(sc.params);
    d.line(0, 1, 0, 0);
    d.line(0, 0, .5, v);
    d.line(.5, v, 1, 0);
    d.line(1, 0, 1, 1);
    return d.take();
  };
  auto x_plain = [&] {
    Pen d(sc.params);
    d.line(0, 0, 1, 1);
    d.line(1, 0, 0, 1);
    return d.take();
  };
  auto x_offset = [&] {
    Pen d(sc.params);
    d.line(0, 0, .5, .48);
    d.line(.5, .48, 1, 1);
    d.line(1, 0, .5, .48);
    d.line(.5, .48, 0, 1);
    return d.take();
  };

  sc.training.push_back(rendered(U'M', "M/deep.pbm", m_with_vee(.86), sc.params));
  sc.training.push_back(rendered(U'M', "M/shallow.pbm", m_with_vee(.50), sc.params));
  sc.training.push_back(rendered(U'X', "X/plain.pbm", x_plain(), sc.params));
  sc.training.push_back(rendered(U'X', "X/offset.pbm", x_offset(), sc.params));
  sc.input = rendered(U'M', "input_m.pbm", m_with_vee(.68), sc.params);
  return sc;
}

Scenario scenario_b_mixed_styles() {
  Scenario sc;

  auto b_curvy = [&] {
    Pen d(sc.params);
    d.line(0, 0, 0, 1);
    d.curve(0, 0, 0, .5, .46, .25);
    d.curve(0, .5, 0, 1, .52, .75);
    return d.take();
  };
  auto b_angular = [&] {
    Pen d(sc.params);
    d.line(0, 0, 0, 1);
    d.line(0, 0, .45, .04);
    d.line(.45, .04, .45, .4);
    d.line(.45, .4, 0, .44);
    d.line(0, .56, .52, .6);
    d.line(.52, .6, .52, .96);
    d.line(.52, .96, 0, 1);
    return d.take();
  };
  auto b_mixed = [&] {
    Pen d(sc.params);
    d.line(0, 0, 0, 1);
    d.curve(0, 0, 0, .5, .46, .25);
    d.line(0, .56, .52, .6);
    d.line(.52, .6, .52, .96);
    d.line(.52, .96, 0, 1);
    return d.take();
  };
  auto s_curvy = [&] {
    Pen d(sc.params);
    d.curve(.85, .1, .5, .5, .18, .16);
    d.curve(.5, .5, .15, .9, .82, .84);
    return d.take();
  };

  sc.training.push_back(rendered(U'B', "B/curvy.pbm", b_curvy(), sc.params));
  sc.training.push_back(rendered(U'B', "B/angular.pbm", b_angular(), sc.params));
  sc.training.push_back(rendered(U'S', "S/curvy.pbm", s_curvy(), sc.params));
  sc.input = rendered(U'B', "input_b.pbm", b_mixed(), sc.params);
  return sc;
}

}  // namespace glyphga
