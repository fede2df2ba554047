#include "glyphga/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace glyphga {

int BinaryRaster::ink_count() const {
  return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

namespace {

class PnmScanner {
 public:
  explicit PnmScanner(std::string_view bytes) : data_(bytes) {}

  // Next header/ASCII token, skipping whitespace and '#' comments.
  std::string_view token() {
    skip_filler();
    if (pos_ >= data_.size()) throw MalformedImage("truncated netpbm header");
    const std::size_t begin = pos_;
    while (pos_ < data_.size() && !is_space(data_[pos_]) && data_[pos_] != '#') ++pos_;
    return data_.substr(begin, pos_ - begin);
  }

  int number() {
    const std::string_view t = token();
    int value = 0;
    bool any = false;
    for (char c : t) {
      if (c < '0' || c > '9') throw MalformedImage("non-numeric netpbm header field");
      value = value * 10 + (c - '0');
      if (value > 1 << 28) throw MalformedImage("netpbm dimension out of range");
      any = true;
    }
    if (!any) throw MalformedImage("empty netpbm header field");
    return value;
  }

  // P1 bit stream: digits may run together, comments may appear anywhere.
  int bit() {
    skip_filler();
    if (pos_ >= data_.size()) throw MalformedImage("truncated P1 payload");
    const char c = data_[pos_++];
    if (c == '0') return 0;
    if (c == '1') return 1;
    throw MalformedImage("unexpected character in P1 payload");
  }

  // Consumes the single whitespace byte separating header from binary payload.
  std::string_view binary_payload(std::size_t need) {
    if (pos_ >= data_.size() || !is_space(data_[pos_]))
      throw MalformedImage("missing separator before binary payload");
    ++pos_;
    if (data_.size() - pos_ < need) throw MalformedImage("truncated binary payload");
    return data_.substr(pos_, need);
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  }

  void skip_filler() {
    while (pos_ < data_.size()) {
      if (is_space(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

BinaryRaster load_raster(std::string_view bytes) {
  PnmScanner in(bytes);
  std::string_view magic;
  try {
    magic = in.token();
  } catch (const MalformedImage&) {
    throw MalformedImage("not a netpbm document");
  }
  if (magic.size() != 2 || magic[0] != 'P') throw MalformedImage("bad netpbm magic");
  const char type = magic[1];
  if (type != '1' && type != '2' && type != '4' && type != '5')
    throw MalformedImage("unsupported netpbm type (want P1/P2/P4/P5)");

  const int width = in.number();
  const int height = in.number();
  if (width < 1 || height < 1) throw MalformedImage("zero netpbm dimensions");

  BinaryRaster r(width, height);

  if (type == '1') {
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) r.set(x, y, in.bit() == 1);
    return r;
  }

  if (type == '2') {
    const int maxval = in.number();
    if (maxval < 1) throw MalformedImage("bad graymap maxval");
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        const int v = in.number();
        if (v > maxval) throw MalformedImage("graymap sample above maxval");
        r.set(x, y, 2 * v < maxval);
      }
    return r;
  }

  if (type == '4') {
    const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
    const std::string_view payload = in.binary_payload(row_bytes * height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        const std::uint8_t byte =
            static_cast<std::uint8_t>(payload[y * row_bytes + x / 8]);
        r.set(x, y, (byte >> (7 - x % 8)) & 1);
      }
    return r;
  }

  // P5
  const int maxval = in.number();
  if (maxval < 1 || maxval > 65535) throw MalformedImage("bad graymap maxval");
  const int sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t need = static_cast<std::size_t>(width) * height * sample_bytes;
  const std::string_view payload = in.binary_payload(need);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * width + x) * sample_bytes;
      int v = static_cast<std::uint8_t>(payload[i]);
      if (sample_bytes == 2)
        v = (v << 8) | static_cast<std::uint8_t>(payload[i + 1]);
      r.set(x, y, 2 * v < maxval);
    }
  return r;
}

std::string write_p1(const BinaryRaster& r) {
  std::string out = "P1\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(r.height) * (r.width * 2 + 1));
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      if (x) out += ' ';
      out += r.at(x, y) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

namespace {

// Zhang-Suen neighborhood, clockwise from north: p2..p9.
inline void neighborhood(const BinaryRaster& r, int x, int y, int n[8]) {
  static constexpr int dx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  static constexpr int dy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  for (int i = 0; i < 8; ++i) {
    const int nx = x + dx[i];
    const int ny = y + dy[i];
    n[i] = (r.in_bounds(nx, ny) && r.at(nx, ny)) ? 1 : 0;
  }
}

bool thin_pass(BinaryRaster& r, bool second) {
  std::vector<std::pair<int, int>> doomed;
  int n[8];
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      if (!r.at(x, y)) continue;
      neighborhood(r, x, y, n);
      const int b = std::accumulate(n, n + 8, 0);
      if (b < 2 || b > 6) continue;
      int transitions = 0;
      for (int i = 0; i < 8; ++i)
        if (n[i] == 0 && n[(i + 1) % 8] == 1) ++transitions;
      if (transitions != 1) continue;
      // n[0]=N n[2]=E n[4]=S n[6]=W
      if (!second) {
        if (n[0] * n[2] * n[4] != 0) continue;
        if (n[2] * n[4] * n[6] != 0) continue;
      } else {
        if (n[0] * n[2] * n[6] != 0) continue;
        if (n[0] * n[4] * n[6] != 0) continue;
      }
      doomed.emplace_back(x, y);
    }
  for (auto [x, y] : doomed) r.set(x, y, false);
  return !doomed.empty();
}

}  // namespace

// Background pockets of a few pixels (pinholes left by rasterization) would
// survive thinning as eyelets and read as junctions; closing them first
// keeps the skeleton clean.
void fill_small_holes(BinaryRaster& r, int max_area) {
  std::vector<int> region(r.bits.size(), -1);
  std::vector<std::pair<int, int>> stack;
  int next_region = 0;
  std::vector<int> area;
  std::vector<std::uint8_t> touches_border;
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * r.width + x;
      if (r.at(x, y) || region[idx] >= 0) continue;
      const int id = next_region++;
      area.push_back(0);
      touches_border.push_back(0);
      stack.push_back({x, y});
      region[idx] = id;
      while (!stack.empty()) {
        auto [px, py] = stack.back();
        stack.pop_back();
        ++area[id];
        if (px == 0 || py == 0 || px == r.width - 1 || py == r.height - 1)
          touches_border[id] = 1;
        const int nx4[4] = {px + 1, px - 1, px, px};
        const int ny4[4] = {py, py, py + 1, py - 1};
        for (int k = 0; k < 4; ++k) {
          if (!r.in_bounds(nx4[k], ny4[k]) || r.at(nx4[k], ny4[k])) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny4[k]) * r.width + nx4[k];
          if (region[nidx] < 0) {
            region[nidx] = id;
            stack.push_back({nx4[k], ny4[k]});
          }
        }
      }
    }
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      const int id = region[static_cast<std::size_t>(y) * r.width + x];
      if (id >= 0 && !touches_border[id] && area[id] <= max_area) r.set(x, y, true);
    }
}

// Zhang-Suen can leave two-pixel staircase residue that derails chain walks.
// A sequential mop-up deletes any non-endpoint pixel whose ink neighbors
// form a single contiguous arc, yielding a minimal skeleton while keeping
// topology (each deletion re-evaluates the updated raster).
bool mopup_pass(BinaryRaster& r) {
  bool changed = false;
  int n[8];
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      if (!r.at(x, y)) continue;
      neighborhood(r, x, y, n);
      const int b = std::accumulate(n, n + 8, 0);
      if (b < 2 || b > 6) continue;
      int transitions = 0;
      for (int i = 0; i < 8; ++i)
        if (n[i] == 0 && n[(i + 1) % 8] == 1) ++transitions;
      if (transitions != 1) continue;
      r.set(x, y, false);
      changed = true;
    }
  return changed;
}

BinaryRaster thin(const BinaryRaster& r) {
  BinaryRaster out = r;
  fill_small_holes(out, 12);
  bool changed = true;
  while (changed) {
    changed = thin_pass(out, false);
    changed = thin_pass(out, true) || changed;
  }
  while (mopup_pass(out)) {
  }
  return out;
}

std::pair<BinaryRaster, NormalizationReport> normalize_raster(const BinaryRaster& r,
                                                              const Params& p) {
  p.validate();
  int minx = r.width, miny = r.height, maxx = -1, maxy = -1;
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x)
      if (r.at(x, y)) {
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
      }
  if (maxx < 0) throw EmptyImage("no ink to normalize");

  const int tw = p.canvas_width;
  const int th = p.canvas_height;
  const int count_x = maxx - minx + 1;
  const int count_y = maxy - miny + 1;

  NormalizationReport report;
  report.fx = count_x > 1 ? static_cast<double>(tw) / count_x : 1.0;
  report.fy = count_y > 1 ? static_cast<double>(th) / count_y : 1.0;

  // Pixel mapping uses span ratios so the scaled bounding box reaches the
  // canvas margins; a degenerate axis is centered instead.
  const double sx = count_x > 1 ? static_cast<double>(tw - 1) / (count_x - 1) : 0.0;
  const double sy = count_y > 1 ? static_cast<double>(th - 1) / (count_y - 1) : 0.0;
  const int ox = count_x > 1 ? 0 : (tw - 1) / 2;
  const int oy = count_y > 1 ? 0 : (th - 1) / 2;

  auto map = [&](int x, int y) {
    const int nx = std::clamp(static_cast<int>(std::lround((x - minx) * sx)) + ox, 0, tw - 1);
    const int ny = std::clamp(static_cast<int>(std::lround((y - miny) * sy)) + oy, 0, th - 1);
    return std::pair(nx, ny);
  };

  BinaryRaster out(tw, th);
  auto draw_segment = [&](std::pair<int, int> a, std::pair<int, int> b) {
    int x0 = a.first, y0 = a.second;
    const int x1 = b.first, y1 = b.second;
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int stepx = x0 < x1 ? 1 : -1, stepy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      out.set(x0, y0, true);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += stepx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += stepy;
      }
    }
  };

  // Forward-facing neighbor offsets so each adjacency is joined once. A
  // diagonal join is redundant (and at scale > 1 punches pinholes into the
  // stroke) when an orthogonal corner-mate already carries the connection.
  static constexpr int fdx[4] = {1, -1, 0, 1};
  static constexpr int fdy[4] = {0, 1, 1, 1};
  auto ink = [&](int x, int y) { return r.in_bounds(x, y) && r.at(x, y); };
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      if (!r.at(x, y)) continue;
      out.set(map(x, y).first, map(x, y).second, true);
      for (int k = 0; k < 4; ++k) {
        const int nx = x + fdx[k], ny = y + fdy[k];
        if (!ink(nx, ny)) continue;
        if (fdx[k] != 0 && fdy[k] != 0 && (ink(nx, y) || ink(x, ny))) continue;
        draw_segment(map(x, y), map(nx, ny));
      }
    }

  return {thin(out), report};
}

}  // namespace glyphga
