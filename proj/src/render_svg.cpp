#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "becprobe/sweep.hpp"

namespace becprobe {

namespace {

// Monotone-luminance color scale (dark violet -> yellow), 9 anchors with
// linear interpolation; perceptually ordered so larger E always reads lighter.
constexpr unsigned char kLut[9][3] = {
    {0x44, 0x01, 0x54}, {0x47, 0x2D, 0x7B}, {0x3B, 0x52, 0x8B},
    {0x2C, 0x72, 0x8E}, {0x21, 0x91, 0x8C}, {0x28, 0xAE, 0x80},
    {0x5E, 0xC9, 0x62}, {0xAD, 0xDC, 0x30}, {0xFD, 0xE7, 0x25}};

std::string color(double v) {
  v = std::min(1.0, std::max(0.0, v));
  const double x = v * 8.0;
  const int i = std::min(7, static_cast<int>(x));
  const double f = x - i;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X",
                static_cast<int>(std::lround(kLut[i][0] + f * (kLut[i + 1][0] - kLut[i][0]))),
                static_cast<int>(std::lround(kLut[i][1] + f * (kLut[i + 1][1] - kLut[i][1]))),
                static_cast<int>(std::lround(kLut[i][2] + f * (kLut[i + 1][2] - kLut[i][2]))));
  return buf;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fixed1(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void text(std::string& s, double x, double y, const std::string& body,
          const char* anchor, const char* extra = "") {
  s += "<text x=\"" + fixed1(x) + "\" y=\"" + fixed1(y) +
       "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"";
  s += anchor;
  s += "\"";
  s += extra;
  s += ">" + body + "</text>\n";
}

}  // namespace

std::string render_heatmap(const std::vector<ResultRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("render_heatmap: no records");

  std::vector<double> ts, ns;
  ts.reserve(records.size());
  ns.reserve(records.size());
  for (const ResultRecord& r : records) {
    ts.push_back(r.t);
    ns.push_back(r.n);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  const size_t T = ts.size(), N = ns.size();
  std::vector<int> count(T * N, 0);
  std::vector<double> value(T * N, 0.0);
  for (const ResultRecord& r : records) {
    const size_t it = std::lower_bound(ts.begin(), ts.end(), r.t) - ts.begin();
    const size_t in = std::lower_bound(ns.begin(), ns.end(), r.n) - ns.begin();
    const size_t idx = it * N + in;
    if (++count[idx] > 1)
      throw std::invalid_argument("render_heatmap: duplicate grid cell at t = " +
                                  num(r.t) + ", n = " + num(r.n));
    value[idx] = r.weighted_entanglement;
  }
  for (size_t it = 0; it < T; ++it)
    for (size_t in = 0; in < N; ++in)
      if (count[it * N + in] == 0)
        throw std::invalid_argument(
            "render_heatmap: records do not form a rectangular t-n grid; "
            "missing cell at t = " + num(ts[it]) + ", n = " + num(ns[in]));

  double vmin = value[0], vmax = value[0];
  for (double v : value) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const double span = vmax - vmin;
  // A uniform surface renders as a single mid-scale color; the legend then
  // shows one value.
  auto norm = [&](double v) { return span > 0.0 ? (v - vmin) / span : 0.5; };

  const int ml = 90, mt = 40, mr = 150, mb = 64;
  const int cw = std::max(2, 720 / static_cast<int>(T));
  const int ch = std::max(2, 480 / static_cast<int>(N));
  const int pw = cw * static_cast<int>(T), ph = ch * static_cast<int>(N);
  const int W = ml + pw + mr, H = mt + ph + mb;

  std::string s;
  s.reserve(records.size() * 64 + 4096);
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
       "\" height=\"" + std::to_string(H) + "\" viewBox=\"0 0 " +
       std::to_string(W) + " " + std::to_string(H) + "\">\n";
  s += "<rect width=\"" + std::to_string(W) + "\" height=\"" + std::to_string(H) +
       "\" fill=\"white\"/>\n";
  text(s, ml + pw / 2.0, 24.0, "weighted entanglement E", "middle");

  for (size_t it = 0; it < T; ++it) {
    for (size_t in = 0; in < N; ++in) {
      const int x = ml + static_cast<int>(it) * cw;
      const int y = mt + (static_cast<int>(N) - 1 - static_cast<int>(in)) * ch;
      s += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
           "\" width=\"" + std::to_string(cw) + "\" height=\"" +
           std::to_string(ch) + "\" fill=\"" + color(norm(value[it * N + in])) +
           "\"/>\n";
    }
  }
  s += "<rect x=\"" + std::to_string(ml) + "\" y=\"" + std::to_string(mt) +
       "\" width=\"" + std::to_string(pw) + "\" height=\"" + std::to_string(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";

  // x axis: t
  text(s, ml + cw / 2.0, mt + ph + 18.0, num(ts.front()), "middle");
  if (T > 2) text(s, ml + pw / 2.0, mt + ph + 18.0, num(ts[T / 2]), "middle");
  text(s, ml + pw - cw / 2.0, mt + ph + 18.0, num(ts.back()), "middle");
  text(s, ml + pw / 2.0, mt + ph + 42.0, "t = T / T_c", "middle");
  // y axis: n
  text(s, ml - 8.0, mt + ph - ch / 2.0 + 4.0, num(ns.front()), "end");
  if (N > 2) text(s, ml - 8.0, mt + ph / 2.0 + 4.0, num(ns[N / 2]), "end");
  text(s, ml - 8.0, mt + ch / 2.0 + 4.0, num(ns.back()), "end");
  text(s, 16.0, mt + ph / 2.0, "n [cm^-3]", "middle",
       (" transform=\"rotate(-90 16 " + fixed1(mt + ph / 2.0) + ")\"").c_str());

  // legend: vertical bar, max at top
  const int lx = ml + pw + 34, lw = 18;
  const int seg = 64;
  for (int i = 0; i < seg; ++i) {
    const double v = 1.0 - (i + 0.5) / seg;
    const double y0 = mt + ph * static_cast<double>(i) / seg;
    const double hseg = ph / static_cast<double>(seg);
    s += "<rect x=\"" + std::to_string(lx) + "\" y=\"" + fixed1(y0) +
         "\" width=\"" + std::to_string(lw) + "\" height=\"" + fixed1(hseg + 0.5) +
         "\" fill=\"" + color(v) + "\"/>\n";
  }
  s += "<rect x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(mt) +
       "\" width=\"" + std::to_string(lw) + "\" height=\"" + std::to_string(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  text(s, lx + lw + 6.0, mt + 10.0, num(vmax), "start");
  text(s, lx + lw + 6.0, mt + ph / 2.0 + 4.0, num(0.5 * (vmin + vmax)), "start");
  text(s, lx + lw + 6.0, mt + ph - 2.0, num(vmin), "start");

  s += "</svg>\n";
  return s;
}

}  // namespace becprobe
