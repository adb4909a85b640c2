#include "remez/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

namespace remez {

namespace {

constexpr double kPanelW = 480, kPanelH = 320, kPad = 56;
const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string f3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string g4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else if (ch == '&') out += "&amp;";
    else if (ch == '"') out += "&quot;";
    else out += ch;
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double x) {
    if (!std::isfinite(x)) return;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  void settle() {
    if (!(lo <= hi)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  }
};

// One rectangular panel with axes, mapping data coordinates to pixels.
struct Panel {
  double x0, y0;
  Range xr, yr;
  double px(double x) const { return x0 + kPad + (x - xr.lo) / (xr.hi - xr.lo) * (kPanelW - 1.5 * kPad); }
  double py(double y) const { return y0 + kPanelH - kPad + (y - yr.lo) / (yr.hi - yr.lo) * -(kPanelH - 1.5 * kPad); }

  std::string frame(const std::string& title, const std::string& xlabel, const std::string& ylabel) const {
    std::string s;
    const double l = px(xr.lo), r = px(xr.hi), b = py(yr.lo), t = py(yr.hi);
    s += "<rect x=\"" + f3(l) + "\" y=\"" + f3(t) + "\" width=\"" + f3(r - l) + "\" height=\"" + f3(b - t) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0, fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
      s += "<text x=\"" + f3(px(fx)) + "\" y=\"" + f3(b + 14) + "\" font-size=\"10\" text-anchor=\"middle\">" +
           g4(fx) + "</text>\n";
      s += "<text x=\"" + f3(l - 4) + "\" y=\"" + f3(py(fy) + 3) + "\" font-size=\"10\" text-anchor=\"end\">" +
           g4(fy) + "</text>\n";
    }
    s += "<text x=\"" + f3((l + r) / 2) + "\" y=\"" + f3(t - 8) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + escape(title) + "</text>\n";
    s += "<text x=\"" + f3((l + r) / 2) + "\" y=\"" + f3(b + 30) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + escape(xlabel) + "</text>\n";
    s += "<text x=\"" + f3(x0 + 12) + "\" y=\"" + f3((t + b) / 2) + "\" font-size=\"11\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 " + f3(x0 + 12) + " " + f3((t + b) / 2) + ")\">" + escape(ylabel) + "</text>\n";
    return s;
  }
};

std::string svg_open(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f3(w) +
         "\" height=\"" + f3(h) + "\" viewBox=\"0 0 " + f3(w) + " " + f3(h) +
         "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

double symlog(double m) { return std::copysign(std::log10(1.0 + std::abs(m)), m); }

void save(const std::string& body, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("plot: cannot open '" + path + "' for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("plot: write to '" + path + "' failed");
}

}  // namespace

std::string render_margin_plot(const std::vector<InequalityReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("plot: no reports");
  std::map<std::string, std::vector<const InequalityReport*>> by_suite;
  Panel panel{0, 0, {}, {}};
  for (const auto& r : reports) {
    by_suite[r.suite].push_back(&r);
    panel.xr.add(r.mu_a.value);
    panel.yr.add(symlog(r.margin));
  }
  panel.xr.add(0.0);
  panel.xr.add(1.0);
  panel.yr.add(0.0);
  panel.xr.settle();
  panel.yr.settle();
  std::string s = svg_open(kPanelW + 160, kPanelH);
  s += panel.frame("margin against mu(A)", "mu(A)", "sign(margin) log10(1 + |margin|)");
  s += "<line class=\"zero\" x1=\"" + f3(panel.px(panel.xr.lo)) + "\" y1=\"" + f3(panel.py(0)) + "\" x2=\"" +
       f3(panel.px(panel.xr.hi)) + "\" y2=\"" + f3(panel.py(0)) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  std::size_t colour = 0, legend = 0;
  for (const auto& [suite, rows] : by_suite) {
    const char* c = kColours[colour++ % std::size(kColours)];
    s += "<g class=\"series\" data-suite=\"" + escape(suite) + "\" fill=\"" + c + "\">\n";
    for (const auto* r : rows) {
      if (!std::isfinite(r->margin) || !std::isfinite(r->mu_a.value)) continue;
      s += "<circle class=\"point\" cx=\"" + f3(panel.px(r->mu_a.value)) + "\" cy=\"" + f3(panel.py(symlog(r->margin))) +
           "\" r=\"2.5\" fill-opacity=\"" + (r->verdict == Verdict::violated ? "1" : "0.6") + "\"/>\n";
    }
    s += "</g>\n";
    const double ly = 30 + 16 * static_cast<double>(legend++);
    s += "<rect x=\"" + f3(kPanelW + 10) + "\" y=\"" + f3(ly - 8) + "\" width=\"10\" height=\"10\" fill=\"" + c +
         "\"/><text x=\"" + f3(kPanelW + 26) + "\" y=\"" + f3(ly + 1) + "\" font-size=\"11\">" + escape(suite) +
         " (" + std::to_string(rows.size()) + ")</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render_tightness_plot(const std::vector<TightnessResult>& rows) {
  if (rows.empty()) throw std::invalid_argument("plot: no tightness rows");
  std::map<unsigned, std::vector<TightnessResult>> by_degree;
  for (const auto& r : rows) by_degree[r.d].push_back(r);
  const std::size_t panels = by_degree.size();
  const std::size_t cols = std::min<std::size_t>(panels, 3);
  const std::size_t lines = (panels + cols - 1) / cols;
  std::string s = svg_open(kPanelW * static_cast<double>(cols), kPanelH * static_cast<double>(lines) + 30);
  struct Curve {
    const char* cls;
    const char* label;
    const char* colour;
    double (*value)(const TightnessResult&);
  };
  static const Curve curves[] = {
      {"restricted-integral", "exact integral over [0, eps]", "#1f77b4",
       [](const TightnessResult& r) { return r.restricted_integral; }},
      {"upper-bound", "eps^(d+1)/(d+1)", "#d62728", [](const TightnessResult& r) { return r.upper_bound; }},
      {"prediction", "mu(A) * factor * d!", "#2ca02c",
       [](const TightnessResult& r) { return r.mu_a * r.predicted_factor * r.factorial; }},
  };
  std::size_t k = 0;
  for (auto& [d, list] : by_degree) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.eps < b.eps; });
    Panel panel{kPanelW * static_cast<double>(k % cols), 30 + kPanelH * static_cast<double>(k / cols), {}, {}};
    for (const auto& r : list) {
      panel.xr.add(r.eps);
      for (const auto& c : curves)
        if (c.value(r) > 0) panel.yr.add(std::log10(c.value(r)));
    }
    panel.xr.settle();
    panel.yr.settle();
    s += "<g class=\"panel\" data-d=\"" + std::to_string(d) + "\">\n";
    s += panel.frame("d = " + std::to_string(d), "eps", "log10 value");
    for (const auto& c : curves) {
      std::string pts;
      for (const auto& r : list) {
        const double v = c.value(r);
        if (!(v > 0)) continue;
        pts += (pts.empty() ? "" : " ") + f3(panel.px(r.eps)) + "," + f3(panel.py(std::log10(v)));
      }
      s += "<polyline class=\"curve " + std::string(c.cls) + "\" points=\"" + pts + "\" fill=\"none\" stroke=\"" +
           c.colour + "\" stroke-width=\"1.5\"/>\n";
    }
    s += "</g>\n";
    ++k;
  }
  double lx = 10;
  for (const auto& c : curves) {
    s += "<rect x=\"" + f3(lx) + "\" y=\"8\" width=\"10\" height=\"10\" fill=\"" + c.colour + "\"/><text x=\"" +
         f3(lx + 14) + "\" y=\"17\" font-size=\"11\">" + escape(c.label) + "</text>\n";
    lx += 200;
  }
  s += "</svg>\n";
  return s;
}

void emit_plot(const std::vector<InequalityReport>& reports, const std::string& path) {
  save(render_margin_plot(reports), path);
}

void emit_plot(const std::vector<TightnessResult>& rows, const std::string& path) {
  save(render_tightness_plot(rows), path);
}

}  // namespace remez
