#pragma once

// Minimal SVG canvas for 2D plots with a linear data-to-pixel mapping.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace orthoiks::svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Plot {
 public:
  Plot(double xmin, double xmax, double ymin, double ymax, int width = 640, int height = 640)
      : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width), height_(height) {
    if (!(xmax_ > xmin_)) xmax_ = xmin_ + 1.0;
    if (!(ymax_ > ymin_)) ymax_ = ymin_ + 1.0;
  }

  double px(double x) const { return kMargin + (x - xmin_) / (xmax_ - xmin_) * inner_w(); }
  double py(double y) const { return kMargin + (ymax_ - y) / (ymax_ - ymin_) * inner_h(); }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                bool closed = false, double width = 1.5) {
    if (pts.empty()) return;
    body_ << "<" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"" << num(width) << "\" points=\"";
    for (const auto& [x, y] : pts) body_ << num(px(x)) << ',' << num(py(y)) << ' ';
    body_ << "\"/>\n";
  }

  void circle(double x, double y, double r, const std::string& color) {
    body_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"" << num(r)
          << "\" fill=\"" << color << "\"/>\n";
  }

  void cross(double x, double y, double r, const std::string& color) {
    const double cx = px(x), cy = py(y);
    body_ << "<path d=\"M" << num(cx - r) << ' ' << num(cy - r) << " L" << num(cx + r) << ' '
          << num(cy + r) << " M" << num(cx - r) << ' ' << num(cy + r) << " L" << num(cx + r)
          << ' ' << num(cy - r) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
  }

  // Cell-sized square centred on (x, y).
  void cell(double x, double y, double dx, double dy, const std::string& color) {
    const double w = std::abs(px(x + dx) - px(x)), h = std::abs(py(y + dy) - py(y));
    body_ << "<rect x=\"" << num(px(x) - w / 2) << "\" y=\"" << num(py(y) - h / 2)
          << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"" << color
          << "\"/>\n";
  }

  void axes(const std::string& xlabel, const std::string& ylabel, int ticks = 6) {
    const double x0 = kMargin, y0 = kMargin + inner_h();
    body_ << "<rect x=\"" << num(x0) << "\" y=\"" << num(kMargin) << "\" width=\""
          << num(inner_w()) << "\" height=\"" << num(inner_h())
          << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= ticks; ++i) {
      const double xv = xmin_ + (xmax_ - xmin_) * i / ticks;
      const double yv = ymin_ + (ymax_ - ymin_) * i / ticks;
      body_ << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(y0 + 16)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
      body_ << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(py(yv) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
    }
    body_ << "<text x=\"" << num(x0 + inner_w() / 2) << "\" y=\"" << num(height_ - 12.0)
          << "\" font-size=\"14\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
    body_ << "<text x=\"16\" y=\"" << num(kMargin + inner_h() / 2)
          << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
          << num(kMargin + inner_h() / 2) << ")\">" << escape(ylabel) << "</text>\n";
  }

  void title(const std::string& text) {
    body_ << "<text x=\"" << num(width_ / 2.0) << "\" y=\"22\" font-size=\"15\" "
          << "text-anchor=\"middle\">" << escape(text) << "</text>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kMargin + 14;
    const double x = kMargin + inner_w() - 170;
    body_ << "<rect x=\"" << num(x - 8) << "\" y=\"" << num(kMargin + 2) << "\" width=\"176\" "
          << "height=\"" << num(18.0 * entries.size() + 8) << "\" fill=\"white\" "
          << "stroke=\"#888\"/>\n";
    for (const auto& [label, color] : entries) {
      body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"12\" "
            << "height=\"10\" fill=\"" << color << "\"/>\n";
      body_ << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y) << "\" font-size=\"12\">"
            << escape(label) << "</text>\n";
      y += 18;
    }
  }

  void clip_begin() {
    body_ << "<clipPath id=\"frame\"><rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin)
          << "\" width=\"" << num(inner_w()) << "\" height=\"" << num(inner_h())
          << "\"/></clipPath>\n<g clip-path=\"url(#frame)\">\n";
  }
  void clip_end() { body_ << "</g>\n"; }

  std::string str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  static constexpr double kMargin = 60.0;
  double inner_w() const { return width_ - 2 * kMargin; }
  double inner_h() const { return height_ - 2 * kMargin; }
  static std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
  }

  double xmin_, xmax_, ymin_, ymax_;
  int width_, height_;
  std::ostringstream body_;
};

}  // namespace orthoiks::svg
