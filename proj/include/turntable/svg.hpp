#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace turntable::svg {

/// Fixed two-decimal formatting keeps output byte-stable across runs.
inline std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') out += ' ';
        else out.push_back(c);
    }
  }
  return out;
}

class Document {
 public:
  Document(double width, double height) : width_(width), height_(height) {}

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view cls = {}) {
    body_ += "<rect" + cls_attr(cls) + " x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(std::max(w, 0.0)) +
             "\" height=\"" + num(std::max(h, 0.0)) + "\" fill=\"" + std::string(fill) + "\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke = "#000", double width = 1.0) {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
             "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"/>\n";
  }

  void circle(double cx, double cy, double r, std::string_view fill, std::string_view cls = {}) {
    body_ += "<circle" + cls_attr(cls) + " cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
             std::string(fill) + "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, std::string_view cls = {}) {
    body_ += "<polyline" + cls_attr(cls) + " fill=\"none\" stroke=\"" + std::string(stroke) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ += (i ? " " : "") + num(pts[i].first) + "," + num(pts[i].second);
    body_ += "\"/>\n";
  }

  void text(double x, double y, std::string_view content, std::string_view anchor = "start", double size = 11,
            std::string_view extra = {}) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" + num(size) +
             "\" text-anchor=\"" + std::string(anchor) + "\"" + (extra.empty() ? "" : " " + std::string(extra)) + ">" +
             escape(content) + "</text>\n";
  }

  std::string str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width_) + "\" height=\"" +
           num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" +
           "<rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" + num(height_) + "\" fill=\"#fff\"/>\n" + body_ +
           "</svg>\n";
  }

 private:
  static std::string cls_attr(std::string_view cls) {
    return cls.empty() ? std::string() : " class=\"" + std::string(cls) + "\"";
  }
  double width_, height_;
  std::string body_;
};

/// Roughly n evenly spaced "nice" tick values covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int n = 5) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = (norm < 1.5 ? 1 : norm < 3 ? 2 : norm < 7 ? 5 : 10) * mag;
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  return ticks;
}

inline std::string tick_label(double v) {
  char buf[64];
  if (std::abs(v - std::round(v)) < 1e-9) std::snprintf(buf, sizeof buf, "%.0f", v);
  else std::snprintf(buf, sizeof buf, "%.2g", v);
  return buf;
}

/// Plot frame mapping a data rectangle to a pixel rectangle, with axes.
class Frame {
 public:
  Frame(Document& doc, double left, double top, double width, double height, double x0, double x1, double y0, double y1)
      : doc_(doc), left_(left), top_(top), w_(width), h_(height), x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1), y0_(y0),
        y1_(y1 > y0 ? y1 : y0 + 1) {}

  double px(double x) const { return left_ + (x - x0_) / (x1_ - x0_) * w_; }
  double py(double y) const { return top_ + h_ - (y - y0_) / (y1_ - y0_) * h_; }
  double bottom() const { return top_ + h_; }
  double left() const { return left_; }
  double width() const { return w_; }
  double height() const { return h_; }
  double top() const { return top_; }

  void axes(std::string_view x_label, std::string_view y_label, bool x_log10 = false, bool y_log10 = false) {
    doc_.line(left_, bottom(), left_ + w_, bottom());
    doc_.line(left_, top_, left_, bottom());
    for (const double t : nice_ticks(x0_, x1_)) {
      doc_.line(px(t), bottom(), px(t), bottom() + 4);
      doc_.text(px(t), bottom() + 16, x_log10 ? "1e" + tick_label(t) : tick_label(t), "middle", 10);
    }
    for (const double t : nice_ticks(y0_, y1_)) {
      doc_.line(left_ - 4, py(t), left_, py(t));
      doc_.text(left_ - 6, py(t) + 3, y_log10 ? "1e" + tick_label(t) : tick_label(t), "end", 10);
    }
    doc_.text(left_ + w_ / 2, bottom() + 34, x_label, "middle", 11);
    doc_.text(left_ - 44, top_ + h_ / 2, y_label, "middle", 11,
              "transform=\"rotate(-90 " + num(left_ - 44) + " " + num(top_ + h_ / 2) + ")\"");
  }

  void no_data() { doc_.text(left_ + w_ / 2, top_ + h_ / 2, "no data", "middle", 14); }

 private:
  Document& doc_;
  double left_, top_, w_, h_;
  double x0_, x1_, y0_, y1_;
};

}  // namespace turntable::svg
