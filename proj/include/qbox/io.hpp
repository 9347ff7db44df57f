#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace qbox {

// All numeric output funnels through one fixed format so identical runs
// produce identical bytes.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << header[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number(row[i]);
    }
    os << '\n';
  }
}

// Emit-only JSON builder: tracks nesting and comma placement, nothing else.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    separate();
    escaped(k);
    os_ << ':';
    pending_value_ = true;
    return *this;
  }
  JsonWriter& value(double v) { return scalar(format_number(v)); }
  JsonWriter& value(int v) { return scalar(std::to_string(v)); }
  JsonWriter& value(bool v) { return scalar(v ? "true" : "false"); }
  JsonWriter& value(const std::string& v) {
    separate();
    escaped(v);
    first_ = false;
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }

 private:
  JsonWriter& open(char c) {
    separate();
    os_ << c;
    first_ = true;
    return *this;
  }
  JsonWriter& close(char c) {
    os_ << c;
    first_ = false;
    return *this;
  }
  JsonWriter& scalar(const std::string& text) {
    separate();
    os_ << text;
    first_ = false;
    return *this;
  }
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!first_) os_ << ',';
    first_ = false;
  }
  void escaped(const std::string& s) {
    os_ << '"';
    for (char c : s) {
      switch (c) {
        case '"': os_ << "\\\""; break;
        case '\\': os_ << "\\\\"; break;
        case '\n': os_ << "\\n"; break;
        case '\t': os_ << "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            os_ << buf;
          } else {
            os_ << c;
          }
      }
    }
    os_ << '"';
  }

  std::ostream& os_;
  bool first_ = true;
  bool pending_value_ = false;
};

// Minimal self-contained SVG line charts: axes, ticks, one polyline per
// series, a small legend.  Multiple panels stack vertically in one file.
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

struct SvgPanel {
  std::string title;
  std::vector<SvgSeries> series;
};

namespace detail_svg {

inline std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline const char* stroke(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
  return palette[i % 8];
}

}  // namespace detail_svg

inline void write_svg(std::ostream& os, const std::vector<SvgPanel>& panels) {
  const double width = 640, panel_h = 360;
  const double ml = 58, mr = 16, mt = 34, mb = 40;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << panel_h * panels.size() << "\" font-family=\"monospace\" font-size=\"11\">\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double top = p * panel_h;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : panel.series)
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    const double px = width - ml - mr, py = panel_h - mt - mb;
    const auto X = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * px; };
    const auto Y = [&](double v) {
      return top + mt + py - (v - ymin) / (ymax - ymin) * py;
    };

    os << "<text x=\"" << detail_svg::coord(ml) << "\" y=\""
       << detail_svg::coord(top + 20) << "\">" << panel.title << "</text>\n";
    os << "<rect x=\"" << detail_svg::coord(ml) << "\" y=\""
       << detail_svg::coord(top + mt) << "\" width=\"" << detail_svg::coord(px)
       << "\" height=\"" << detail_svg::coord(py)
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
      const double fx = xmin + (xmax - xmin) * tick / 4.0;
      const double fy = ymin + (ymax - ymin) * tick / 4.0;
      os << "<line x1=\"" << detail_svg::coord(X(fx)) << "\" y1=\""
         << detail_svg::coord(top + mt + py) << "\" x2=\"" << detail_svg::coord(X(fx))
         << "\" y2=\"" << detail_svg::coord(top + mt + py + 4)
         << "\" stroke=\"#444\"/>\n";
      os << "<text x=\"" << detail_svg::coord(X(fx) - 14) << "\" y=\""
         << detail_svg::coord(top + mt + py + 16) << "\">"
         << detail_svg::coord(fx) << "</text>\n";
      os << "<text x=\"4\" y=\"" << detail_svg::coord(Y(fy) + 4) << "\">"
         << detail_svg::coord(fy) << "</text>\n";
    }
    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const auto& s = panel.series[si];
      os << "<polyline fill=\"none\" stroke=\"" << detail_svg::stroke(si)
         << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) os << ' ';
        os << detail_svg::coord(X(s.x[i])) << ',' << detail_svg::coord(Y(s.y[i]));
      }
      os << "\"/>\n";
      os << "<text x=\"" << detail_svg::coord(width - mr - 110) << "\" y=\""
         << detail_svg::coord(top + mt + 14 + 13 * si) << "\" fill=\""
         << detail_svg::stroke(si) << "\">" << s.label << "</text>\n";
    }
  }
  os << "</svg>\n";
}

}  // namespace qbox
