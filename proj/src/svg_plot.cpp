#include "dsa2/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "dsa2/errors.hpp"
#include "dsa2/trace.hpp"

namespace dsa2 {
namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 700, kTop = 48, kBottom = 430;

struct LogAxis {
  double lo = 0.0, hi = 1.0;  // log10 endpoints, whole decades

  double map(double v, double pix_lo, double pix_hi) const {
    double f = (std::log10(v) - lo) / (hi - lo);
    return pix_lo + f * (pix_hi - pix_lo);
  }
};

LogAxis fit_axis(double vmin, double vmax) {
  LogAxis ax;
  ax.lo = std::floor(std::log10(vmin));
  ax.hi = std::ceil(std::log10(vmax));
  if (ax.hi <= ax.lo) ax.hi = ax.lo + 1.0;
  return ax;
}

std::string tick_label(int decade) {
  if (decade == 0) return "1";
  return "1e" + std::to_string(decade);
}

std::string fmt_px(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << v;
  return s.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

bool drawable(double x, double y) { return std::isfinite(x) && std::isfinite(y) && x > 0.0 && y > 0.0; }

}  // namespace

std::string render_loglog_svg(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel, const std::vector<PlotSeries>& series) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (const PlotSeries& s : series) {
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!drawable(s.x[i], s.y[i])) continue;
      if (!any) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        any = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  LogAxis xa = any ? fit_axis(xmin, xmax) : LogAxis{0.0, 1.0};
  LogAxis ya = any ? fit_axis(ymin, ymax) : LogAxis{0.0, 1.0};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title) << "</text>\n";

  // Decade grid. Skip label crowding on wide ranges by stepping every
  // second decade past eight.
  int xstep = (xa.hi - xa.lo > 8) ? 2 : 1;
  int ystep = (ya.hi - ya.lo > 8) ? 2 : 1;
  for (int d = static_cast<int>(xa.lo); d <= static_cast<int>(xa.hi); ++d) {
    double px = xa.map(std::pow(10.0, d), kLeft, kRight);
    svg << "<line x1=\"" << fmt_px(px) << "\" y1=\"" << kTop << "\" x2=\"" << fmt_px(px) << "\" y2=\"" << kBottom
        << "\" stroke=\"#dddddd\"/>\n";
    if ((d - static_cast<int>(xa.lo)) % xstep == 0)
      svg << "<text x=\"" << fmt_px(px) << "\" y=\"" << kBottom + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << tick_label(d)
          << "</text>\n";
  }
  for (int d = static_cast<int>(ya.lo); d <= static_cast<int>(ya.hi); ++d) {
    double py = ya.map(std::pow(10.0, d), kBottom, kTop);
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << fmt_px(py) << "\" x2=\"" << kRight << "\" y2=\"" << fmt_px(py)
        << "\" stroke=\"#dddddd\"/>\n";
    if ((d - static_cast<int>(ya.lo)) % ystep == 0)
      svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt_px(py + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << tick_label(d) << "</text>\n";
  }
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft << "\" height=\""
      << kBottom - kTop << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape_xml(xlabel)
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
      << (kTop + kBottom) / 2 << ")\">" << escape_xml(ylabel) << "</text>\n";

  for (const PlotSeries& s : series) {
    std::string dash = s.dashed ? " stroke-dasharray=\"6 3\"" : "";
    std::ostringstream pts;
    size_t count = 0;
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!drawable(s.x[i], s.y[i])) continue;
      double px = xa.map(s.x[i], kLeft, kRight);
      double py = ya.map(s.y[i], kBottom, kTop);
      pts << (count ? " " : "") << fmt_px(px) << "," << fmt_px(py);
      ++count;
    }
    if (count > 1)
      svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"" << dash << " points=\""
          << pts.str() << "\"/>\n";
    if (count == 1) {
      // A lone point has no polyline; mark it so single-round traces render.
      std::string coord = pts.str();
      size_t comma = coord.find(',');
      svg << "<circle cx=\"" << coord.substr(0, comma) << "\" cy=\"" << coord.substr(comma + 1)
          << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    }
  }

  double ly = kTop + 14;
  for (const PlotSeries& s : series) {
    std::string dash = s.dashed ? " stroke-dasharray=\"6 3\"" : "";
    svg << "<line x1=\"" << kRight - 180 << "\" y1=\"" << fmt_px(ly - 4) << "\" x2=\"" << kRight - 150 << "\" y2=\""
        << fmt_px(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"" << dash << "/>\n";
    svg << "<text x=\"" << kRight - 144 << "\" y=\"" << fmt_px(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label) << "</text>\n";
    ly += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

const std::map<std::string, std::string>& algo_palette() {
  static const std::map<std::string, std::string> palette{
      {"dsa2", "#1f77b4"},        {"dsa2_dd", "#1f77b4"},
      {"dda", "#ff7f0e"},         {"dda_dual", "#ff7f0e"},
      {"consensus_decaying", "#2ca02c"}, {"consensus_constant", "#d62728"},
  };
  return palette;
}

std::string color_for(const std::string& algo, size_t index) {
  auto it = algo_palette().find(algo);
  if (it != algo_palette().end()) return it->second;
  static const char* fallback[] = {"#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  return fallback[index % 4];
}

// Per algo, one y value per distinct t: reduce picks among agent rows.
struct Curve {
  std::vector<double> t, y;
};

using RowGroup = std::map<std::string, std::map<long, std::vector<double>>>;

RowGroup group_rows(const Csv& csv, const std::string& value_col) {
  RowGroup grouped;
  size_t algo_c = csv.col("algo");
  size_t t_c = csv.col("t");
  size_t v_c = csv.col(value_col);
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    long t = static_cast<long>(csv.num(r, t_c));
    grouped[csv.rows[r][algo_c]][t].push_back(csv.num(r, v_c));
  }
  return grouped;
}

Curve reduce_max_abs(const std::map<long, std::vector<double>>& by_t) {
  Curve c;
  for (const auto& [t, vals] : by_t) {
    double best = std::nan("");
    for (double v : vals)
      if (std::isfinite(v) && (!std::isfinite(best) || std::abs(v) > best)) best = std::abs(v);
    c.t.push_back(static_cast<double>(t));
    c.y.push_back(best);
  }
  return c;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& trace_csv_path, const std::string& out_dir) {
  std::ifstream in(trace_csv_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open trace: " + trace_csv_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Csv csv = parse_csv(buf.str(), trace_csv_path);
  if (csv.rows.empty()) throw ConfigError(trace_csv_path + ": trace has no rows, nothing to plot");

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;

  if (csv.schema == "dsa2.primal.v1") {
    std::vector<PlotSeries> series;
    size_t idx = 0;
    for (const auto& [algo, by_t] : group_rows(csv, "obj_err")) {
      Curve c = reduce_max_abs(by_t);
      series.push_back({algo, c.t, c.y, color_for(algo, idx++), false});
    }
    for (const auto& [algo, by_t] : group_rows(csv, "obj_bound")) {
      Curve c = reduce_max_abs(by_t);
      bool any = std::any_of(c.y.begin(), c.y.end(), [](double v) { return std::isfinite(v); });
      if (any) series.push_back({algo + " bound", c.t, c.y, "#333333", true});
    }
    std::string path = (std::filesystem::path(out_dir) / "objective_error.svg").string();
    write_text_file(path, render_loglog_svg("Worst-agent objective error", "round t", "f(x_i_t) - f*", series));
    written.push_back(path);
    return written;
  }

  if (csv.schema != "dsa2.dual.v1") throw ConfigError(trace_csv_path + ": unknown trace schema '" + csv.schema + "'");

  {
    std::vector<PlotSeries> series;
    size_t idx = 0;
    for (const auto& [algo, by_t] : group_rows(csv, "primal_err")) {
      Curve c = reduce_max_abs(by_t);
      series.push_back({algo, c.t, c.y, color_for(algo, idx++), false});
    }
    // |primal error| is sandwiched by max(upper, -lower).
    size_t t_c = csv.col("t");
    size_t algo_c = csv.col("algo");
    size_t hi_c = csv.col("primal_hi_bound");
    size_t lo_c = csv.col("primal_lo_bound");
    std::map<std::string, std::map<long, double>> bound;
    for (size_t r = 0; r < csv.rows.size(); ++r) {
      double hi = csv.num(r, hi_c), lo = csv.num(r, lo_c);
      if (!std::isfinite(hi) || !std::isfinite(lo)) continue;
      long t = static_cast<long>(csv.num(r, t_c));
      bound[csv.rows[r][algo_c]][t] = std::max(hi, -lo);
    }
    for (const auto& [algo, by_t] : bound) {
      PlotSeries s{algo + " bound", {}, {}, "#333333", true};
      for (const auto& [t, v] : by_t) {
        s.x.push_back(static_cast<double>(t));
        s.y.push_back(v);
      }
      series.push_back(std::move(s));
    }
    std::string path = (std::filesystem::path(out_dir) / "primal_error.svg").string();
    write_text_file(path, render_loglog_svg("Recovered-primal objective error", "round t", "|sum f_j - f*|", series));
    written.push_back(path);
  }
  {
    std::vector<PlotSeries> series;
    size_t idx = 0;
    for (const auto& [algo, by_t] : group_rows(csv, "penalty")) {
      Curve c = reduce_max_abs(by_t);
      series.push_back({algo, c.t, c.y, color_for(algo, idx++), false});
    }
    for (const auto& [algo, by_t] : group_rows(csv, "penalty_bound")) {
      Curve c = reduce_max_abs(by_t);
      bool any = std::any_of(c.y.begin(), c.y.end(), [](double v) { return std::isfinite(v); });
      if (any) series.push_back({algo + " bound", c.t, c.y, "#333333", true});
    }
    std::string path = (std::filesystem::path(out_dir) / "penalty.svg").string();
    write_text_file(path, render_loglog_svg("Coupled-constraint penalty", "round t", "||(sum h_j)+||^2", series));
    written.push_back(path);
  }
  return written;
}

}  // namespace dsa2
