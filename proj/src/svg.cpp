#include "mimdetect/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "mimdetect/csv.hpp"
#include "mimdetect/errors.hpp"

namespace mimd::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 340.0;
constexpr double kMarginLeft = 78.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 52.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

// Linear map from data coordinates to one panel's pixel box.
struct Scale {
  double x_lo, x_hi, y_lo, y_hi;
  double top;  // pixel y of the panel's top edge

  double px(double x) const {
    return kMarginLeft +
           (x - x_lo) / (x_hi - x_lo) * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    const double h = kPanelHeight - kMarginTop - kMarginBottom;
    return top + kMarginTop + h - (y - y_lo) / (y_hi - y_lo) * h;
  }
};

void draw_series_line(std::ostringstream& out, const Scale& sc,
                      const Series& s, const char* color) {
  if (s.x.empty()) return;
  out << "  <polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.8\" points=\"";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (i > 0) out << ' ';
    out << fmt(sc.px(s.x[i])) << ',' << fmt(sc.py(s.y[i]));
  }
  out << "\"/>\n";
}

void draw_series_dots(std::ostringstream& out, const Scale& sc,
                      const Series& s, const char* color) {
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    out << "  <circle cx=\"" << fmt(sc.px(s.x[i])) << "\" cy=\""
        << fmt(sc.py(s.y[i])) << "\" r=\"3.4\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.4\"/>\n";
  }
}

void draw_panel(std::ostringstream& out, double top, const char* title,
                const char* x_label, const Series& quad_bayes,
                const Series& quad_mim, const Series& mc_bayes,
                const Series& mc_mim) {
  double x_lo = quad_bayes.x.empty() ? 0.0 : quad_bayes.x.front();
  double x_hi = quad_bayes.x.empty() ? 1.0 : quad_bayes.x.back();
  for (const Series* s : {&mc_bayes, &mc_mim}) {
    for (double x : s->x) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
  }
  if (!(x_hi > x_lo)) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  double y_hi = 0.0;
  for (const Series* s : {&quad_bayes, &quad_mim, &mc_bayes, &mc_mim})
    for (double y : s->y) y_hi = std::max(y_hi, y);
  if (!(y_hi > 0.0)) y_hi = 1.0;
  y_hi *= 1.08;

  const Scale sc{x_lo, x_hi, 0.0, y_hi, top};
  const double px_lo = sc.px(x_lo);
  const double px_hi = sc.px(x_hi);
  const double py_lo = sc.py(0.0);
  const double py_hi = sc.py(y_hi);

  out << "  <text x=\"" << fmt(px_lo) << "\" y=\"" << fmt(top + 22.0)
      << "\" font-size=\"15\" fill=\"#222\">" << title << "</text>\n";
  out << "  <line x1=\"" << fmt(px_lo) << "\" y1=\"" << fmt(py_lo)
      << "\" x2=\"" << fmt(px_hi) << "\" y2=\"" << fmt(py_lo)
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << fmt(px_lo) << "\" y1=\"" << fmt(py_lo)
      << "\" x2=\"" << fmt(px_lo) << "\" y2=\"" << fmt(py_hi)
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
    const double yv = y_hi * i / 4.0;
    const double tx = sc.px(xv);
    const double ty = sc.py(yv);
    out << "  <line x1=\"" << fmt(tx) << "\" y1=\"" << fmt(py_lo) << "\" x2=\""
        << fmt(tx) << "\" y2=\"" << fmt(py_lo + 5.0)
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << fmt(tx) << "\" y=\"" << fmt(py_lo + 20.0)
        << "\" font-size=\"11\" fill=\"#333\" text-anchor=\"middle\">"
        << csv::format_sig(xv, 4) << "</text>\n";
    out << "  <line x1=\"" << fmt(px_lo - 5.0) << "\" y1=\"" << fmt(ty)
        << "\" x2=\"" << fmt(px_lo) << "\" y2=\"" << fmt(ty)
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << fmt(px_lo - 8.0) << "\" y=\"" << fmt(ty + 4.0)
        << "\" font-size=\"11\" fill=\"#333\" text-anchor=\"end\">"
        << csv::format_sig(yv, 3) << "</text>\n";
  }
  out << "  <text x=\"" << fmt((px_lo + px_hi) / 2.0) << "\" y=\""
      << fmt(py_lo + 38.0)
      << "\" font-size=\"13\" fill=\"#222\" text-anchor=\"middle\">" << x_label
      << "</text>\n";

  draw_series_line(out, sc, quad_bayes, "#1f5fbf");
  draw_series_line(out, sc, quad_mim, "#c23b22");
  draw_series_dots(out, sc, mc_bayes, "#1f5fbf");
  draw_series_dots(out, sc, mc_mim, "#c23b22");

  const double lx = px_hi - 270.0;
  const double ly = top + 14.0;
  out << "  <rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly)
      << "\" width=\"12\" height=\"4\" fill=\"#1f5fbf\"/>\n";
  out << "  <text x=\"" << fmt(lx + 18.0) << "\" y=\"" << fmt(ly + 6.0)
      << "\" font-size=\"11\" fill=\"#333\">bayes (line: quadrature, circle: "
         "monte carlo)</text>\n";
  out << "  <rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly + 14.0)
      << "\" width=\"12\" height=\"4\" fill=\"#c23b22\"/>\n";
  out << "  <text x=\"" << fmt(lx + 18.0) << "\" y=\"" << fmt(ly + 20.0)
      << "\" font-size=\"11\" fill=\"#333\">mim</text>\n";
}

}  // namespace

std::string render_sweep(std::span<const SweepRow> rows, SweepKind kind) {
  Series quad_bayes_a, quad_mim_a, mc_bayes_a, mc_mim_a;
  Series quad_bayes_b, quad_mim_b, mc_bayes_b, mc_mim_b;
  for (const SweepRow& row : rows) {
    if (row.status != "ok") continue;
    Series& bayes_a = row.source == RateSource::Quadrature ? quad_bayes_a : mc_bayes_a;
    Series& mim_a = row.source == RateSource::Quadrature ? quad_mim_a : mc_mim_a;
    Series& bayes_b = row.source == RateSource::Quadrature ? quad_bayes_b : mc_bayes_b;
    Series& mim_b = row.source == RateSource::Quadrature ? quad_mim_b : mc_mim_b;
    bayes_a.x.push_back(row.sweep_value);
    bayes_a.y.push_back(row.bayes.alpha);
    mim_a.x.push_back(row.sweep_value);
    mim_a.y.push_back(row.mim.alpha);
    bayes_b.x.push_back(row.sweep_value);
    bayes_b.y.push_back(row.bayes.beta);
    mim_b.x.push_back(row.sweep_value);
    mim_b.y.push_back(row.mim.beta);
  }

  const char* x_label =
      kind == SweepKind::PriorRatio ? "log10(wA / wB)" : "mean of the B density";

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << 2.0 * kPanelHeight << "\" viewBox=\"0 0 " << kWidth
      << ' ' << 2.0 * kPanelHeight << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  draw_panel(out, 0.0, "miss rate (alpha)", x_label, quad_bayes_a, quad_mim_a,
             mc_bayes_a, mc_mim_a);
  draw_panel(out, kPanelHeight, "false-alarm rate (beta)", x_label, quad_bayes_b,
             quad_mim_b, mc_bayes_b, mc_mim_b);
  out << "</svg>";
  return out.str();
}

}  // namespace mimd::svg
