#include "cricrules/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "cricrules/error.hpp"

namespace cricrules {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

bool is_hex_color(const std::string& c) {
  return c.size() == 7 && c[0] == '#' &&
         std::all_of(c.begin() + 1, c.end(), [](unsigned char ch) { return std::isxdigit(ch); });
}

struct Point {
  double x = 0.0;  // data units
  double y = 0.0;
  std::string label;
  std::string css_class;
  std::string color;
  bool vector = false;  // drawn as a ray from the origin
};

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o) const { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
};

class SvgWriter {
 public:
  explicit SvgWriter(const PlotStyle& style) : style_(style) {
    os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.width << "\" height=\""
        << style.height << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\"" << style.height
        << "\" fill=\"#ffffff\"/>\n";
    if (!style.title.empty())
      text(style.width / 2.0, style.margin / 2.0, style.title, "title", "middle", style.font_size * 1.3);
  }

  void line(double x0, double y0, double x1, double y1, const std::string& color, const std::string& cls,
            double width = 1.0) {
    os_ << "<line class=\"" << cls << "\" x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1)
        << "\" y2=\"" << num(y1) << "\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }

  void text(double x, double y, std::string_view s, const std::string& cls, const char* anchor,
            double size, const std::string& color = "#222222") {
    os_ << "<text class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\""
        << " font-size=\"" << num(size) << "\" text-anchor=\"" << anchor << "\" fill=\"" << color << "\">"
        << escape(s) << "</text>\n";
  }

  void raw(const std::string& s) { os_ << s; }

  std::string finish() {
    os_ << "</svg>\n";
    return os_.str();
  }

 private:
  const PlotStyle& style_;
  std::ostringstream os_;
};

// Places labels next to their points, pushing each one outward from the
// plot centre in fixed order until it clears the labels already placed.
std::vector<std::pair<double, double>> place_labels(const std::vector<std::pair<double, double>>& px,
                                                    const std::vector<Point>& pts, double cx, double cy,
                                                    const PlotStyle& style) {
  std::vector<std::pair<double, double>> out;
  std::vector<Box> placed;
  const double h = style.font_size;
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double w = 0.6 * style.font_size * static_cast<double>(pts[i].label.size());
    double dx = px[i].first - cx;
    double dy = px[i].second - cy;
    double len = std::hypot(dx, dy);
    if (len < 1e-9) {
      dx = 1.0;
      dy = 0.0;
      len = 1.0;
    }
    dx /= len;
    dy /= len;
    double offset = style.point_radius + 3.0;
    Box box{};
    double lx = 0.0;
    double ly = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
      lx = px[i].first + dx * offset;
      ly = px[i].second + dy * offset + h / 3.0;
      // text is anchored at its middle
      box = {lx - w / 2.0, ly - h, lx + w / 2.0, ly + 0.2 * h};
      bool clash = std::any_of(placed.begin(), placed.end(), [&](const Box& b) { return b.overlaps(box); });
      if (!clash) break;
      offset += h;
    }
    placed.push_back(box);
    out.emplace_back(lx, ly);
  }
  return out;
}

}  // namespace

void PlotStyle::validate() const {
  if (width <= 0 || height <= 0 || margin < 0 || 2 * margin >= std::min(width, height))
    throw Error(ErrorCode::ParameterError, "plot dimensions must be positive and exceed twice the margin");
  if (!(point_radius > 0.0) || !(font_size > 0.0))
    throw Error(ErrorCode::ParameterError, "point radius and font size must be positive");
  if (!is_hex_color(batting_color) || !is_hex_color(bowling_color))
    throw Error(ErrorCode::ParameterError, "colours must be 6-digit hex like #1f4e9c");
}

std::string render_biplot(const CAResult& ca, const std::optional<std::set<BattingFeature>>& row_subset,
                          const PlotStyle& style, BiplotScaling scaling) {
  style.validate();
  if (ca.dims() < 2)
    throw Error(ErrorCode::DegeneratePlot, "analysis retained " + std::to_string(ca.dims()) +
                                               " dimension(s); a biplot needs 2 (matrix too sparse?)");

  std::vector<Point> pts;
  for (std::size_t i = 0; i < ca.rows.size(); ++i) {
    if (row_subset && !row_subset->contains(ca.rows[i])) continue;
    const auto r = static_cast<Eigen::Index>(i);
    pts.push_back({ca.row_principal(r, 0), ca.row_principal(r, 1), std::string(name(ca.rows[i])),
                   "point batting", style.batting_color, false});
  }
  for (std::size_t j = 0; j < ca.cols.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    double x = ca.col_principal(c, 0);
    double y = ca.col_principal(c, 1);
    if (scaling == BiplotScaling::contribution) {
      const double root_mass = std::sqrt(ca.col_masses(c));
      x = root_mass * ca.col_standard(c, 0);
      y = root_mass * ca.col_standard(c, 1);
    }
    pts.push_back({x, y, std::string(name(ca.cols[j])), "point bowling", style.bowling_color, true});
  }

  double extent = 0.0;
  for (const auto& p : pts) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  if (extent <= 0.0) extent = 1.0;
  extent *= 1.1;

  const double plot = std::min(style.width, style.height) - 2.0 * style.margin;
  const double cx = style.width / 2.0;
  const double cy = style.height / 2.0;
  const double unit = plot / (2.0 * extent);
  auto to_px = [&](double x, double y) { return std::pair{cx + x * unit, cy - y * unit}; };

  SvgWriter svg(style);
  const double half = plot / 2.0;
  svg.line(cx - half, cy, cx + half, cy, "#888888", "axis");
  svg.line(cx, cy - half, cx, cy + half, "#888888", "axis");
  char caption[64];
  std::snprintf(caption, sizeof caption, "Dimension 1 (%.1f%%)", ca.explained_percent(0));
  svg.text(cx + half, cy + half + style.font_size * 2.0, caption, "axis-label", "end", style.font_size);
  std::snprintf(caption, sizeof caption, "Dimension 2 (%.1f%%)", ca.explained_percent(1));
  svg.text(cx - half, cy - half - style.font_size, caption, "axis-label", "start", style.font_size);

  std::vector<std::pair<double, double>> px;
  for (const auto& p : pts) px.push_back(to_px(p.x, p.y));
  const auto labels = place_labels(px, pts, cx, cy, style);

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    std::ostringstream g;
    g << "<g class=\"" << p.css_class << "\" id=\"" << (p.vector ? "bowling-" : "batting-") << p.label << "\">\n";
    svg.raw(g.str());
    if (p.vector) svg.line(cx, cy, px[i].first, px[i].second, p.color, "vector", 0.8);
    std::ostringstream c;
    c << "<circle cx=\"" << num(px[i].first) << "\" cy=\"" << num(px[i].second) << "\" r=\""
      << num(style.point_radius) << "\" fill=\"" << p.color << "\"/>\n";
    svg.raw(c.str());
    svg.text(labels[i].first, labels[i].second, p.label, "label", "middle", style.font_size, p.color);
    svg.raw("</g>\n");
  }
  return svg.finish();
}

std::string render_scatter(const Embedding& embedding, const PlotStyle& style) {
  style.validate();
  const auto n = static_cast<std::size_t>(embedding.points.rows());
  if (n == 0) throw Error(ErrorCode::ParameterError, "embedding has no points");

  const double xmin = embedding.points.col(0).minCoeff();
  const double xmax = embedding.points.col(0).maxCoeff();
  const double ymin = embedding.points.col(1).minCoeff();
  const double ymax = embedding.points.col(1).maxCoeff();
  const double inner_w = style.width - 2.0 * style.margin;
  const double inner_h = style.height - 2.0 * style.margin;
  auto map = [](double v, double lo, double hi, double start, double span) {
    if (hi - lo <= 0.0) return start + span / 2.0;
    const double pad = 0.05 * span;
    return start + pad + (v - lo) / (hi - lo) * (span - 2.0 * pad);
  };

  std::vector<Point> pts;
  std::vector<std::pair<double, double>> px;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    std::string label = i < embedding.labels.size() ? embedding.labels[i] : std::to_string(i);
    pts.push_back({embedding.points(r, 0), embedding.points(r, 1), label, "point", style.batting_color, false});
    px.emplace_back(map(embedding.points(r, 0), xmin, xmax, style.margin, inner_w),
                    style.height - map(embedding.points(r, 1), ymin, ymax, style.margin, inner_h));
  }
  const auto labels = place_labels(px, pts, style.width / 2.0, style.height / 2.0, style);

  SvgWriter svg(style);
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream c;
    c << "<g class=\"point\">\n<circle cx=\"" << num(px[i].first) << "\" cy=\"" << num(px[i].second) << "\" r=\""
      << num(style.point_radius) << "\" fill=\"" << style.batting_color << "\"/>\n";
    svg.raw(c.str());
    svg.text(labels[i].first, labels[i].second, pts[i].label, "label", "middle", style.font_size);
    svg.raw("</g>\n");
  }
  return svg.finish();
}

std::vector<std::pair<std::string, std::size_t>> word_frequency_report(std::span<const CommentaryRecord> records,
                                                                      BattingFeature anchor,
                                                                      const FeatureLexicon& lex, std::size_t top_k) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : records) {
    const auto tokens = tokenize(r.text);
    const auto ngrams = extract_ngrams(tokens);
    if (!match_features(ngrams, lex).batting.test(index(anchor))) continue;
    for (std::size_t i = tokens.size(); i < ngrams.size(); ++i) ++counts[ngrams[i]];
  }
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  // map order is alphabetical, so a stable sort on count keeps ties alphabetical
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

}  // namespace cricrules
