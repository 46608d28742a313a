#include "rlinfo/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "rlinfo/harness/config.hpp"

namespace rlinfo {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (first) {
      table.header = fields;
      first = false;
    } else {
      table.rows.push_back(fields);
    }
  }
  return table;
}

int column_of(const Table& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == name) return static_cast<int>(i);
  throw ParseError("plot: missing column '" + name + "'");
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

std::string render_svg(const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label, bool log_y) {
  const double width = 640, height = 440, margin = 60;
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  bool any = false;
  for (const Series& s : series)
    for (const auto& [x, y] : s.points) {
      const double yy = log_y ? std::log2(std::max(y, 0.5)) : y;
      if (!any) {
        x_lo = x_hi = x;
        y_lo = y_hi = yy;
        any = true;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, yy);
      y_hi = std::max(y_hi, yy);
    }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi <= y_lo) y_hi = y_lo + 1;
  auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto py = [&](double y) {
    const double yy = log_y ? std::log2(std::max(y, 0.5)) : y;
    return height - margin - (yy - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf"};
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
      << "' y2='" << height - margin << "' stroke='black'/>\n";
  svg << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
      << height - margin << "' stroke='black'/>\n";
  svg << "<text x='" << width / 2 << "' y='" << height - 14 << "' text-anchor='middle'>"
      << x_label << "</text>\n";
  svg << "<text x='16' y='" << height / 2 << "' text-anchor='middle' transform='rotate(-90 16 "
      << height / 2 << ")'>" << y_label << (log_y ? " (log2)" : "") << "</text>\n";
  int color = 0;
  double legend_y = margin;
  for (const Series& s : series) {
    if (s.points.empty()) continue;
    std::ostringstream path;
    for (std::size_t i = 0; i < s.points.size(); ++i)
      path << (i ? " L" : "M") << px(s.points[i].first) << ' ' << py(s.points[i].second);
    svg << "<path d='" << path.str() << "' fill='none' stroke='" << colors[color % 7]
        << "' stroke-width='1.6'" << (s.dashed ? " stroke-dasharray='6 4'" : "") << "/>\n";
    if (!s.dashed)
      for (const auto& [x, y] : s.points)
        svg << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='2.6' fill='"
            << colors[color % 7] << "'/>\n";
    svg << "<text x='" << width - margin + 4 << "' y='" << legend_y << "' fill='"
        << colors[color % 7] << "' font-size='11'>" << s.label << "</text>\n";
    legend_y += 14;
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::string emit_plot(const std::string& csv_text, const std::string& kind,
                      const std::string& reference) {
  const Table table = parse_csv(csv_text);
  std::vector<Series> series;

  if (kind == "scaling") {
    if (table.rows.empty()) return render_svg(series, "size", "learning time", true);
    const int cell_col = column_of(table, "cell");
    const int lt_col = column_of(table, "learning_time");
    // cell labels look like "env.size=8 agent.planner=\"ts\"": split the
    // size dimension out and group the rest.
    std::map<std::string, std::map<double, std::vector<double>>> grouped;
    for (const auto& row : table.rows) {
      const std::string& label = row[static_cast<std::size_t>(cell_col)];
      double size = 0.0;
      std::string rest;
      std::istringstream ls(label);
      std::string part;
      while (ls >> part) {
        const std::size_t eq = part.find('=');
        const std::string key = part.substr(0, eq);
        const std::string value = part.substr(eq + 1);
        if (key.find("size") != std::string::npos || key.find("arms") != std::string::npos ||
            key.find("tau") != std::string::npos) {
          size = std::stod(value);
        } else {
          if (!rest.empty()) rest += ' ';
          rest += part;
        }
      }
      const double lt = std::stod(row[static_cast<std::size_t>(lt_col)]);
      grouped[rest][size].push_back(lt < 0 ? 1e9 : lt);
    }
    for (const auto& [label, by_size] : grouped) {
      Series s;
      s.label = label.empty() ? "median" : label;
      for (const auto& [size, values] : by_size) s.points.emplace_back(size, median(values));
      series.push_back(std::move(s));
    }
    if (!reference.empty() && !series.empty()) {
      Series ref;
      ref.dashed = true;
      ref.label = reference == "pow2" ? "2^N" : reference == "identity" ? "y=x" : "log N";
      for (const auto& [x, y] : series.front().points) {
        double v = reference == "pow2" ? std::pow(2.0, x)
                   : reference == "identity" ? x
                                             : std::log2(std::max(x, 1.0));
        ref.points.emplace_back(x, v);
      }
      series.push_back(std::move(ref));
    }
    return render_svg(series, "problem size", "learning time", true);
  }

  if (kind == "lines") {
    if (table.rows.empty() || table.header.size() < 2)
      return render_svg(series, "x", "y", false);
    for (std::size_t c = 1; c < table.header.size(); ++c) {
      Series s;
      s.label = table.header[c];
      for (const auto& row : table.rows)
        s.points.emplace_back(std::stod(row[0]), std::stod(row[c]));
      series.push_back(std::move(s));
    }
    return render_svg(series, table.header[0], "value", false);
  }

  throw ParseError("plot: unknown kind '" + kind + "'");
}

}  // namespace rlinfo
