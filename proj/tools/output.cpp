#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cookiewalk::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

Table::Row& Table::Row::operator<<(const std::string& v) {
  cells_.push_back(v);
  return *this;
}

Table::Row& Table::Row::operator<<(double v) { return *this << format_double(v); }
Table::Row& Table::Row::operator<<(std::int64_t v) { return *this << std::to_string(v); }
Table::Row& Table::Row::operator<<(std::uint64_t v) { return *this << std::to_string(v); }

Table::Row::~Row() {
  cells_.resize(table_.columns_.size());
  table_.rows_.push_back(std::move(cells_));
}

std::size_t Table::column(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

namespace {

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

std::optional<double> to_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string Table::to_csv(const std::string& comment) const {
  std::string out = "# " + comment + "\n" + join(columns_) + "\n";
  for (const auto& r : rows_) out += join(r) + "\n";
  return out;
}

std::string render_svg(const Table& table, const std::string& x, const std::string& y,
                       const std::string& title) {
  const std::size_t xi = table.column(x), yi = table.column(y);
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : table.rows()) {
    auto a = to_number(r[xi]), b = to_number(r[yi]);
    if (a && b) pts.emplace_back(*a, *b);
  }

  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end());
    x0 = xmin->first;
    x1 = xmax->first;
    auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(),
                                            [](auto& a, auto& b) { return a.second < b.second; });
    y0 = ymin->second;
    y1 = ymax->second;
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n"
    << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\">" << label(x0) << "</text>\n"
    << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"end\">" << label(x1)
    << "</text>\n"
    << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" text-anchor=\"end\">" << label(y0)
    << "</text>\n"
    << "<text x=\"" << L - 4 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\">" << label(y1)
    << "</text>\n"
    << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << x
    << "</text>\n"
    << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
    << ")\" text-anchor=\"middle\">" << y << "</text>\n"
    << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s << ' ';
    s << fixed(px(pts[i].first)) << ',' << fixed(py(pts[i].second));
  }
  s << "\"/>\n</svg>\n";
  return s.str();
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& bytes) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
  return path;
}

}  // namespace cookiewalk::cli
