#include "dclab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dclab::io {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string svg_open(int width, int height) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  return os.str();
}

std::string svg_line(const std::string& x1, const std::string& y1, const std::string& x2,
                     const std::string& y2, const char* stroke, const char* width) {
  std::ostringstream os;
  os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
     << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
  return os.str();
}

const char* level_color(int level) {
  static const char* palette[] = {"#1f3b73", "#b03a2e", "#1e8449",
                                  "#9a7d0a", "#6c3483", "#117a8b"};
  return palette[(level - 1) % 6];
}

}  // namespace

std::string fixed_decimal(const Rational& r, int digits) {
  require(digits >= 0 && digits <= 30, "digit count out of range");
  bool negative = r < 0;
  Rational v = negative ? Rational(-r) : r;
  Int scale = pow_int(10, static_cast<std::uint64_t>(digits));
  // Round half away from zero: floor(v * scale + 1/2).
  Int rounded = (numerator(v) * scale * 2 + denominator(v)) / (2 * denominator(v));
  Int whole = rounded / scale;
  Int frac = rounded % scale;
  std::ostringstream os;
  if (negative && rounded != 0) os << '-';
  os << whole;
  if (digits > 0) {
    std::string f = frac.str();
    os << '.' << std::string(static_cast<std::size_t>(digits) - f.size(), '0') << f;
  }
  return os.str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  require(columns_ > 0, "header must be nonempty");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body_ += ',';
    body_ += header[i];
  }
  body_ += '\n';
}

void CsvWriter::add_row(std::vector<std::string> cells) {
  require(cells.size() == columns_, "row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

std::string CsvWriter::str() const { return body_; }

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw std::runtime_error("cannot create directory " + path + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string comb_svg(int levels, const combdendrite::CombParams& params) {
  require(levels >= 1 && levels <= 6, "render at most 6 levels");
  const int width = 1000, height = 420;
  const Rational x0(40), x_span(920), y_base(380), y_span(900);
  std::ostringstream os;
  os << svg_open(width, height);
  os << svg_line(fixed_decimal(x0, 2), fixed_decimal(y_base, 2),
                 fixed_decimal(x0 + x_span, 2), fixed_decimal(y_base, 2), "black", "2");
  for (int n = 1; n <= levels; ++n) {
    combdendrite::SpikeGrid grid = combdendrite::spike_grid(n, params);
    for (const Int& j : grid.indices) {
      Rational x = x0 + x_span * Rational(j, grid.denominator);
      Rational top = y_base - y_span * grid.height;
      os << svg_line(fixed_decimal(x, 2), fixed_decimal(y_base, 2), fixed_decimal(x, 2),
                     fixed_decimal(top, 2), level_color(n), "1");
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string gehman_svg(const gehman::GehmanDendrite& d) {
  require(d.nodes().size() <= 5000, "tree too large to render");
  const int width = 1000, height = 440;
  const Rational x0(40), x_span(920), y0(40), y_span(360);
  int k = d.shift().alphabet_size();

  // Horizontal slot nested under the parent: x(w) = (value(w) + 1/2) / k^{|w|}.
  auto slot = [&](const gehman::Word& w) {
    Int value = 0;
    for (char c : w) value = value * k + (c - '0');
    Int den = pow_int(k, static_cast<std::uint64_t>(w.size()));
    return Rational(2 * value + 1, 2 * den);
  };

  std::ostringstream os;
  os << svg_open(width, height);
  for (const gehman::Word& w : d.nodes()) {
    if (w.empty()) continue;
    gehman::Word parent = w.substr(0, w.size() - 1);
    Rational px = x0 + x_span * slot(parent);
    Rational py = y0 + y_span * d.root_distance(parent);
    Rational cx = x0 + x_span * slot(w);
    Rational cy = y0 + y_span * d.root_distance(w);
    os << svg_line(fixed_decimal(px, 2), fixed_decimal(py, 2), fixed_decimal(cx, 2),
                   fixed_decimal(cy, 2), level_color(static_cast<int>(w.size())), "1");
  }
  for (const gehman::Word& w : d.nodes()) {
    Rational cx = x0 + x_span * slot(w);
    Rational cy = y0 + y_span * d.root_distance(w);
    os << "<circle cx=\"" << fixed_decimal(cx, 2) << "\" cy=\"" << fixed_decimal(cy, 2)
       << "\" r=\"2\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string df_svg(const chaoscore::EmpiricalDF& df) {
  require(!df.delta_grid.empty(), "empty estimate grid");
  const int width = 640, height = 480;
  const Rational x0(60), x_span(540), y_base(420), y_span(360);
  std::ostringstream os;
  os << svg_open(width, height);
  os << svg_line(fixed_decimal(x0, 2), fixed_decimal(y_base, 2),
                 fixed_decimal(x0 + x_span, 2), fixed_decimal(y_base, 2), "black", "1");
  os << svg_line(fixed_decimal(x0, 2), fixed_decimal(y_base, 2), fixed_decimal(x0, 2),
                 fixed_decimal(y_base - y_span, 2), "black", "1");

  auto emit_steps = [&](const std::vector<Rational>& values, const char* stroke) {
    std::ostringstream pts;
    Rational prev_x = x0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      Rational x = x0 + x_span * (df.delta_grid[i] / df.diameter);
      Rational y = y_base - y_span * values[i];
      pts << fixed_decimal(prev_x, 2) << ',' << fixed_decimal(y, 2) << ' '
          << fixed_decimal(x, 2) << ',' << fixed_decimal(y, 2) << ' ';
      prev_x = x;
    }
    os << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"2\"/>\n";
  };
  emit_steps(df.lower_est, "#1f3b73");
  emit_steps(df.upper_est, "#b03a2e");
  os << "</svg>\n";
  return os.str();
}

}  // namespace dclab::io
