#include "sqpack/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqpack {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string ramp_color(double frac) {
  // steel blue -> orange
  const int r = static_cast<int>(std::lround(70.0 + frac * (255.0 - 70.0)));
  const int g = static_cast<int>(std::lround(130.0 + frac * (140.0 - 130.0)));
  const int b = static_cast<int>(std::lround(180.0 + frac * (0.0 - 180.0)));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

void emit_rect(std::ostringstream& os, double x, double y, double w, double h,
               const std::string& attrs) {
  os << "  <rect x=\"" << format_double(x) << "\" y=\"" << format_double(y)
     << "\" width=\"" << format_double(w) << "\" height=\"" << format_double(h) << "\" "
     << attrs << "/>\n";
}

}  // namespace

std::string render_svg(const PackingCertificate& cert) {
  const Rect& o = cert.outer;
  const double w = o.extent_x();
  const double h = o.extent_y();
  const double stroke = std::max(w, h) / 1200.0;
  const int px_w = 900;
  const int px_h = std::max(1, static_cast<int>(std::lround(900.0 * h / w)));

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_w << "\" height=\""
     << px_h << "\" viewBox=\"" << format_double(o.x_lo) << " " << format_double(o.y_lo)
     << " " << format_double(w) << " " << format_double(h) << "\">\n";
  // Flip y so the packing's origin renders at the lower left.
  os << " <g transform=\"translate(0 " << format_double(o.y_lo + o.y_hi)
     << ") scale(1 -1)\">\n";
  emit_rect(os, o.x_lo, o.y_lo, w, h,
            "fill=\"none\" stroke=\"#000\" stroke-width=\"" + format_double(2.0 * stroke) +
                "\" class=\"outer\"");

  const double span = cert.n_hi - 1 > cert.n_lo
                          ? static_cast<double>(cert.n_hi - 1 - cert.n_lo)
                          : 1.0;
  for (const PlacedSquare& q : cert.squares) {
    const double frac = static_cast<double>(q.n - cert.n_lo) / span;
    emit_rect(os, q.x_lo, q.y_lo, q.side, q.side,
              "fill=\"" + ramp_color(std::clamp(frac, 0.0, 1.0)) + "\" data-n=\"" +
                  std::to_string(q.n) + "\" class=\"square\"");
  }
  for (const TaggedRect& t : cert.residuals) {
    emit_rect(os, t.rect.x_lo, t.rect.y_lo, t.rect.extent_x(), t.rect.extent_y(),
              "fill=\"none\" stroke=\"#333\" stroke-width=\"" + format_double(stroke) +
                  "\" class=\"" + std::string(to_string(t.kind)) + "\"");
  }
  os << " </g>\n</svg>\n";
  return os.str();
}

void save_svg_file(const std::string& path, const PackingCertificate& cert) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render_svg(cert);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace sqpack
