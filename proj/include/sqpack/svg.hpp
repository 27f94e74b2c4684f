#pragma once

#include <string>

#include "sqpack/verify.hpp"

namespace sqpack {

/// SVG 1.1 rendering of a certificate. viewBox is the outer rectangle; a
/// single group transform translate(0, y0+y1) scale(1,-1) flips the y axis so
/// the packing's origin sits at the lower left, and every <rect> carries the
/// certificate's raw coordinates (shortest round-trip decimals). Squares are
/// filled with an index-graded ramp, residuals stroked unfilled, one element
/// per item.
std::string render_svg(const PackingCertificate& cert);

void save_svg_file(const std::string& path, const PackingCertificate& cert);

/// Shortest decimal that round-trips to exactly v.
std::string format_double(double v);

}  // namespace sqpack
