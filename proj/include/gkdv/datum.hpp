#pragma once

#include <limits>
#include <string>
#include <string_view>

#include "gkdv/spectral_core.hpp"

namespace gkdv {

/// sech_pair: a sech of the given amplitude and width plus a second hump of
/// half the amplitude and 1.5 times the width, centred two widths to its left.
/// The asymmetry gives a Gevrey energy that grows from t = 0.
enum class DatumFamily { sech, sech_pair, gaussian, cosine, soliton, file };

DatumFamily parse_datum_family(std::string_view name);
std::string_view to_string(DatumFamily family);

struct DatumSpec {
  DatumFamily family = DatumFamily::sech;
  double amplitude = 1.0;
  double width = 1.0;
  /// Centre of the profile; NaN means mid-domain (phase 0 for cosine).
  double center = std::numeric_limits<double>::quiet_NaN();
  double wavenumber = 1.0;  ///< cosine: must be a grid wavenumber
  double speed = 1.0;       ///< soliton wave speed c > 0
  std::string path;         ///< file: checkpoint to load
};

/// Travelling wave of u_t + u_xxx + (u^4)_x = 0 with speed c, centred at 0:
/// (5c/2)^{1/3} sech^{2/3}(3 sqrt(c) x / 2).
double soliton_profile(double x, double speed);

/// Builds the datum on `grid`. Profiles are centred, not periodized; the
/// domain should be long enough for the tails to vanish at the boundary.
SpectralField make_datum(const Grid& grid, const DatumSpec& spec);

}  // namespace gkdv
