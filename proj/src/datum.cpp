#include "gkdv/datum.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "gkdv/checkpoint.hpp"

namespace gkdv {

DatumFamily parse_datum_family(std::string_view name) {
  if (name == "sech") return DatumFamily::sech;
  if (name == "sech_pair") return DatumFamily::sech_pair;
  if (name == "gaussian") return DatumFamily::gaussian;
  if (name == "cosine") return DatumFamily::cosine;
  if (name == "soliton") return DatumFamily::soliton;
  if (name == "file") return DatumFamily::file;
  throw std::invalid_argument(fmt::format("unknown datum family '{}'", name));
}

std::string_view to_string(DatumFamily family) {
  switch (family) {
    case DatumFamily::sech: return "sech";
    case DatumFamily::sech_pair: return "sech_pair";
    case DatumFamily::gaussian: return "gaussian";
    case DatumFamily::cosine: return "cosine";
    case DatumFamily::soliton: return "soliton";
    case DatumFamily::file: return "file";
  }
  return "unknown";
}

double soliton_profile(double x, double speed) {
  const double amplitude = std::cbrt(2.5 * speed);
  const double y = 1.5 * std::sqrt(speed) * x;
  return amplitude * std::pow(std::cosh(y), -2.0 / 3.0);
}

SpectralField make_datum(const Grid& grid, const DatumSpec& spec) {
  const double default_center = spec.family == DatumFamily::cosine ? 0.0 : 0.5 * grid.length();
  const double center = std::isnan(spec.center) ? default_center : spec.center;
  switch (spec.family) {
    case DatumFamily::sech:
      if (!(spec.width > 0.0)) throw std::invalid_argument("datum: width must be positive");
      return forward(RealField::from_function(
          grid, [&](double x) { return spec.amplitude / std::cosh((x - center) / spec.width); }));
    case DatumFamily::sech_pair:
      if (!(spec.width > 0.0)) throw std::invalid_argument("datum: width must be positive");
      return forward(RealField::from_function(grid, [&](double x) {
        const double z = (x - center) / spec.width;
        return spec.amplitude * (1.0 / std::cosh(z) + 0.5 / std::cosh((z + 2.0) / 1.5));
      }));
    case DatumFamily::gaussian:
      if (!(spec.width > 0.0)) throw std::invalid_argument("datum: width must be positive");
      return forward(RealField::from_function(grid, [&](double x) {
        const double z = (x - center) / spec.width;
        return spec.amplitude * std::exp(-0.5 * z * z);
      }));
    case DatumFamily::cosine: {
      const double m = spec.wavenumber / grid.resolution();
      if (std::abs(m - std::round(m)) > 1e-9 || std::abs(m) >= static_cast<double>(grid.nyquist_index())) {
        throw std::invalid_argument(
            fmt::format("datum: cosine wavenumber {} is not a resolved grid wavenumber", spec.wavenumber));
      }
      // Built in Fourier space so the empty modes are exactly zero.
      const auto index = static_cast<std::size_t>(std::abs(std::lround(m)));
      const double k = grid.wavenumber(static_cast<std::ptrdiff_t>(index));
      std::vector<Complex> modes(grid.half_size());
      if (index == 0) {
        modes[0] = spec.amplitude;
      } else {
        modes[index] = 0.5 * spec.amplitude * std::polar(1.0, -k * center);
      }
      return SpectralField(grid, std::move(modes));
    }
    case DatumFamily::soliton:
      if (!(spec.speed > 0.0)) throw std::invalid_argument("datum: soliton speed must be positive");
      return forward(
          RealField::from_function(grid, [&](double x) { return soliton_profile(x - center, spec.speed); }));
    case DatumFamily::file: {
      const Checkpoint cp = read_checkpoint(spec.path);
      require_same_grid(grid, cp.field.grid());
      return forward(cp.field);
    }
  }
  throw std::invalid_argument("datum: unknown family");
}

}  // namespace gkdv
