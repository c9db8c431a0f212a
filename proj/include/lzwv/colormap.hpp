#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lzwv {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// "#rrggbb", lowercase.
std::string to_hex(Rgb color);
/// Parses "#rrggbb" (either case). Throws InvalidArgument.
Rgb rgb_from_hex(std::string_view text);

struct ControlPoint {
  double t;
  Rgb color;
};

/// Piecewise-linear colormap over [0, 1].
class Colormap {
 public:
  /// Requires >= 2 points, first t == 0, last t == 1, t strictly increasing.
  Colormap(std::string name, std::vector<ControlPoint> points);

  const std::string& name() const noexcept { return name_; }
  std::span<const ControlPoint> control_points() const noexcept { return points_; }

  /// Per-channel interpolation, rounded half-up. Throws OutOfRange outside [0, 1].
  Rgb sample(double t) const;

 private:
  std::string name_;
  std::vector<ControlPoint> points_;
};

/// {"sequential_blue", "coolwarm", "jet"}
std::vector<std::string> list_colormaps();

/// Throws UnknownColormap.
const Colormap& colormap_by_name(std::string_view name);

/// Min-max rescaling onto [0, 1]; a constant sequence maps to 0.5.
/// Throws EmptyInput.
std::vector<double> normalize(std::span<const double> values);
std::vector<double> normalize(std::span<const std::uint64_t> values);

}  // namespace lzwv
