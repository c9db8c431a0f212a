#include "lzwv/colormap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "lzwv/error.hpp"

namespace lzwv {

namespace {

std::uint8_t round_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

const std::array<Colormap, 3>& builtin_maps() {
  static const std::array<Colormap, 3> maps{
      Colormap("sequential_blue", {{0.0, {255, 255, 255}}, {1.0, {8, 48, 107}}}),
      Colormap("coolwarm", {{0.0, {59, 76, 192}}, {0.5, {241, 241, 241}}, {1.0, {180, 4, 38}}}),
      Colormap("jet", {{0.0, {0, 0, 128}},
                       {0.125, {0, 0, 255}},
                       {0.375, {0, 255, 255}},
                       {0.625, {255, 255, 0}},
                       {0.875, {255, 0, 0}},
                       {1.0, {128, 0, 0}}}),
  };
  return maps;
}

template <typename T>
std::vector<double> min_max(std::span<const T> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "cannot normalize an empty sequence");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = static_cast<double>(*lo);
  const double range = static_cast<double>(*hi) - min;
  std::vector<double> out;
  out.reserve(values.size());
  for (const T& v : values) {
    out.push_back(range == 0.0 ? 0.5 : (static_cast<double>(v) - min) / range);
  }
  return out;
}

}  // namespace

std::string to_hex(Rgb color) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", color.r, color.g, color.b);
  return buf;
}

Rgb rgb_from_hex(std::string_view text) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorCode::InvalidArgument, "bad hex color: " + std::string(text));
  };
  if (text.size() != 7 || text[0] != '#') {
    throw Error(ErrorCode::InvalidArgument, "bad hex color: " + std::string(text));
  }
  auto byte = [&](std::size_t i) {
    return static_cast<std::uint8_t>(nibble(text[i]) * 16 + nibble(text[i + 1]));
  };
  return Rgb{byte(1), byte(3), byte(5)};
}

Colormap::Colormap(std::string name, std::vector<ControlPoint> points)
    : name_(std::move(name)), points_(std::move(points)) {
  if (points_.size() < 2 || points_.front().t != 0.0 || points_.back().t != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "colormap " + name_ + " must span [0, 1]");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].t > points_[i - 1].t)) {
      throw Error(ErrorCode::InvalidArgument, "colormap " + name_ + " is not strictly increasing");
    }
  }
}

Rgb Colormap::sample(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "sample position " + std::to_string(t) + " outside [0, 1]");
  }
  std::size_t hi = 1;
  while (hi + 1 < points_.size() && t > points_[hi].t) ++hi;
  const ControlPoint& a = points_[hi - 1];
  const ControlPoint& b = points_[hi];
  const double f = (t - a.t) / (b.t - a.t);
  auto lerp = [f](std::uint8_t x, std::uint8_t y) {
    return round_channel(x + (static_cast<double>(y) - x) * f);
  };
  return Rgb{lerp(a.color.r, b.color.r), lerp(a.color.g, b.color.g), lerp(a.color.b, b.color.b)};
}

std::vector<std::string> list_colormaps() {
  std::vector<std::string> names;
  for (const auto& m : builtin_maps()) names.push_back(m.name());
  return names;
}

const Colormap& colormap_by_name(std::string_view name) {
  for (const auto& m : builtin_maps()) {
    if (m.name() == name) return m;
  }
  throw Error(ErrorCode::UnknownColormap, "no colormap named '" + std::string(name) + "'");
}

std::vector<double> normalize(std::span<const double> values) { return min_max(values); }

std::vector<double> normalize(std::span<const std::uint64_t> values) { return min_max(values); }

}  // namespace lzwv
