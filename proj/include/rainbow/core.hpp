#pragma once

// Small value types shared by every module: color subsets and dense square
// tables of step values.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

// Colors are 1-based in every public interface (JSON, CLI, pre-colorings).
using Color = int;

// A subset I of [k], bit (c-1) set iff color c is in I.
using ColorSet = std::uint32_t;

inline constexpr int kMaxColors = 8;

constexpr ColorSet color_bit(Color c) { return ColorSet{1} << (c - 1); }
constexpr ColorSet full_set(int k) { return (ColorSet{1} << k) - 1; }
constexpr int set_size(ColorSet s) { return std::popcount(s); }
constexpr bool contains(ColorSet s, Color c) { return (s & color_bit(c)) != 0; }
constexpr bool is_subset(ColorSet a, ColorSet b) { return (a & ~b) == 0; }

// Canonical text form: sorted comma list, "" for the empty set ("1,3").
std::string to_text(ColorSet s);
// Inverse of to_text; throws ValidationError on malformed input or colors
// outside [1, k].
ColorSet parse_color_set(std::string_view text, int k);

// Row-major m x m table of doubles.
class Table {
 public:
  Table() = default;
  explicit Table(int m, double fill = 0.0) : m_(m), data_(std::size_t(m) * m, fill) {}

  int size() const { return m_; }
  double& operator()(int a, int b) { return data_[std::size_t(a) * m_ + b]; }
  double operator()(int a, int b) const { return data_[std::size_t(a) * m_ + b]; }

  std::span<double> row(int a) { return {data_.data() + std::size_t(a) * m_, std::size_t(m_)}; }
  std::span<const double> row(int a) const {
    return {data_.data() + std::size_t(a) * m_, std::size_t(m_)};
  }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> values() const { return data_; }

  // Sets (a,b) and (b,a).
  void set_sym(int a, int b, double v) {
    (*this)(a, b) = v;
    (*this)(b, a) = v;
  }
  bool is_symmetric(double tol = 0.0) const;
  double max_abs_diff(const Table& other) const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  int m_ = 0;
  std::vector<double> data_;
};

}  // namespace rainbow
