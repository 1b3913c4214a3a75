#include "rainbow/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

std::string to_text(ColorSet s) {
  std::string out;
  for (int c = 1; c <= 32 && s; ++c) {
    if (!(s & color_bit(c))) continue;
    s &= ~color_bit(c);
    if (!out.empty()) out += ',';
    out += std::to_string(c);
  }
  return out;
}

ColorSet parse_color_set(std::string_view text, int k) {
  ColorSet s = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    require(!tok.empty(), "empty color in set '" + std::string(text) + "'");
    int c = 0;
    for (char ch : tok) {
      require(ch >= '0' && ch <= '9', "bad color in set '" + std::string(text) + "'");
      c = c * 10 + (ch - '0');
      require(c <= 64, "color out of range in '" + std::string(text) + "'");
    }
    require(c >= 1 && c <= k, "color " + std::to_string(c) + " outside [1," + std::to_string(k) + "]");
    require(!(s & color_bit(c)), "repeated color in set '" + std::string(text) + "'");
    s |= color_bit(c);
    pos = comma + 1;
  }
  return s;
}

bool Table::is_symmetric(double tol) const {
  for (int a = 0; a < m_; ++a)
    for (int b = a + 1; b < m_; ++b)
      if (std::abs((*this)(a, b) - (*this)(b, a)) > tol) return false;
  return true;
}

double Table::max_abs_diff(const Table& other) const {
  require(other.m_ == m_, "table size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - other.data_[i]));
  return d;
}

}  // namespace rainbow
