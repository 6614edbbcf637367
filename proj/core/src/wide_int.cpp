#include "stbc/wide_int.hpp"

#include <algorithm>

namespace stbc {

std::string to_string(wide_int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // work on the negative side so INT128_MIN round-trips
  wide_int x = neg ? v : -v;
  std::string s;
  while (x != 0) {
    int d = static_cast<int>(-(x % 10));
    s.push_back(static_cast<char>('0' + d));
    x /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

wide_int parse_wide_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  wide_int v = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer literal: " + s);
    v = checked_sub(checked_mul(v, 10), c - '0');
  }
  return neg ? v : checked_sub(0, v);
}

}  // namespace stbc
