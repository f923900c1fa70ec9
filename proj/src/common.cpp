#include "dynr/common.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dynr {

namespace {

bool parse_real(std::string_view s, double& out) {
  if (s.empty()) return false;
  std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size();
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParameterError("empty complex literal");

  const auto bad = [&] { return ParameterError("malformed complex literal '" + std::string(text) + "'"); };

  if (s.back() != 'i' && s.back() != 'j') {
    double re = 0;
    if (!parse_real(s, re)) throw bad();
    return {re, 0.0};
  }
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  double re = 0, im = 0;
  if (!re_part.empty() && !parse_real(re_part, re)) throw bad();
  if (!parse_real(im_part, im)) throw bad();
  return {re, im};
}

std::string format_complex(cplx value) {
  char re[64], im[64];
  std::snprintf(re, sizeof re, "%.17g", value.real());
  std::snprintf(im, sizeof im, "%.17g", std::abs(value.imag()));
  return std::string(re) + (std::signbit(value.imag()) ? "-" : "+") + im + "i";
}

std::string format_short(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

}  // namespace dynr
