#pragma once

// Text formats shared by the command-line tool and its tests.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cauchy/geometry.hpp"

namespace cauchy::cli {

/// Malformed command-line input (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// Rounds to 12 significant digits, the precision of every emitted numeral.
inline double round12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json to_json(Complex z) { return Json{{"re", round12(z.real())}, {"im", round12(z.imag())}}; }

inline Json to_json(const Rectangle& r) {
  return Json{{"re_lo", round12(r.re_lo())},
              {"re_hi", round12(r.re_hi())},
              {"im_lo", round12(r.im_lo())},
              {"im_hi", round12(r.im_hi())}};
}

inline std::string plain(Complex z) {
  return num(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

/// Splits on commas and whitespace and converts each field to a double.
inline std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::string spaced = text;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream in(spaced);
  std::vector<double> out;
  std::string field;
  while (in >> field) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || !std::isfinite(v))
      throw UsageError("invalid number '" + field + "' in " + what);
    out.push_back(v);
  }
  return out;
}

/// "re,im".
inline Complex parse_complex(const std::string& text, const std::string& what) {
  const auto v = parse_numbers(text, what);
  if (v.size() != 2) throw UsageError(what + " needs two numbers re,im");
  return {v[0], v[1]};
}

/// "re_lo,re_hi,im_lo,im_hi", the same separated by spaces, or a JSON object
/// with those keys.
inline Rectangle parse_rectangle(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
      return Rectangle(j.at("re_lo").get<double>(), j.at("re_hi").get<double>(),
                       j.at("im_lo").get<double>(), j.at("im_hi").get<double>());
    } catch (const Json::exception& e) {
      throw UsageError(std::string("invalid rectangle JSON: ") + e.what());
    }
  }
  const auto v = parse_numbers(text, "rectangle");
  if (v.size() != 4) throw UsageError("rectangle needs four numbers re_lo,re_hi,im_lo,im_hi");
  return Rectangle(v[0], v[1], v[2], v[3]);
}

inline Segment parse_segment(const std::string& text) {
  const auto v = parse_numbers(text, "segment");
  if (v.size() != 4) throw UsageError("segment needs four numbers a_re,a_im,b_re,b_im");
  return Segment({v[0], v[1]}, {v[2], v[3]});
}

struct SvgCell {
  Rectangle rect;
  std::string fill;
};

/// A static drawing of cells inside `frame`, y axis pointing up.
inline std::string svg_document(const Rectangle& frame, const std::vector<SvgCell>& cells,
                                const std::string& overlay = {}) {
  const double size = 512.0;
  const double sx = size / frame.width(), sy = size / frame.height();
  auto x = [&](double re) { return num((re - frame.re_lo()) * sx); };
  auto y = [&](double im) { return num((frame.im_hi() - im) * sy); };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" "
                    "viewBox=\"0 0 512 512\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& c : cells)
    out += "<rect x=\"" + x(c.rect.re_lo()) + "\" y=\"" + y(c.rect.im_hi()) + "\" width=\"" +
           num(c.rect.width() * sx) + "\" height=\"" + num(c.rect.height() * sy) + "\" fill=\"" +
           c.fill + "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  out += overlay;
  out += "</svg>\n";
  return out;
}

}  // namespace cauchy::cli
