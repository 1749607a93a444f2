#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace coronawalk::cli {

Json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  double rounded = std::strtod(buf, nullptr);
  if (rounded == 0) rounded = 0;  // drop negative zero
  return rounded;
}

Json complex_value(std::complex<double> z) { return Json{{"re", real(z.real())}, {"im", real(z.imag())}}; }

Json exact_value(const std::optional<QuadInt>& q) {
  if (!q) return nullptr;
  return Json{{"a", q->a}, {"b", q->b}, {"delta", q->delta}, {"symbolic", q->to_string()}};
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) flatten(value, prefix + "[" + std::to_string(i++) + "]", out);
    if (j.empty()) out << prefix << ": []\n";
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << '\n';
  } else {
    out << prefix << ": " << j.dump() << '\n';
  }
}

}  // namespace

std::string to_text(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace coronawalk::cli
