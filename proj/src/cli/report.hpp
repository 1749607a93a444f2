#pragma once

#include "coronawalk/exact.hpp"

#include <json.hpp>

#include <complex>
#include <optional>
#include <string>

namespace coronawalk::cli {

using Json = nlohmann::ordered_json;

/// Real rounded to 15 significant digits; re-serializing the parsed value
/// reproduces the same text.
Json real(double x);
Json complex_value(std::complex<double> z);
Json exact_value(const std::optional<QuadInt>& q);

std::string to_text(const Json& report);

}  // namespace coronawalk::cli
