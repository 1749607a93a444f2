#include "coronawalk/graph_spec.hpp"

#include "coronawalk/corona.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <utility>

namespace coronawalk {

namespace {

constexpr std::array<std::pair<std::string_view, Family>, 7> kNamed = {{
    {"path", Family::path},
    {"cycle", Family::cycle},
    {"complete", Family::complete},
    {"cocktail", Family::cocktail},
    {"empty", Family::empty},
    {"star", Family::star},
    {"file", Family::file},
}};

std::string_view family_name(Family f) {
  if (f == Family::corona) return "corona";
  for (const auto& [name, kind] : kNamed)
    if (kind == f) return name;
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GraphSpec parse() {
    GraphSpec spec = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) throw SpecParseError("unexpected trailing input", pos_);
    return spec;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw SpecParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SpecParseError("expected a graph family name", start);
    return text_.substr(start, pos_ - start);
  }

  GraphSpec parse_spec() {
    const std::size_t start = (skip_ws(), pos_);
    const std::string_view name = identifier();
    GraphSpec spec;
    if (name == "corona") {
      spec.kind = Family::corona;
      expect('(');
      spec.factors.push_back(parse_spec());
      expect(',');
      spec.factors.push_back(parse_spec());
      expect(')');
      return spec;
    }
    bool known = false;
    for (const auto& [n, kind] : kNamed) {
      if (n == name) {
        spec.kind = kind;
        known = true;
      }
    }
    if (!known) throw SpecParseError("unknown graph family '" + std::string(name) + "'", start);
    expect(':');
    skip_ws();
    if (spec.kind == Family::file) {
      // A path runs to the next top-level ',' or ')' (or end of input).
      const std::size_t p0 = pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
      std::string_view p = text_.substr(p0, pos_ - p0);
      while (!p.empty() && std::isspace(static_cast<unsigned char>(p.back()))) p.remove_suffix(1);
      if (p.empty()) throw SpecParseError("expected a file path", p0);
      spec.path = std::string(p);
      return spec;
    }
    const std::size_t p0 = pos_;
    std::size_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range)
      throw SpecParseError("size out of range", p0);
    if (ec != std::errc() || ptr == first) throw SpecParseError("expected a size", p0);
    pos_ += static_cast<std::size_t>(ptr - first);
    if (value == 0 || value > kMaxFamilySize)
      throw SpecParseError("size " + std::to_string(value) + " out of range [1, " +
                               std::to_string(kMaxFamilySize) + "]",
                           p0);
    spec.size = value;
    return spec;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string GraphSpec::to_string() const {
  switch (kind) {
    case Family::corona:
      return "corona(" + factors.at(0).to_string() + "," + factors.at(1).to_string() + ")";
    case Family::file:
      return "file:" + path;
    default:
      return std::string(family_name(kind)) + ":" + std::to_string(size);
  }
}

GraphSpec parse_graph_spec(std::string_view text) { return Parser(text).parse(); }

Graph build_family(const GraphSpec& spec) {
  switch (spec.kind) {
    case Family::path: return path_graph(spec.size);
    case Family::cycle: return cycle_graph(spec.size);
    case Family::complete: return complete_graph(spec.size);
    case Family::cocktail: return cocktail_party_graph(spec.size);
    case Family::empty: return empty_graph(spec.size);
    case Family::star: return star_graph(spec.size);
    case Family::file: return read_edge_list(spec.path);
    case Family::corona:
      if (spec.factors.size() != 2) throw std::invalid_argument("corona needs two factors");
      return corona_adjacency(build_family(spec.factors[0]), build_family(spec.factors[1]));
  }
  throw std::invalid_argument("unknown graph family");
}

}  // namespace coronawalk
