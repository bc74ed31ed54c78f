#include "bhdpc/vertex.hpp"

#include <cctype>
#include <sstream>

#include "bhdpc/errors.hpp"

namespace bhdpc {

Vertex Vertex::from_coords(std::span<const int> coords) {
  if (coords.empty() || coords.size() > static_cast<std::size_t>(kMaxDimension)) {
    throw InvalidInput("vertex must have between 1 and 31 digits, got " +
                       std::to_string(coords.size()));
  }
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] > 3) {
      throw InvalidInput("vertex digit " + std::to_string(coords[i]) + " at position " +
                         std::to_string(i) + " is outside {0,1,2,3}");
    }
    code |= static_cast<std::uint64_t>(coords[i]) << (2 * i);
  }
  return Vertex(static_cast<int>(coords.size()), code);
}

Vertex Vertex::from_code(int dim, std::uint64_t code) {
  if (dim < 1 || dim > kMaxDimension) {
    throw InvalidInput("vertex dimension " + std::to_string(dim) + " out of range");
  }
  return Vertex(dim, code);
}

Vertex Vertex::with_digit(int i, int value) const {
  const std::uint64_t mask = std::uint64_t{3} << (2 * i);
  return Vertex(dim_, (code_ & ~mask) | (static_cast<std::uint64_t>(value & 3) << (2 * i)));
}

std::vector<int> Vertex::coords() const {
  std::vector<int> out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = digit(i);
  return out;
}

std::string Vertex::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i > 0) s += ',';
    s += static_cast<char>('0' + digit(i));
  }
  s += ')';
  return s;
}

Vertex parse_vertex(const std::string& text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '(') {
    throw InvalidInput("vertex text must start with '(': \"" + text + "\"");
  }
  ++pos;
  std::vector<int> coords;
  while (true) {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw InvalidInput("expected a digit in vertex text \"" + text + "\"");
    }
    int value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > 3) throw InvalidInput("vertex digit out of range in \"" + text + "\"");
      ++pos;
    }
    coords.push_back(value);
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      break;
    }
    throw InvalidInput("malformed vertex text \"" + text + "\"");
  }
  skip_ws();
  if (pos != text.size()) throw InvalidInput("trailing characters in vertex text \"" + text + "\"");
  return Vertex::from_coords(coords);
}

}  // namespace bhdpc
