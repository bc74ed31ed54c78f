#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bhdpc {

inline constexpr int kMaxDimension = 31;

/// Partite class of a vertex. V0 holds even inner indices ("white"),
/// V1 odd ones ("black").
enum class Color : std::uint8_t { kWhite = 0, kBlack = 1 };

inline constexpr Color opposite(Color c) {
  return c == Color::kWhite ? Color::kBlack : Color::kWhite;
}

/// A vertex (a_0, ..., a_{n-1}) of BH_n with base-4 digits. a_0 is the inner
/// index. The digits are packed two bits each with a_0 in the low bits, so
/// comparing codes is the canonical order: lexicographic on
/// (a_{n-1}, ..., a_1, a_0).
class Vertex {
 public:
  Vertex() = default;

  /// Validating constructor; throws InvalidInput on a bad length or digit.
  static Vertex from_coords(std::span<const int> coords);
  static Vertex from_coords(std::initializer_list<int> coords) {
    return from_coords(std::span<const int>(coords.begin(), coords.size()));
  }
  /// Unchecked beyond the dimension range; `code` must be < 4^dim.
  static Vertex from_code(int dim, std::uint64_t code);

  int dim() const { return dim_; }
  std::uint64_t code() const { return code_; }
  int digit(int i) const { return static_cast<int>((code_ >> (2 * i)) & 3U); }
  int inner() const { return digit(0); }
  Color color() const { return (code_ & 1U) != 0 ? Color::kBlack : Color::kWhite; }
  Vertex with_digit(int i, int value) const;

  std::vector<int> coords() const;
  /// "(a0,a1,...)".
  std::string to_string() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.code_ <=> b.code_;
  }

 private:
  Vertex(int dim, std::uint64_t code) : dim_(static_cast<std::uint8_t>(dim)), code_(code) {}

  std::uint8_t dim_ = 0;
  std::uint64_t code_ = 0;
};

/// Ordered vertex sequence; endpoints are front() and back().
using Path = std::vector<Vertex>;

/// Parses "(2,0,1)". Whitespace around digits is allowed.
Vertex parse_vertex(const std::string& text);

}  // namespace bhdpc

template <>
struct std::hash<bhdpc::Vertex> {
  std::size_t operator()(const bhdpc::Vertex& v) const noexcept {
    return std::hash<std::uint64_t>{}(v.code() * 64 + static_cast<std::uint64_t>(v.dim()));
  }
};
