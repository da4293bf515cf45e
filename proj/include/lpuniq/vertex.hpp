#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lpuniq {

/// Opaque vertex identifier.
///
/// Three shapes are used by the built-in families: integer tuples for
/// lattices, words over {0, 1, ...} for regular trees (the empty word is the
/// root) and string tokens for graphs read from edge-list files. Ordering is
/// lexicographic within a shape, which gives every vertex set a canonical
/// iteration order.
class VertexId {
 public:
  using Coords = std::vector<std::int64_t>;

  struct Word {
    std::vector<std::uint32_t> letters;
    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;
  };

  enum class Shape { Lattice, Word, Token };

  VertexId() = default;

  static VertexId lattice(Coords coords) { return VertexId(Storage{std::move(coords)}); }
  static VertexId lattice1(std::int64_t n) { return lattice(Coords{n}); }
  static VertexId word(std::vector<std::uint32_t> letters) {
    return VertexId(Storage{Word{std::move(letters)}});
  }
  static VertexId root() { return word({}); }
  static VertexId token(std::string name) { return VertexId(Storage{std::move(name)}); }

  Shape shape() const noexcept { return static_cast<Shape>(value_.index()); }

  /// Accessors throw std::bad_variant_access on the wrong shape.
  const Coords& coords() const { return std::get<Coords>(value_); }
  const std::vector<std::uint32_t>& letters() const { return std::get<Word>(value_).letters; }
  const std::string& name() const { return std::get<std::string>(value_); }

  /// Text form: lattice "3" or "1:-2", tree "r" or "r.0.1", tokens verbatim.
  std::string to_string() const;

  /// Inverse of to_string() for the given shape.
  static VertexId parse(std::string_view text, Shape shape);

  std::size_t hash() const noexcept;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
  friend bool operator==(const VertexId&, const VertexId&) = default;

 private:
  using Storage = std::variant<Coords, Word, std::string>;
  explicit VertexId(Storage v) : value_(std::move(v)) {}
  Storage value_;
};

struct VertexHash {
  std::size_t operator()(const VertexId& v) const noexcept { return v.hash(); }
};

}  // namespace lpuniq

template <>
struct std::hash<lpuniq::VertexId> {
  std::size_t operator()(const lpuniq::VertexId& v) const noexcept { return v.hash(); }
};
