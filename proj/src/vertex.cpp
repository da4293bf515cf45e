#include "lpuniq/vertex.hpp"

#include <charconv>
#include <stdexcept>

namespace lpuniq {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

template <typename Int>
Int parse_int(std::string_view text) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::string VertexId::to_string() const {
  std::string out;
  switch (shape()) {
    case Shape::Lattice: {
      const auto& c = coords();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ':';
        out += std::to_string(c[i]);
      }
      break;
    }
    case Shape::Word:
      out = "r";
      for (auto letter : letters()) {
        out += '.';
        out += std::to_string(letter);
      }
      break;
    case Shape::Token:
      out = name();
      break;
  }
  return out;
}

VertexId VertexId::parse(std::string_view text, Shape shape) {
  switch (shape) {
    case Shape::Lattice: {
      Coords c;
      std::size_t start = 0;
      while (true) {
        auto colon = text.find(':', start);
        c.push_back(parse_int<std::int64_t>(text.substr(start, colon - start)));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
      }
      return lattice(std::move(c));
    }
    case Shape::Word: {
      if (text.empty() || text.front() != 'r')
        throw std::invalid_argument("tree vertex must start with 'r': '" + std::string(text) + "'");
      std::vector<std::uint32_t> w;
      std::size_t pos = 1;
      while (pos < text.size()) {
        if (text[pos] != '.')
          throw std::invalid_argument("malformed tree vertex '" + std::string(text) + "'");
        auto next = text.find('.', pos + 1);
        w.push_back(parse_int<std::uint32_t>(text.substr(pos + 1, next - pos - 1)));
        pos = next == std::string_view::npos ? text.size() : next;
      }
      return word(std::move(w));
    }
    case Shape::Token:
      return token(std::string(text));
  }
  throw std::invalid_argument("unknown vertex shape");
}

std::size_t VertexId::hash() const noexcept {
  std::size_t h = value_.index();
  switch (shape()) {
    case Shape::Lattice:
      for (auto c : coords()) h = mix(h, std::hash<std::int64_t>{}(c));
      break;
    case Shape::Word:
      for (auto l : letters()) h = mix(h, std::hash<std::uint32_t>{}(l));
      h = mix(h, letters().size());
      break;
    case Shape::Token:
      h = mix(h, std::hash<std::string>{}(name()));
      break;
  }
  return h;
}

}  // namespace lpuniq
