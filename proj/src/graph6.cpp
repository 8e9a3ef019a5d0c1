#include "digitop/graph6.hpp"

#include "digitop/error.hpp"

namespace digitop {
namespace {

constexpr char kBias = 63;
constexpr std::string_view kPrefix = ">>graph6<<";

std::size_t triangle_bits(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace

std::string graph6_encode(const DigitalImage& image) {
  const std::size_t n = image.size();
  if (n > kGraph6MaxPoints) {
    throw DomainError("graph6 encoding supports at most 62 points");
  }
  const std::size_t bits = triangle_bits(n);
  std::string out;
  out.reserve(1 + (bits + 5) / 6);
  out.push_back(static_cast<char>(n + kBias));

  int chunk = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (image.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + kBias));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + kBias));
  return out;
}

DigitalImage graph6_decode(std::string_view text) {
  std::size_t base = 0;
  if (text.starts_with(kPrefix)) {
    text.remove_prefix(kPrefix.size());
    base = kPrefix.size();
  }
  if (text.empty()) throw DecodeError(base, "missing size header");

  const auto header = static_cast<unsigned char>(text[0]);
  if (header == '~') {
    throw DecodeError(base, "multi-byte size header (n > 62) is not supported");
  }
  if (header < 63 || header > 126) {
    throw DecodeError(base, "size header byte out of range");
  }
  const std::size_t n = header - 63;
  if (n == 0) throw DecodeError(base, "image must have at least one point");

  const std::size_t bits = triangle_bits(n);
  const std::size_t body = (bits + 5) / 6;
  if (text.size() < 1 + body) {
    throw DecodeError(base + text.size(), "truncated adjacency bit vector");
  }
  if (text.size() > 1 + body) {
    throw DecodeError(base + 1 + body, "trailing bytes after adjacency data");
  }
  for (std::size_t k = 1; k <= body; ++k) {
    const auto c = static_cast<unsigned char>(text[k]);
    if (c < 63 || c > 126) throw DecodeError(base + k, "byte out of range");
  }
  const std::size_t pad = body * 6 - bits;
  if (pad > 0) {
    const int last = static_cast<unsigned char>(text[body]) - 63;
    if (last & ((1 << pad) - 1)) {
      throw DecodeError(base + body, "nonzero padding bits");
    }
  }

  DigitalImage image(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const int chunk = static_cast<unsigned char>(text[1 + k / 6]) - 63;
      if ((chunk >> (5 - k % 6)) & 1) image.connect(i, j);
    }
  }
  return image;
}

}  // namespace digitop
