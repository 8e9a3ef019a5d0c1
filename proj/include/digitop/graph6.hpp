#ifndef DIGITOP_GRAPH6_HPP_
#define DIGITOP_GRAPH6_HPP_

#include <string>
#include <string_view>

#include "digitop/image.hpp"

namespace digitop {

/// Largest point count with a one-byte graph6 header.
inline constexpr std::size_t kGraph6MaxPoints = 62;

/// Standard graph6 encoding under the image's current labeling: header byte
/// n + 63, then the upper triangle in column order (x(0,1), x(0,2), x(1,2),
/// x(0,3), ...) packed six bits per byte, most significant first, each byte
/// offset by 63. Throws DomainError for n > 62.
std::string graph6_encode(const DigitalImage& image);

/// Inverse of graph6_encode. An optional ">>graph6<<" prefix is accepted.
/// Throws DecodeError (with the failing byte offset) on malformed input,
/// including n = 0 and headers for n > 62.
DigitalImage graph6_decode(std::string_view text);

}  // namespace digitop

#endif  // DIGITOP_GRAPH6_HPP_
