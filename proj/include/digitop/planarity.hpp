#ifndef DIGITOP_PLANARITY_HPP_
#define DIGITOP_PLANARITY_HPP_

#include "digitop/image.hpp"

namespace digitop {

/// Exact planarity of the adjacency graph. The graph is split into
/// biconnected blocks and each block is embedded face by face with the
/// Demoucron-Malgrange-Pertuiset fragment procedure.
bool is_planar(const DigitalImage& image);

}  // namespace digitop

#endif  // DIGITOP_PLANARITY_HPP_
