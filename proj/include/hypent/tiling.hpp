#pragma once

#include <string>

#include "hypent/fuchsian.hpp"

namespace hypent {

struct TilingStyle {
  int size = 800;          // pixels
  bool mark_origin_image = true;  // dot at alpha_0(0)
  bool label_vertices = false;
};

struct Tiling {
  std::string svg;
  std::size_t tiles = 0;
};

// Translates of the fundamental polygon by all elements of word length
// <= depth, sides drawn as arcs orthogonal to the unit circle, colored by
// word length.
Tiling render_tiling(const SurfaceGroup& group, std::size_t depth, const TilingStyle& style = {});

}  // namespace hypent
