#pragma once

#include <string>

#include "crepant/resolve.hpp"

namespace crepant {

// Deterministic SVG picture of a 2d lattice triangulation: grid dots for the
// ambient lattice, the polytope boundary, all triangulation edges, and the
// lattice points themselves (interior points highlighted). One lattice unit
// maps to 40px with a 20px margin; identical input yields identical bytes.
std::string render_svg(const Triangulation& t);

}  // namespace crepant
