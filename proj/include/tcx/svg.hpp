#pragma once

#include <string>

#include "tcx/complex.hpp"
#include "tcx/geodesic.hpp"

namespace tcx {

// Presentation-only renderings; no analysis depends on these.
std::string svg_links(const TriangleComplex& X);
std::string svg_patches(const TriangleComplex& X);
std::string svg_trace(const TriangleComplex& X, const GeodesicPath& path);

}  // namespace tcx
