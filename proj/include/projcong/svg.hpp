#pragma once

#include <string>

#include "projcong/direction_space.hpp"
#include "projcong/shadow.hpp"

namespace projcong {

// Plate-carree plot of the circle arrangement with one dot per cell sample.
std::string arrangement_svg(const Arrangement& arr);

// Plain polygon plot in true plane coordinates.
std::string planar_body_svg(const PlanarBody& body);

}  // namespace projcong
