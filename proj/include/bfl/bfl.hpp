#pragma once

// Umbrella header: blackboard-framed link diagrams, their surgery
// presentations, and cover-homology fingerprints.

#include "bracket.hpp"
#include "covers.hpp"
#include "diagram.hpp"
#include "errors.hpp"
#include "exact_algebra.hpp"
#include "geometry.hpp"
#include "linkfile.hpp"
#include "manifest.hpp"
#include "presentation.hpp"
