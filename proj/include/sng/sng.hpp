#pragma once

// Umbrella header for the social network game toolkit.

#include "sng/document.hpp"
#include "sng/dot.hpp"
#include "sng/dynamics.hpp"
#include "sng/errors.hpp"
#include "sng/fixtures.hpp"
#include "sng/game.hpp"
#include "sng/generator.hpp"
#include "sng/network.hpp"
#include "sng/paradox.hpp"
#include "sng/rational.hpp"
#include "sng/serialize.hpp"
#include "sng/structure.hpp"
