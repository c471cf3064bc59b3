#pragma once

#include "shiftlift/construct.hpp"
#include "shiftlift/digest.hpp"
#include "shiftlift/graph.hpp"
#include "shiftlift/interlacing.hpp"
#include "shiftlift/io.hpp"
#include "shiftlift/lift.hpp"
#include "shiftlift/matching.hpp"
#include "shiftlift/parallel.hpp"
#include "shiftlift/polynomial.hpp"
#include "shiftlift/search.hpp"
#include "shiftlift/spectral.hpp"
