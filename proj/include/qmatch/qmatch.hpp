#pragma once

#include "qmatch/enumerate.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"
#include "qmatch/graph6.hpp"
#include "qmatch/matching.hpp"
#include "qmatch/polynomial.hpp"
#include "qmatch/proof.hpp"
#include "qmatch/spectral.hpp"
#include "qmatch/thresholds.hpp"
#include "qmatch/verify.hpp"
