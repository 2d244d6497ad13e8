#pragma once

// Umbrella header for the whole library.

#include "qea/catalog.hpp"
#include "qea/effect_algebra.hpp"
#include "qea/galois.hpp"
#include "qea/ideals.hpp"
#include "qea/io.hpp"
#include "qea/polytope.hpp"
#include "qea/poset.hpp"
#include "qea/qeffect.hpp"
#include "qea/rational.hpp"
#include "qea/report.hpp"
#include "qea/representation.hpp"
#include "qea/states.hpp"
#include "qea/tense.hpp"
#include "qea/terms.hpp"
