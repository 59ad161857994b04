// qsdc.hpp
// Umbrella header for the whole library.
#pragma once

#include "qsdc/bases.hpp"
#include "qsdc/encoding.hpp"
#include "qsdc/protocol.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/state_vector.hpp"
#include "qsdc/swap_engine.hpp"
#include "qsdc/transcript.hpp"
