#pragma once

// Umbrella header for the observa library.

#include "observa/automata.hpp"
#include "observa/fixtures.hpp"
#include "observa/format.hpp"
#include "observa/language_ops.hpp"
#include "observa/observability.hpp"
#include "observa/oracle.hpp"
#include "observa/regex.hpp"
#include "observa/suite.hpp"
#include "observa/sweeps.hpp"
#include "observa/witness.hpp"
