#pragma once

// Umbrella header.

#include "crec/bigint.hpp"
#include "crec/bigpoly.hpp"
#include "crec/bench.hpp"
#include "crec/bounds.hpp"
#include "crec/error.hpp"
#include "crec/eval.hpp"
#include "crec/recurrence.hpp"
#include "crec/repr.hpp"
#include "crec/verify.hpp"
