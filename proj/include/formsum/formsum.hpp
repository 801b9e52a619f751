#pragma once

// Umbrella header.

#include "formsum/cert_json.hpp"
#include "formsum/config.hpp"
#include "formsum/form.hpp"
#include "formsum/fpd.hpp"
#include "formsum/harness.hpp"
#include "formsum/integer.hpp"
#include "formsum/multiplicative.hpp"
#include "formsum/parallel.hpp"
#include "formsum/poly.hpp"
#include "formsum/primes.hpp"
#include "formsum/roots.hpp"
#include "formsum/runner.hpp"
#include "formsum/sums.hpp"
#include "formsum/version.hpp"
