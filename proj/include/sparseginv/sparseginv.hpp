#pragma once

// Umbrella header for the core library (the CLI report layer is separate).

#include "certificate.hpp"
#include "error.hpp"
#include "ginv.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "local_search.hpp"
#include "lp.hpp"
#include "matrix.hpp"
#include "rank1.hpp"
#include "rank2.hpp"
