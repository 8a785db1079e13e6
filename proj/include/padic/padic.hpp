#pragma once

// Umbrella header. Individual headers are self-contained; include this when
// you want the whole library.

#include <padic/common.hpp>
#include <padic/config.hpp>
#include <padic/residue.hpp>
#include <padic/polynomial.hpp>
#include <padic/exponents.hpp>
#include <padic/nondegeneracy.hpp>
#include <padic/counting.hpp>
#include <padic/cubic.hpp>
#include <padic/compose.hpp>
#include <padic/io.hpp>
#include <padic/verify.hpp>
