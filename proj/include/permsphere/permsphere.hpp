#pragma once

#include "permsphere/count_tables.hpp"
#include "permsphere/exact_laws.hpp"
#include "permsphere/extension_counts.hpp"
#include "permsphere/io.hpp"
#include "permsphere/limit_laws.hpp"
#include "permsphere/numeric.hpp"
#include "permsphere/permutation.hpp"
#include "permsphere/rng.hpp"
#include "permsphere/samplers.hpp"
#include "permsphere/verify.hpp"
