#pragma once

#include "narrow/bignum.hpp"
#include "narrow/constellation.hpp"
#include "narrow/evolution.hpp"
#include "narrow/io.hpp"
#include "narrow/pcoords.hpp"
#include "narrow/population.hpp"
#include "narrow/primes.hpp"
#include "narrow/search.hpp"
#include "narrow/tuple.hpp"
