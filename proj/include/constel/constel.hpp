#pragma once

// Umbrella header: exact enumeration of rooted m-hypermaps and
// m-constellations through symmetric-group characters, with a brute-force
// permutation oracle and the machinery around Littlewood's character
// factorization.

#include "constel/betaset.hpp"
#include "constel/census.hpp"
#include "constel/charengine.hpp"
#include "constel/exact.hpp"
#include "constel/littlewood.hpp"
#include "constel/oracle.hpp"
#include "constel/parallel.hpp"
#include "constel/partition.hpp"
#include "constel/poly.hpp"
#include "constel/relation.hpp"
#include "constel/series.hpp"
