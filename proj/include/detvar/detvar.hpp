#pragma once

#include "detvar/cimodel.hpp"
#include "detvar/groebner.hpp"
#include "detvar/hypergraph.hpp"
#include "detvar/matrix.hpp"
#include "detvar/matroid.hpp"
#include "detvar/minors.hpp"
#include "detvar/polynomial.hpp"
#include "detvar/random.hpp"
#include "detvar/rational.hpp"
#include "detvar/secrig.hpp"
#include "detvar/verify.hpp"
