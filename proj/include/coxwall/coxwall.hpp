#ifndef COXWALL_COXWALL_HPP
#define COXWALL_COXWALL_HPP

#include "coxwall/errors.hpp"
#include "coxwall/system.hpp"
#include "coxwall/cyclotomic.hpp"
#include "coxwall/representation.hpp"
#include "coxwall/atlas.hpp"
#include "coxwall/parabolic.hpp"
#include "coxwall/davis.hpp"
#include "coxwall/walls.hpp"
#include "coxwall/quotient.hpp"
#include "coxwall/orbits.hpp"
#include "coxwall/wall_tree.hpp"
#include "coxwall/embedding.hpp"
#include "coxwall/measure.hpp"
#include "coxwall/witness.hpp"
#include "coxwall/cover.hpp"
#include "coxwall/io.hpp"

#endif  // COXWALL_COXWALL_HPP
