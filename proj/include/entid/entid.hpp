#pragma once

#include "entid/matrix.hpp"
#include "entid/eigen.hpp"
#include "entid/bases.hpp"
#include "entid/random.hpp"
#include "entid/states.hpp"
#include "entid/gmap.hpp"
#include "entid/product_max.hpp"
#include "entid/identifier.hpp"
#include "entid/cj_maps.hpp"
#include "entid/multipartite.hpp"
#include "entid/descriptor.hpp"
#include "entid/scan.hpp"
#include "entid/verify.hpp"
