#pragma once

#include "lgvw/catalog.hpp"
#include "lgvw/census.hpp"
#include "lgvw/elliptic.hpp"
#include "lgvw/errors.hpp"
#include "lgvw/fermat.hpp"
#include "lgvw/groebner.hpp"
#include "lgvw/group.hpp"
#include "lgvw/invertible.hpp"
#include "lgvw/linalg.hpp"
#include "lgvw/loop.hpp"
#include "lgvw/mirror.hpp"
#include "lgvw/parser.hpp"
#include "lgvw/poincare.hpp"
#include "lgvw/polynomial.hpp"
#include "lgvw/quantization.hpp"
#include "lgvw/rational.hpp"
#include "lgvw/state_space.hpp"
#include "lgvw/virasoro.hpp"
#include "lgvw/weights.hpp"
#include "lgvw/weyl.hpp"
