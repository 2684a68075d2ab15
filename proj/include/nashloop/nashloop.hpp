#pragma once

#include "nashloop/exactmath.hpp"
#include "nashloop/cone.hpp"
#include "nashloop/semigroup.hpp"
#include "nashloop/nash.hpp"
#include "nashloop/iso.hpp"
#include "nashloop/search.hpp"
#include "nashloop/cone_file.hpp"
#include "nashloop/fixtures.hpp"
#include "nashloop/verify.hpp"
