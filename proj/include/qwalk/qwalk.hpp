#pragma once

#include "cmv.hpp"
#include "coin.hpp"
#include "core.hpp"
#include "curves.hpp"
#include "loc_halfline.hpp"
#include "loc_line.hpp"
#include "quadrature.hpp"
#include "scan.hpp"
#include "schur.hpp"
#include "verify.hpp"
