#pragma once

#include "wk/airy.hpp"
#include "wk/determinant.hpp"
#include "wk/io.hpp"
#include "wk/kp_wave.hpp"
#include "wk/multipoly.hpp"
#include "wk/npoint.hpp"
#include "wk/partition.hpp"
#include "wk/rational.hpp"
#include "wk/sato.hpp"
#include "wk/schur.hpp"
#include "wk/series1.hpp"
#include "wk/series2.hpp"
#include "wk/verify.hpp"
