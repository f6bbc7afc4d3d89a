#pragma once

#include "sspdo/bernstein.hpp"
#include "sspdo/dense_construct.hpp"
#include "sspdo/error.hpp"
#include "sspdo/experiments.hpp"
#include "sspdo/integrate.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/polynomial.hpp"
#include "sspdo/problems.hpp"
#include "sspdo/rational.hpp"
#include "sspdo/registry.hpp"
#include "sspdo/shu_osher.hpp"
#include "sspdo/simplex.hpp"
#include "sspdo/ssp_certify.hpp"
#include "sspdo/tableau.hpp"
#include "sspdo/tableau_io.hpp"
