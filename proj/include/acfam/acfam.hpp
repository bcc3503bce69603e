#pragma once

#include "acfam/bounds.hpp"
#include "acfam/constructions.hpp"
#include "acfam/elimination.hpp"
#include "acfam/errors.hpp"
#include "acfam/experiment.hpp"
#include "acfam/family.hpp"
#include "acfam/family_io.hpp"
#include "acfam/matrix.hpp"
#include "acfam/polynomial.hpp"
#include "acfam/report.hpp"
#include "acfam/scalar.hpp"
#include "acfam/sos.hpp"
#include "acfam/spectrum.hpp"
#include "acfam/structure.hpp"
