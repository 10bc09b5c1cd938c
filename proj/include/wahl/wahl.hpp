#pragma once

#include "wahl/arith.hpp"
#include "wahl/badcurves.hpp"
#include "wahl/bounds.hpp"
#include "wahl/curveconfig.hpp"
#include "wahl/discrepancy.hpp"
#include "wahl/io.hpp"
#include "wahl/reference_checks.hpp"
#include "wahl/tstring.hpp"
