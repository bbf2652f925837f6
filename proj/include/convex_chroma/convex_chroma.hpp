#pragma once

#include "constructions.hpp"
#include "covering.hpp"
#include "error.hpp"
#include "family.hpp"
#include "geometry.hpp"
#include "graph.hpp"
#include "homothet_coloring.hpp"
#include "io.hpp"
#include "random.hpp"
#include "reports.hpp"
#include "translate_coloring.hpp"
#include "verify.hpp"
