/*!
  \file boolexpr.hpp
  \brief Boolean expressions, truth tables and monotone DNFs
*/

#pragma once

#include "boolexpr/expression.hpp"
#include "boolexpr/monotone_dnf.hpp"
#include "boolexpr/parse.hpp"
#include "boolexpr/truth_table.hpp"
#include "boolexpr/universe.hpp"
