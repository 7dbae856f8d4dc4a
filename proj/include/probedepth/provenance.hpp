/*!
  \file provenance.hpp
  \brief Annotated databases, SPJU queries and Boolean provenance
*/

#pragma once

#include "provenance/database.hpp"
#include "provenance/eval.hpp"
#include "provenance/query.hpp"
