/*!
  \file strategy.hpp
  \brief Decision diagrams, exact depth search, greedy strategies and sessions
*/

#pragma once

#include "strategy/diagram.hpp"
#include "strategy/greedy.hpp"
#include "strategy/search.hpp"
#include "strategy/session.hpp"
