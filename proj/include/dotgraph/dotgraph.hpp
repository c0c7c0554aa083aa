#pragma once

#include "dotgraph/bounds.hpp"
#include "dotgraph/census.hpp"
#include "dotgraph/core.hpp"
#include "dotgraph/patterns.hpp"
#include "dotgraph/rational.hpp"
#include "dotgraph/reftree.hpp"
#include "dotgraph/surgery.hpp"
