#pragma once

#include "carrier.hpp"
#include "cohomology.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "foliation.hpp"
#include "graph.hpp"
#include "group_graph.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "theorems.hpp"
