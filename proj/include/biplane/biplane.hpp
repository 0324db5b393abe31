#pragma once

#include "biplane/augment.hpp"
#include "biplane/cells.hpp"
#include "biplane/connectivity.hpp"
#include "biplane/convex_construct.hpp"
#include "biplane/counterexample.hpp"
#include "biplane/error.hpp"
#include "biplane/generators.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"
#include "biplane/incremental.hpp"
#include "biplane/io.hpp"
#include "biplane/lca.hpp"
#include "biplane/svg.hpp"
#include "biplane/tree_augment.hpp"
#include "biplane/triangulation.hpp"
