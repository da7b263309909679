#pragma once

#include "fincov/actions.hpp"
#include "fincov/builders.hpp"
#include "fincov/chains.hpp"
#include "fincov/cover.hpp"
#include "fincov/cover_map.hpp"
#include "fincov/errors.hpp"
#include "fincov/generators.hpp"
#include "fincov/group.hpp"
#include "fincov/io.hpp"
#include "fincov/metric.hpp"
#include "fincov/nerve.hpp"
#include "fincov/overlay.hpp"
#include "fincov/point_set.hpp"
#include "fincov/random_instances.hpp"
#include "fincov/rational.hpp"
#include "fincov/slices.hpp"
#include "fincov/space.hpp"
#include "fincov/suites.hpp"
#include "fincov/topological_groups.hpp"
