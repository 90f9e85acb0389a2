#pragma once

#include "restopo/betti.hpp"
#include "restopo/bottleneck.hpp"
#include "restopo/components.hpp"
#include "restopo/cubical.hpp"
#include "restopo/diagram_io.hpp"
#include "restopo/errors.hpp"
#include "restopo/filtration.hpp"
#include "restopo/grid.hpp"
#include "restopo/grid_io.hpp"
#include "restopo/homology.hpp"
#include "restopo/kriging.hpp"
#include "restopo/manifest.hpp"
#include "restopo/parallel.hpp"
#include "restopo/persistence.hpp"
#include "restopo/rng.hpp"
#include "restopo/sgs.hpp"
#include "restopo/variogram.hpp"
#include "restopo/version.hpp"
