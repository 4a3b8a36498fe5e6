#pragma once

#include "satlab/cliques.hpp"
#include "satlab/coloring.hpp"
#include "satlab/edgecover.hpp"
#include "satlab/experiment.hpp"
#include "satlab/goodness.hpp"
#include "satlab/graph.hpp"
#include "satlab/graph_io.hpp"
#include "satlab/krivelevich.hpp"
#include "satlab/layered.hpp"
#include "satlab/oracle.hpp"
#include "satlab/rng.hpp"
#include "satlab/saturation.hpp"
#include "satlab/vertex_set.hpp"
#include "satlab/weak_saturation.hpp"
