#pragma once

#include "mimo/channel.hpp"
#include "mimo/config.hpp"
#include "mimo/csi.hpp"
#include "mimo/errors.hpp"
#include "mimo/experiments.hpp"
#include "mimo/linalg.hpp"
#include "mimo/metrics.hpp"
#include "mimo/mobility.hpp"
#include "mimo/precoding.hpp"
#include "mimo/results.hpp"
#include "mimo/rng.hpp"
