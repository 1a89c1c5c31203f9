#pragma once

#include "pwt/algorithms.hpp"
#include "pwt/archive.hpp"
#include "pwt/brute_force.hpp"
#include "pwt/evaluate.hpp"
#include "pwt/experiment.hpp"
#include "pwt/generate.hpp"
#include "pwt/instance.hpp"
#include "pwt/instance_io.hpp"
#include "pwt/rng.hpp"
#include "pwt/solution.hpp"
#include "pwt/theory.hpp"
#include "pwt/verify.hpp"
