// Umbrella header.
#ifndef EAGLE_EAGLE_HPP
#define EAGLE_EAGLE_HPP

#include "config.hpp"
#include "core.hpp"
#include "firefly.hpp"
#include "harness.hpp"
#include "levy.hpp"
#include "nelder_mead.hpp"
#include "objectives.hpp"
#include "pso.hpp"
#include "random.hpp"
#include "report.hpp"
#include "strategy.hpp"

#endif // EAGLE_EAGLE_HPP
