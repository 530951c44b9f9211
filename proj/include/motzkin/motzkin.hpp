#pragma once

#include "asymptotics.hpp"
#include "errors.hpp"
#include "genfun.hpp"
#include "rational.hpp"
#include "sampler.hpp"
#include "series.hpp"
#include "trees.hpp"
