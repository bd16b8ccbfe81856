#pragma once

#include "coolsim/bench.hpp"
#include "coolsim/bounds.hpp"
#include "coolsim/coherent.hpp"
#include "coolsim/complexity.hpp"
#include "coolsim/core.hpp"
#include "coolsim/incoherent.hpp"
#include "coolsim/oscillator.hpp"
#include "coolsim/spectra.hpp"
