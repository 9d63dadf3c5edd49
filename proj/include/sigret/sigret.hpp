#pragma once

#include "sigret/curvelet.hpp"
#include "sigret/dwt.hpp"
#include "sigret/errors.hpp"
#include "sigret/eval.hpp"
#include "sigret/features.hpp"
#include "sigret/fft.hpp"
#include "sigret/image.hpp"
#include "sigret/retrieval.hpp"
#include "sigret/rng.hpp"
#include "sigret/store.hpp"
#include "sigret/synth.hpp"
