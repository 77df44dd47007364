#pragma once

#include "cpa2relu/conic_sides.hpp"
#include "cpa2relu/decompose.hpp"
#include "cpa2relu/evaluate.hpp"
#include "cpa2relu/generator.hpp"
#include "cpa2relu/instance_io.hpp"
#include "cpa2relu/network.hpp"
#include "cpa2relu/pipeline.hpp"
#include "cpa2relu/reduce.hpp"
#include "cpa2relu/render.hpp"
#include "cpa2relu/sparsify.hpp"
#include "cpa2relu/validate.hpp"
#include "cpa2relu/verify.hpp"
