#pragma once

#include "pdom/cantor.hpp"
#include "pdom/chain.hpp"
#include "pdom/dyadic.hpp"
#include "pdom/error.hpp"
#include "pdom/flow.hpp"
#include "pdom/pipeline.hpp"
#include "pdom/poset.hpp"
#include "pdom/skorohod.hpp"
#include "pdom/text_format.hpp"
#include "pdom/valuation.hpp"
