#pragma once

#include "errors.hpp"
#include "finite_field.hpp"
#include "cyclotomic.hpp"
#include "characters.hpp"
#include "exp_sums.hpp"
#include "qmodz.hpp"
#include "kubert.hpp"
#include "hyp_params.hpp"
#include "oracles.hpp"
