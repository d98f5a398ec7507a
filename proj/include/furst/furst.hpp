#pragma once

#include "furst/aggregate.hpp"
#include "furst/arith.hpp"
#include "furst/dirichlet.hpp"
#include "furst/errors.hpp"
#include "furst/io.hpp"
#include "furst/means.hpp"
#include "furst/qnorm.hpp"
#include "furst/sequences.hpp"
#include "furst/sieve.hpp"
#include "furst/structured.hpp"
#include "furst/verify.hpp"
