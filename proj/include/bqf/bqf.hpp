#pragma once

#include "bqf/arith.hpp"
#include "bqf/characters.hpp"
#include "bqf/common.hpp"
#include "bqf/cyclotomic.hpp"
#include "bqf/forms.hpp"
#include "bqf/ideals.hpp"
#include "bqf/lfunc.hpp"
#include "bqf/moments.hpp"
#include "bqf/rational.hpp"
