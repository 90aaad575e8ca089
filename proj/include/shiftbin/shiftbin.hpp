#pragma once

#include "shiftbin/binomial.hpp"
#include "shiftbin/compositions.hpp"
#include "shiftbin/half_int.hpp"
#include "shiftbin/oracle.hpp"
#include "shiftbin/parallel.hpp"
#include "shiftbin/rational.hpp"
#include "shiftbin/scaled_value.hpp"
#include "shiftbin/sequences.hpp"
#include "shiftbin/sum_spec.hpp"
#include "shiftbin/sums.hpp"
