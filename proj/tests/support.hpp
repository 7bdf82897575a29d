#pragma once

#include "doctest.h"

// doctest::Approx adds an absolute floor of epsilon; this drops it so small
// quantities are compared relatively.
inline doctest::Approx rel(double value, double epsilon) { return doctest::Approx(value).epsilon(epsilon).scale(0.0); }
