#pragma once

#include "qlat/types.hpp"

namespace qlat {

// Complementary error function for complex argument, about 1e-13 relative.
cdouble erfc(cdouble z);

// Imaginary error function, real argument.
double erfi(double x);

}  // namespace qlat
