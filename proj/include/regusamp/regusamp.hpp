#pragma once

#include "regusamp/bounds.hpp"
#include "regusamp/errors.hpp"
#include "regusamp/harness.hpp"
#include "regusamp/kernel.hpp"
#include "regusamp/quadrature.hpp"
#include "regusamp/reconstruct.hpp"
#include "regusamp/specfun.hpp"
#include "regusamp/windows.hpp"
