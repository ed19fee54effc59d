#pragma once

#include "abflux/coupling.hpp"
#include "abflux/dynamics.hpp"
#include "abflux/errors.hpp"
#include "abflux/hilbert.hpp"
#include "abflux/postselect.hpp"
#include "abflux/quadrature.hpp"
#include "abflux/ring.hpp"
#include "abflux/rng.hpp"
#include "abflux/weak_values.hpp"
