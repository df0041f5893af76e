#pragma once

#include "lipfree/certify.hpp"
#include "lipfree/differentiability.hpp"
#include "lipfree/errors.hpp"
#include "lipfree/generators.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/norming.hpp"
#include "lipfree/oracles.hpp"
#include "lipfree/potentials.hpp"
#include "lipfree/rational.hpp"
#include "lipfree/transport.hpp"
