#pragma once

#include "bkalg/bundle.hpp"
#include "bkalg/error.hpp"
#include "bkalg/fiber.hpp"
#include "bkalg/gelfand_mazur.hpp"
#include "bkalg/inversion.hpp"
#include "bkalg/linalg.hpp"
#include "bkalg/measure_space.hpp"
#include "bkalg/random.hpp"
#include "bkalg/representation.hpp"
#include "bkalg/spectrum.hpp"
#include "bkalg/version.hpp"
