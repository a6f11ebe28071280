// optham.hpp: umbrella include for the whole library.
#pragma once

#include "optham/bounds.hpp"
#include "optham/errors.hpp"
#include "optham/gibbs.hpp"
#include "optham/hamiltonian.hpp"
#include "optham/io.hpp"
#include "optham/numeric.hpp"
#include "optham/optimal.hpp"
#include "optham/oracle.hpp"
#include "optham/spectrum.hpp"
