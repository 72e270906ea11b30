// Umbrella header.
#ifndef WSDIRAC_WSDIRAC_HPP
#define WSDIRAC_WSDIRAC_HPP

#include "wsdirac/boundstates.hpp"
#include "wsdirac/errors.hpp"
#include "wsdirac/io.hpp"
#include "wsdirac/model.hpp"
#include "wsdirac/oracle.hpp"
#include "wsdirac/scattering.hpp"
#include "wsdirac/specfun.hpp"
#include "wsdirac/wavefunction.hpp"

#endif
