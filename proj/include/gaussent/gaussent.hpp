#ifndef GAUSSENT_GAUSSENT_HPP
#define GAUSSENT_GAUSSENT_HPP

#include "gaussent/core.hpp"
#include "gaussent/correlation_matrix.hpp"
#include "gaussent/epr.hpp"
#include "gaussent/io.hpp"
#include "gaussent/photon_number.hpp"
#include "gaussent/protocols.hpp"
#include "gaussent/separability.hpp"
#include "gaussent/spectra.hpp"
#include "gaussent/state.hpp"

#endif  // GAUSSENT_GAUSSENT_HPP
