// raman.hpp — umbrella header

#pragma once

#include "raman/core.hpp"
#include "raman/quadrature.hpp"
#include "raman/kernel.hpp"
#include "raman/measures.hpp"
#include "raman/photon_spectra.hpp"
#include "raman/laser_spectra.hpp"
#include "raman/beats.hpp"
#include "raman/temporal.hpp"
#include "raman/oracle.hpp"
#include "raman/parallel.hpp"
