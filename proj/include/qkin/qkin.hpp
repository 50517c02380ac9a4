//! @file qkin.hpp
//! @brief Umbrella header for the finite-dimensional quantum kinematics
//!        library.

#ifndef QKIN_QKIN_HPP
#define QKIN_QKIN_HPP

#include "qkin/angular.hpp"
#include "qkin/cli.hpp"
#include "qkin/hilbert.hpp"
#include "qkin/kinematics.hpp"
#include "qkin/limits.hpp"
#include "qkin/schwinger.hpp"

#endif  // QKIN_QKIN_HPP
