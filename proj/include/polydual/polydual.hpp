#pragma once

// Umbrella header.

#include <polydual/cert_io.hpp>
#include <polydual/constructions.hpp>
#include <polydual/equivalence.hpp>
#include <polydual/face_lattice.hpp>
#include <polydual/linalg.hpp>
#include <polydual/poly_io.hpp>
#include <polydual/polytope.hpp>
#include <polydual/rational.hpp>
#include <polydual/search.hpp>
#include <polydual/theorem.hpp>
