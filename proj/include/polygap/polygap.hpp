// Convenience umbrella for the whole library.
#ifndef POLYGAP_POLYGAP_HPP
#define POLYGAP_POLYGAP_HPP

#include "polygap/bessel.hpp"
#include "polygap/constants.hpp"
#include "polygap/error.hpp"
#include "polygap/families.hpp"
#include "polygap/fem.hpp"
#include "polygap/gap.hpp"
#include "polygap/geometry.hpp"
#include "polygap/io.hpp"
#include "polygap/mesh.hpp"
#include "polygap/parallel.hpp"
#include "polygap/sandwich.hpp"
#include "polygap/sector.hpp"
#include "polygap/spectrum.hpp"

#endif
