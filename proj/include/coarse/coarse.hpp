#pragma once

#include "coarse/certificate.hpp"
#include "coarse/cover_analysis.hpp"
#include "coarse/dimension.hpp"
#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/generators.hpp"
#include "coarse/lower_bounds.hpp"
#include "coarse/maps.hpp"
#include "coarse/metric.hpp"
#include "coarse/pou.hpp"
#include "coarse/profile.hpp"
#include "coarse/refinement.hpp"
#include "coarse/star_cover.hpp"
#include "coarse/subset.hpp"
