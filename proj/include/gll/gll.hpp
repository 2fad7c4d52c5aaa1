#ifndef GLL_GLL_HPP
#define GLL_GLL_HPP

#include "gll/asymptotics.hpp"
#include "gll/error.hpp"
#include "gll/likelihood.hpp"
#include "gll/models.hpp"
#include "gll/normal.hpp"
#include "gll/optimize.hpp"
#include "gll/reduced.hpp"
#include "gll/region.hpp"

namespace gll {
inline constexpr const char* version = "0.1.0";
}

#endif  // GLL_GLL_HPP
