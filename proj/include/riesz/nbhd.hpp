#pragma once

#include "riesz/unit.hpp"

namespace riesz {

/// Solid zero-neighborhood {x : || |x| ^ unit || < eps}.
struct SolidNbhd {
  SpacePtr space;
  UnitSpec unit;
  Rational eps;

  SolidNbhd(SpacePtr s, UnitSpec u, Rational e) : space(std::move(s)), unit(std::move(u)), eps(std::move(e)) {
    if (!space) throw Error(ErrorKind::invalid_argument, "neighborhood needs a space");
    if (eps <= 0) throw Error(ErrorKind::invalid_argument, "neighborhood threshold must be positive");
    validate_unit(*space, unit);
  }

  NormValue value(const Element& x) const {
    require_same_space(*space, x.space());
    return rho(x, unit);
  }

  bool contains(const Element& x) const { return value(x).below(eps); }
};

}  // namespace riesz
