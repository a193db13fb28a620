#pragma once

#include "semiabel/periods.hpp"

namespace semiabel {

// Chord-and-tangent law on y^2 = 4x^3 - g2 x - g3 over any field type T
// with exact or tolerant zero tests supplied by the caller.
template <class T>
struct CurvePoint {
  bool infinity = true;
  T x{}, y{};
};

template <class T, class IsZero>
CurvePoint<T> curve_add(const CurvePoint<T>& P, const CurvePoint<T>& Q, const T& g2,
                        IsZero is_zero) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  T lam;
  if (is_zero(P.x - Q.x)) {
    if (is_zero(P.y + Q.y)) return {};
    lam = (T(12) * P.x * P.x - g2) / (T(2) * P.y);
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  CurvePoint<T> R;
  R.infinity = false;
  R.x = lam * lam / T(4) - P.x - Q.x;
  R.y = -(P.y + lam * (R.x - P.x));
  return R;
}

/// Numeric group law on complex points; zero tests relative to rel_tol.
EllipticPoint add_points(const EllipticPoint& P, const EllipticPoint& Q,
                         const CurveInvariants& c, double rel_tol = 1e-9);
EllipticPoint negate_point(const EllipticPoint& P);

}  // namespace semiabel
