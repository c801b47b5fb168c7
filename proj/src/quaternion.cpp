#include "qvn/quaternion.hpp"

#include <algorithm>
#include <ostream>

namespace qvn {

Quaternion inv(const Quaternion& q) {
  const double n2 = norm2(q);
  if (n2 == 0.0) fail(ErrorKind::Domain, "inverse of the zero quaternion");
  return conj(q) / n2;
}

bool approx_equal(const Quaternion& q, const Quaternion& p, double abs_tol, double rel_tol) {
  return abs(q - p) <= abs_tol + rel_tol * std::max(abs(q), abs(p));
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.a << (q.b < 0 ? "" : "+") << q.b << "i" << (q.c < 0 ? "" : "+") << q.c
            << "j" << (q.d < 0 ? "" : "+") << q.d << "k)";
}

}  // namespace qvn
