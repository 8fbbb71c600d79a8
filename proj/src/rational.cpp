#include "carnot/rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace carnot {

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("Rat: cannot parse '" + s + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return Rat(q);
}

Rat pow_int(const Rat& a, long n) {
  if (n < 0) throw std::invalid_argument("pow_int: negative exponent");
  Rat r(1);
  Rat base = a;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

std::string Rat::str() const {
  std::ostringstream os;
  os << v_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rat& a) {
  return os << a.v_;
}

}  // namespace carnot
