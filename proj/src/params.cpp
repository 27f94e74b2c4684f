#include "sqpack/params.hpp"

#include <sstream>
#include <stdexcept>

namespace sqpack {

namespace {

[[noreturn]] void reject(const char* cond, double got) {
  std::ostringstream os;
  os << "Params: require " << cond << " (got " << got << ")";
  throw std::invalid_argument(os.str());
}

}  // namespace

void Params::validate() const {
  if (!(t > 0.5)) reject("t > 1/2", t);
  if (!(t < 1.0)) reject("t < 1", t);
  // t + delta*t < 1 follows from t < 1 but is the hypothesis the induction
  // actually uses, so it is asserted in its own right.
  if (!(t + delta() * t < 1.0)) reject("t + delta*t < 1", t + delta() * t);
  if (M < 2) reject("M >= 2", static_cast<double>(M));
  if (n0 < 2) reject("n0 >= 2", static_cast<double>(n0));
  if (n_max && *n_max < n0) reject("n_max >= n0", static_cast<double>(*n_max));
}

Params Params::make(double t, std::int64_t M, std::int64_t n0,
                    std::optional<std::int64_t> n_max) {
  Params p;
  p.t = t;
  p.M = M;
  p.n0 = n0;
  p.n_max = n_max;
  p.validate();
  return p;
}

}  // namespace sqpack
