#ifndef MEANLAB_BIGFLOAT_HPP
#define MEANLAB_BIGFLOAT_HPP

#include <boost/multiprecision/mpfr.hpp>

namespace meanlab {

// Variable-precision real used by the adjudication oracle. Precision is the
// thread-local MPFR default; ScopedPrecision sets it for the duration of an
// evaluation.
using BigFloat = boost::multiprecision::mpfr_float;

class ScopedPrecision {
  public:
    explicit ScopedPrecision(unsigned digits10)
        : previous_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits10);
    }
    ~ScopedPrecision() { BigFloat::default_precision(previous_); }

    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned previous_;
};

}  // namespace meanlab

#endif  // MEANLAB_BIGFLOAT_HPP
