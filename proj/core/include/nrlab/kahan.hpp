#pragma once
#include <complex>
#include <cstddef>
#include <span>

#include "nrlab/vec3.hpp"

namespace nrlab {

// Neumaier compensated accumulator. All quadrature reductions in this library
// run through one of these, in node-index order, so results do not depend on
// the number of worker threads.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedSumC {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

class CompensatedSum3 {
 public:
  void add(const Vec3 &v) {
    x_.add(v.x);
    y_.add(v.y);
    z_.add(v.z);
  }
  Vec3 value() const { return {x_.value(), y_.value(), z_.value()}; }

 private:
  CompensatedSum x_, y_, z_;
};

inline double compensated_total(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

}  // namespace nrlab
