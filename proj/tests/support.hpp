#pragma once

#include <qwalk/qwalk.hpp>
#include <random>

namespace qwalk::testing {

// Unitary with |c21| = r and prescribed phases; every unitary with
// nonzero diagonal has this form.
inline Mat2 coin_from(double r, double sigma1, double sigma2, double chi) {
  const double c = std::sqrt(1.0 - r * r);
  const cplx c21 = std::polar(r, chi);
  Mat2 m;
  m << std::polar(c, sigma1), -std::conj(c21) * std::polar(1.0, sigma1 + sigma2), c21, std::polar(c, sigma2);
  return m;
}

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(gen_); }
  double angle() { return uniform(-pi, pi); }

  Mat2 coin(double r_max = 0.999) { return coin_from(uniform(0.02, r_max), angle(), angle(), angle()); }

  WalkSpec spec(Lattice lattice, double r_max = 0.999) { return make_spec(lattice, coin(r_max), coin(r_max)); }

  Qubit qubit() {
    std::normal_distribution<> n;
    return Qubit{{n(gen_), n(gen_)}, {n(gen_), n(gen_)}}.normalized();
  }

  cplx in_disk(double r_max = 0.999) { return std::polar(r_max * std::sqrt(uniform(0, 1)), angle()); }

 private:
  std::mt19937 gen_;
};

inline double cesaro(const std::vector<double>& p, long from, long to, long stride = 1) {
  double s = 0.0;
  long n = 0;
  for (long k = from; k <= to; k += stride, ++n) s += p[k];
  return s / n;
}

}  // namespace qwalk::testing
