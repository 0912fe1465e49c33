#pragma once

#include <random>
#include <string>
#include <vector>

#include "qcb/cartan.hpp"
#include "qcb/laurent.hpp"

namespace qcb::testing {

inline QuiverInput a1(int d) { return {QuiverDatum({"1"}, {}), HighestWeight({d})}; }

inline QuiverInput a2(int d1, int d2) { return {QuiverDatum({"1", "2"}, {{0, 1}}), HighestWeight({d1, d2})}; }

inline QuiverInput kronecker(int d1, int d2) {
  return {QuiverDatum({"1", "2"}, {{0, 1}, {0, 1}}), HighestWeight({d1, d2})};
}

inline QuiverInput a3(int d1, int d2, int d3) {
  return {QuiverDatum({"1", "2", "3"}, {{0, 1}, {1, 2}}), HighestWeight({d1, d2, d3})};
}

inline LaurentPoly random_poly(std::mt19937_64& rng, int span, long bound) {
  std::uniform_int_distribution<int> lo(-span / 2, span / 2);
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  const int start = lo(rng);
  std::uniform_int_distribution<int> off(0, span);
  std::vector<LaurentPoly::Term> t;
  for (int k = count(rng); k > 0; --k) t.emplace_back(start + off(rng), mpz_class(coeff(rng)));
  return LaurentPoly::from_terms(std::move(t));
}

}  // namespace qcb::testing
