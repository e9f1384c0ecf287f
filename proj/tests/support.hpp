#pragma once

#include "eqdr/eqmodels.hpp"
#include "eqdr/sdga.hpp"
#include "eqdr/weil.hpp"

#include <memory>
#include <random>
#include <vector>

namespace eqdr::testing {

inline std::shared_ptr<const WeilModel> weil_model(const SDgaModel& m) {
  auto weil = std::make_shared<const WeilAlgebra>(WeilAlgebra::build(m.s()));
  return std::make_shared<const WeilModel>(weil, std::make_shared<const SDgaModel>(m));
}

inline SDgaModel builtin_sdga(const std::string& name) {
  AnyModel any = builtin(name);
  if (auto* b = std::get_if<BundleModel>(&any)) return b->total();
  return std::get<SDgaModel>(any);
}

inline std::vector<std::size_t> cartan_dims(const SDgaModel& m, int max_degree) {
  EquivariantComplex c(weil_model(m), max_degree + 1);
  std::vector<std::size_t> out;
  for (int k = 0; k <= max_degree; ++k) out.push_back(equivariant_cohomology(c, k).dimension);
  return out;
}

inline std::vector<std::size_t> weil_dims(const SDgaModel& m, int max_degree) {
  EquivariantComplex c(weil_model(m), max_degree + 1);
  std::vector<std::size_t> out;
  for (int k = 0; k <= max_degree; ++k) out.push_back(weil_basic_cohomology(c, k).dimension);
  return out;
}

/// Small rationals p/q with |p| <= 3, q in 1..3.
inline Rat small_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace eqdr::testing
