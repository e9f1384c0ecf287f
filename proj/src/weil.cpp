#include "eqdr/weil.hpp"

#include "eqdr/errors.hpp"

namespace eqdr {

WeilAlgebra::WeilAlgebra(LieAlgebraData lie, GeneratorSetPtr universe, GradedOperator d,
                         std::vector<GradedOperator> iota, std::vector<GradedOperator> lie_derivative)
    : lie_(std::move(lie)),
      universe_(std::move(universe)),
      d_(std::move(d)),
      iota_(std::move(iota)),
      lie_derivative_(std::move(lie_derivative)) {}

WeilAlgebra WeilAlgebra::build_unchecked(const LieAlgebraData& lie) {
  const std::size_t l = lie.dimension();
  std::vector<GeneratorSpec> gens;
  for (std::size_t i = 0; i < l; ++i) gens.push_back({"u" + std::to_string(i + 1), 2});
  for (std::size_t i = 0; i < l; ++i) gens.push_back({"theta" + std::to_string(i + 1), 1});
  auto universe = std::make_shared<const GeneratorSet>(std::move(gens));

  auto u = [&](std::size_t i) { return GcaElement::generator(universe, i); };
  auto theta = [&](std::size_t i) { return GcaElement::generator(universe, l + i); };

  std::vector<std::optional<GcaElement>> d_images(2 * l);
  for (std::size_t i = 0; i < l; ++i) {
    GcaElement du(universe);
    GcaElement dtheta = u(i);
    for (std::size_t j = 0; j < l; ++j) {
      for (std::size_t k = 0; k < l; ++k) {
        const Rat& c = lie.c(j, k, i);
        if (c == 0) continue;
        du += c * (u(j) * theta(k));
        dtheta -= Rat(c / 2) * (theta(j) * theta(k));
      }
    }
    d_images[i] = std::move(du);
    d_images[l + i] = std::move(dtheta);
  }
  GradedOperator d(universe, 1, Parity::odd, std::move(d_images));

  std::vector<GradedOperator> iota;
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<std::optional<GcaElement>> images(2 * l, GcaElement(universe));
    images[l + i] = GcaElement::constant(universe, 1);
    iota.emplace_back(universe, -1, Parity::odd, std::move(images));
  }

  std::vector<GradedOperator> lie_derivative;
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<std::optional<GcaElement>> images;
    for (std::size_t g = 0; g < 2 * l; ++g) {
      const GcaElement x = GcaElement::generator(universe, g);
      images.emplace_back(d.apply(iota[i].apply(x)) + iota[i].apply(d.apply(x)));
    }
    lie_derivative.emplace_back(universe, 0, Parity::even, std::move(images));
  }

  return WeilAlgebra(lie, std::move(universe), std::move(d), std::move(iota), std::move(lie_derivative));
}

WeilAlgebra WeilAlgebra::build(const LieAlgebraData& lie) {
  WeilAlgebra w = build_unchecked(lie);
  const CheckReport report = verify_weil(w);
  if (const CheckResult* failure = report.first_failure()) {
    throw ValidationError("Weil algebra check '" + failure->name + "' failed: " + failure->witness);
  }
  return w;
}

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

CheckReport verify_weil(const WeilAlgebra& w) {
  CheckReport report;
  const std::size_t l = w.rank();
  const auto& lie = w.lie();
  const auto& universe = w.universe();

  std::vector<GcaElement> generators;
  for (std::size_t g = 0; g < universe->size(); ++g) generators.push_back(GcaElement::generator(universe, g));
  std::vector<GcaElement> test_basis;
  for (int degree = 1; degree <= 3; ++degree) {
    for (auto& m : monomials_of_degree(*universe, degree)) test_basis.push_back(GcaElement::monomial(universe, m));
  }

  auto check_zero = [&](const std::string& name, const std::vector<GcaElement>& values,
                        const std::vector<GcaElement>& inputs, const std::string& what) {
    for (std::size_t t = 0; t < values.size(); ++t) {
      if (!values[t].is_zero()) {
        report.fail(name, what + " on " + inputs[t].to_string() + " gives " + values[t].to_string());
        return;
      }
    }
    report.pass(name);
  };

  // d^2 = 0 (fails exactly when the constants are not a Lie algebra).
  {
    std::vector<GcaElement> values;
    for (const auto& x : generators) values.push_back(w.d().apply(w.d().apply(x)));
    check_zero("d^2 = 0", values, generators, "d^2");
  }

  // Generator values of iota.
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      const GcaElement on_theta = w.iota(i).apply(w.theta(j));
      const GcaElement expected = GcaElement::constant(universe, i == j ? 1 : 0);
      if (!(on_theta == expected)) {
        report.fail("iota_i theta_j = delta_ij", "iota_" + idx(i) + " theta" + idx(j) + " = " + on_theta.to_string());
      }
      if (!w.iota(i).apply(w.u(j)).is_zero()) report.fail("iota_i u_j = 0", "iota_" + idx(i) + " u" + idx(j));
    }
  }
  report.pass("iota_i theta_j = delta_ij");
  report.pass("iota_i u_j = 0");

  // {iota_i, iota_j} = 0, including iota_i^2 = 0.
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i; j < l; ++j) {
      const auto values = graded_commutator(as_map(w.iota(i)), as_map(w.iota(j)), test_basis);
      check_zero("{iota_i, iota_j} = 0", values, test_basis, "{iota_" + idx(i) + ", iota_" + idx(j) + "}");
    }
  }
  if (l == 0) report.pass("{iota_i, iota_j} = 0");

  // Magic formula on products, not just generators: the derivation extension
  // of the generator values must agree with d iota + iota d everywhere.
  for (std::size_t i = 0; i < l; ++i) {
    const auto magic = graded_commutator(as_map(w.d()), as_map(w.iota(i)), test_basis);
    std::vector<GcaElement> diffs;
    for (std::size_t t = 0; t < test_basis.size(); ++t) diffs.push_back(w.lie_derivative(i).apply(test_basis[t]) - magic[t]);
    check_zero("L_i = d iota_i + iota_i d", diffs, test_basis, "L_" + idx(i) + " - (d iota + iota d)");
  }
  if (l == 0) report.pass("L_i = d iota_i + iota_i d");

  // Coadjoint pattern on both families of generators.
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      GcaElement expected_theta(universe), expected_u(universe);
      for (std::size_t k = 0; k < l; ++k) {
        expected_theta -= lie.c(i, k, j) * w.theta(k);
        expected_u -= lie.c(i, k, j) * w.u(k);
      }
      const GcaElement on_theta = w.lie_derivative(i).apply(w.theta(j));
      const GcaElement on_u = w.lie_derivative(i).apply(w.u(j));
      if (!(on_theta == expected_theta)) {
        report.fail("L_i theta_j = -sum c_ik^j theta_k",
                    "L_" + idx(i) + " theta" + idx(j) + " = " + on_theta.to_string() + ", expected " + expected_theta.to_string());
      }
      if (!(on_u == expected_u)) {
        report.fail("L_i u_j = -sum c_ik^j u_k",
                    "L_" + idx(i) + " u" + idx(j) + " = " + on_u.to_string() + ", expected " + expected_u.to_string());
      }
    }
  }
  report.pass("L_i theta_j = -sum c_ik^j theta_k");
  report.pass("L_i u_j = -sum c_ik^j u_k");

  // Bracket relations.
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      const auto ll = graded_commutator(as_map(w.lie_derivative(i)), as_map(w.lie_derivative(j)), test_basis);
      const auto li = graded_commutator(as_map(w.lie_derivative(i)), as_map(w.iota(j)), test_basis);
      std::vector<GcaElement> ll_diff, li_diff;
      for (std::size_t t = 0; t < test_basis.size(); ++t) {
        GcaElement expected_ll(universe), expected_li(universe);
        for (std::size_t k = 0; k < l; ++k) {
          if (lie.c(i, j, k) == 0) continue;
          expected_ll += lie.c(i, j, k) * w.lie_derivative(k).apply(test_basis[t]);
          expected_li += lie.c(i, j, k) * w.iota(k).apply(test_basis[t]);
        }
        ll_diff.push_back(ll[t] - expected_ll);
        li_diff.push_back(li[t] - expected_li);
      }
      check_zero("[L_i, L_j] = sum c_ij^k L_k", ll_diff, test_basis, "[L_" + idx(i) + ", L_" + idx(j) + "] - sum c L");
      check_zero("[L_i, iota_j] = sum c_ij^k iota_k", li_diff, test_basis,
                 "[L_" + idx(i) + ", iota_" + idx(j) + "] - sum c iota");
    }
    const auto ld = graded_commutator(as_map(w.lie_derivative(i)), as_map(w.d()), test_basis);
    check_zero("[L_i, d] = 0", ld, test_basis, "[L_" + idx(i) + ", d]");
  }
  if (l == 0) {
    report.pass("[L_i, L_j] = sum c_ij^k L_k");
    report.pass("[L_i, iota_j] = sum c_ij^k iota_k");
    report.pass("[L_i, d] = 0");
  }
  return report;
}

}  // namespace eqdr
