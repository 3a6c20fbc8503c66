#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moddiag/algebra.hpp"
#include "moddiag/module.hpp"
#include "moddiag/oracle.hpp"

using namespace moddiag;

/* corpus group generators */
static AlgebraPtr c2(std::uint32_t p) { return build_algebra(group_algebra_spec(p, {{1, 0}})); }
static AlgebraPtr c3(std::uint32_t p) { return build_algebra(group_algebra_spec(p, {{1, 2, 0}})); }
static AlgebraPtr c4(std::uint32_t p) { return build_algebra(group_algebra_spec(p, {{1, 2, 3, 0}})); }
static AlgebraPtr v4(std::uint32_t p) {
  return build_algebra(group_algebra_spec(p, {{1, 0, 3, 2}, {2, 3, 0, 1}}));
}
static AlgebraPtr d4(std::uint32_t p) {
  // dihedral of order 8 on the square 0123: rotation and a reflection
  return build_algebra(group_algebra_spec(p, {{1, 2, 3, 0}, {1, 0, 3, 2}}));
}
static AlgebraPtr s3(std::uint32_t p) {
  return build_algebra(group_algebra_spec(p, {{1, 0, 2}, {0, 2, 1}}));
}

TEST_CASE("group closure: C2 over F_2") {
  auto a = c2(2);
  CHECK(a->dim == 2);
  CHECK(a->is_group);
  CHECK(a->one == Vec{1, 0});
  CHECK(a->group_table[1][1] == 0);
}

TEST_CASE("group closure: V4 has 4 elements, D4 has 8, S3 has 6") {
  CHECK(v4(2)->dim == 4);
  CHECK(d4(2)->dim == 8);
  CHECK(s3(3)->dim == 6);
  CHECK(s3(3)->commutative == false);
  CHECK(v4(2)->commutative == true);
}

TEST_CASE("group closure overflow error") {
  auto spec = group_algebra_spec(2, {{1, 2, 3, 0}});
  spec.max_group_order = 3;
  CHECK_THROWS_WITH_AS(build_algebra(spec), doctest::Contains("cap"), Error);
}

TEST_CASE("structure algebra: k[x]/(x^n) builds; broken constants rejected") {
  auto a = build_algebra(truncated_polynomial_spec(2, 3));
  CHECK(a->dim == 3);
  CHECK(a->commutative);

  auto bad = truncated_polynomial_spec(2, 3);
  bad.mult[1][1][0] = 1;  // x*x = 1 + x^2 breaks associativity with x*x^2 = 0
  CHECK_THROWS_AS(build_algebra(bad), Error);

  auto noid = truncated_polynomial_spec(2, 3);
  noid.one = {0, 1, 0};
  CHECK_THROWS_AS(build_algebra(noid), Error);
}

TEST_CASE("radical: F_2[C_2] is the augmentation ideal") {
  auto a = c2(2);
  CHECK(a->radical().dim() == 1);
  CHECK(space_contains(a->radical(), {1, 1}));
}

TEST_CASE("radical: Maschke over F_3[C_2]") {
  CHECK(c2(3)->radical().dim() == 0);
  CHECK(c2(3)->radical_chain.size() == 2);
}

TEST_CASE("radical chain: F_2[V4] dims 4,3,1,0") {
  auto a = v4(2);
  std::vector<std::size_t> dims;
  for (const auto& t : a->radical_chain) dims.push_back(t.dim());
  CHECK(dims == std::vector<std::size_t>{4, 3, 1, 0});
}

TEST_CASE("radical chain: F_p[C_p] dims p, p-1, ..., 0") {
  for (std::uint32_t p : {2u, 3u}) {
    std::vector<std::size_t> cycle(p);
    for (std::uint32_t i = 0; i < p; ++i) cycle[i] = (i + 1) % p;
    auto a = build_algebra(group_algebra_spec(p, {cycle}));
    REQUIRE(a->radical_chain.size() == p + 1);
    for (std::uint32_t i = 0; i <= p; ++i) CHECK(a->radical_chain[i].dim() == p - i);
  }
}

TEST_CASE("radical of k[x]/(x^3) over F_2 is (x)") {
  auto a = build_algebra(truncated_polynomial_spec(2, 3));
  CHECK(a->radical().dim() == 2);
  CHECK(space_contains(a->radical(), {0, 1, 0}));
  CHECK(space_contains(a->radical(), {0, 0, 1}));
}

TEST_CASE("radical against brute-force maximal nilpotent ideal, dim <= 6") {
  std::vector<AlgebraPtr> algs{c2(2), c2(3), c3(3), c4(2), v4(2),
                               build_algebra(truncated_polynomial_spec(2, 3)),
                               build_algebra(truncated_polynomial_spec(3, 2)), s3(3)};
  for (const auto& a : algs) {
    Subspace brute = brute_force_radical(a);
    CHECK(jacobson_radical(*a) == brute);
  }
}

TEST_CASE("A/J is semisimple: quotient algebra has zero radical") {
  for (const auto& a : {v4(2), s3(3), d4(2)}) {
    const Subspace& j = a->radical();
    Subspace full = Subspace::full(a->field.p, a->dim);
    Subspace reps = complement_in(j, full);
    AlgebraSpec qs;
    qs.field = a->field.p;
    qs.kind = AlgebraSpec::structure;
    qs.dim = reps.dim();
    qs.mult.assign(qs.dim, std::vector<Vec>(qs.dim));
    for (std::size_t i = 0; i < qs.dim; ++i)
      for (std::size_t k = 0; k < qs.dim; ++k) {
        Vec prod = alg_mul(*a, reps.basis.row(i), reps.basis.row(k));
        qs.mult[i][k] = *coords_mod(reps.basis, j, prod);
      }
    qs.one = *coords_mod(reps.basis, j, a->one);
    auto q = build_algebra(qs);
    CHECK(q->radical().dim() == 0);
  }
}

TEST_CASE("simples and pims: F_2[C_2]") {
  auto a = c2(2);
  CHECK(simples(a).size() == 1);
  CHECK(simples(a)[0]->dim == 1);
  CHECK(pims(a)[0]->dim == 2);
  CHECK(pim_multiplicity(a, 0) == 1);
}

TEST_CASE("simples and pims: F_2[V4] is local") {
  auto a = v4(2);
  CHECK(simples(a).size() == 1);
  CHECK(simples(a)[0]->dim == 1);
  CHECK(pims(a)[0]->dim == 4);
}

TEST_CASE("simples and pims: F_3[C_2] semisimple") {
  auto a = c2(3);
  REQUIRE(simples(a).size() == 2);
  CHECK(simples(a)[0]->dim == 1);
  CHECK(simples(a)[1]->dim == 1);
  CHECK(pims(a)[0]->dim == 1);
  CHECK(pims(a)[1]->dim == 1);
  CHECK(!iso_test(simples(a)[0], simples(a)[1]));
}

TEST_CASE("simples and pims: F_3[S_3] has two 1-dim simples with dim-3 covers") {
  auto a = s3(3);
  REQUIRE(simples(a).size() == 2);
  CHECK(simples(a)[0]->dim == 1);
  CHECK(simples(a)[1]->dim == 1);
  CHECK(pims(a)[0]->dim == 3);
  CHECK(pims(a)[1]->dim == 3);
  CHECK(pim_multiplicity(a, 0) + pim_multiplicity(a, 1) == 2);
}

TEST_CASE("dim A = sum of dim(P_i) * multiplicity(Hd P_i in A/J)") {
  for (const auto& a : {c2(2), v4(2), c4(2), s3(3), d4(2), c3(3)}) {
    auto reg = regular_module(a);
    ModulePtr head = quotient_module(reg, radical_of(*reg));
    std::size_t total = 0;
    for (std::size_t i = 0; i < simples(a).size(); ++i) {
      std::size_t mult_in_head = hom_space(*simples(a)[i], *head).size();
      CHECK(mult_in_head == pim_multiplicity(a, i));
      total += pims(a)[i]->dim * mult_in_head;
    }
    CHECK(total == a->dim);
  }
}

TEST_CASE("classify: group algebras are symmetric") {
  for (const auto& a : {c2(2), v4(2), s3(3), d4(2)}) {
    auto k = classify(a);
    CHECK(k.is_group_algebra);
    CHECK(k.is_symmetric);
    CHECK(k.is_selfinjective);
  }
}

TEST_CASE("classify: k[x]/(x^2) is symmetric, soc(P) = Hd(P) for F_2[C_2]") {
  auto a = build_algebra(truncated_polynomial_spec(2, 2));
  auto k = classify(a);
  CHECK(k.is_symmetric);
  CHECK(k.is_selfinjective);
  CHECK(!k.is_group_algebra);

  auto b = c2(2);
  auto pim = pims(b)[0];
  ModulePtr soc = submodule_module(pim, socle_of(*pim));
  ModulePtr head = quotient_module(pim, radical_of(*pim));
  CHECK(iso_test(soc, head).has_value());
}

TEST_CASE("classify: 2x2 upper triangular algebra is not self-injective") {
  // basis e11, e12, e22
  AlgebraSpec s;
  s.field = 2;
  s.kind = AlgebraSpec::structure;
  s.dim = 3;
  s.one = {1, 0, 1};
  s.mult.assign(3, std::vector<Vec>(3, Vec(3, 0)));
  s.mult[0][0] = {1, 0, 0};
  s.mult[0][1] = {0, 1, 0};
  s.mult[1][2] = {0, 1, 0};
  s.mult[2][2] = {0, 0, 1};
  auto a = build_algebra(s);
  auto k = classify(a);
  CHECK(!k.is_symmetric);
  CHECK(!k.is_selfinjective);
}

TEST_CASE("symmetric algebras: Soc(P) isomorphic to Hd(P) for every pim") {
  for (const auto& a : {v4(2), s3(3), d4(2), c4(2)}) {
    for (std::size_t i = 0; i < pims(a).size(); ++i) {
      auto pim = pims(a)[i];
      ModulePtr soc = submodule_module(pim, socle_of(*pim));
      CHECK(iso_test(soc, simples(a)[i]).has_value());
    }
  }
}
