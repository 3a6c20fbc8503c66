#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moddiag/ff.hpp"
#include "moddiag/poly.hpp"
#include "moddiag/rng.hpp"

using namespace moddiag;

static MatrixFp mk(std::uint32_t p, std::size_t r, std::size_t c, std::vector<std::uint32_t> v) {
  MatrixFp m(p, r, c);
  m.a = std::move(v);
  return m;
}

static MatrixFp random_matrix(RngStream& rng, std::uint32_t p, std::size_t r, std::size_t c) {
  MatrixFp m(p, r, c);
  for (auto& x : m.a) x = rng.next_mod(p);
  return m;
}

TEST_CASE("prime field basics") {
  CHECK_THROWS_AS(PrimeField(1), Error);
  CHECK_THROWS_AS(PrimeField(4), Error);
  CHECK_THROWS_AS(PrimeField(91), Error);  // 7*13
  PrimeField f(7);
  CHECK(f.inv(3) == 5);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.sub(2, 5) == 4);
  PrimeField f2(2147483647);  // 2^31-1 is prime
  CHECK(f2.mul(f2.inv(12345), 12345) == 1);
}

TEST_CASE("rref: duplicate rows over F_2") {
  auto m = mk(2, 2, 2, {1, 1, 1, 1});
  auto rr = rref(m);
  CHECK(rr.rank == 1);
  CHECK(rr.mat == mk(2, 1, 2, {1, 1}));
}

TEST_CASE("rref: identity fixed point") {
  auto m = MatrixFp::identity(3, 3);
  auto rr = rref(m);
  CHECK(rr.rank == 3);
  CHECK(rr.mat == m);
}

TEST_CASE("rref: proportional rows over F_5") {
  auto m = mk(5, 2, 2, {2, 4, 1, 2});
  auto rr = rref(m);
  CHECK(rr.rank == 1);
  CHECK(rr.mat == mk(5, 1, 2, {1, 2}));
}

TEST_CASE("rref idempotence on random matrices") {
  RngStream rng(0, 1);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int t = 0; t < 50; ++t) {
      auto m = random_matrix(rng, p, 4 + t % 3, 5);
      auto r1 = rref(m).mat;
      CHECK(rref(r1).mat == r1);
    }
  }
}

TEST_CASE("kernel: zero, identity, and a hand case") {
  CHECK(kernel(MatrixFp(2, 2, 2)).dim() == 2);
  CHECK(kernel(MatrixFp::identity(5, 3)).dim() == 0);
  auto m = mk(2, 1, 2, {1, 1});
  auto k = kernel(m);
  CHECK(k.dim() == 1);
  CHECK(space_contains(k, {1, 1}));
}

TEST_CASE("rank-nullity on random matrices") {
  RngStream rng(0, 2);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int t = 0; t < 250; ++t) {
      std::size_t r = 1 + rng.next_mod(6), c = 1 + rng.next_mod(6);
      auto m = random_matrix(rng, p, r, c);
      CHECK(rank_of(m) + kernel(m).dim() == c);
    }
  }
}

TEST_CASE("space ops: transverse lines in F_2^2") {
  auto a = Subspace::from_rows(mk(2, 1, 2, {1, 0}));
  auto b = Subspace::from_rows(mk(2, 1, 2, {0, 1}));
  CHECK(space_sum(a, b) == Subspace::full(2, 2));
  CHECK(space_intersect(a, b).dim() == 0);
}

TEST_CASE("space ops: idempotence") {
  auto a = Subspace::from_rows(mk(3, 2, 3, {1, 2, 0, 0, 0, 1}));
  CHECK(space_sum(a, a) == a);
  CHECK(space_intersect(a, a) == a);
  CHECK(is_subset(a, a));
}

TEST_CASE("complement_in: pivot-greedy choice in F_3^3") {
  auto a = Subspace::from_rows(mk(3, 1, 3, {1, 1, 0}));
  auto b = Subspace::from_rows(mk(3, 2, 3, {1, 0, 0, 0, 1, 0}));
  auto c = complement_in(a, b);
  CHECK(c == Subspace::from_rows(mk(3, 1, 3, {1, 0, 0})));
  CHECK(space_sum(a, c) == b);
  CHECK(space_intersect(a, c).dim() == 0);
}

TEST_CASE("complement_in error path") {
  auto a = Subspace::from_rows(mk(3, 1, 3, {0, 0, 1}));
  auto b = Subspace::from_rows(mk(3, 2, 3, {1, 0, 0, 0, 1, 0}));
  CHECK_THROWS_AS(complement_in(a, b), Error);
  auto c = Subspace::from_rows(mk(3, 1, 2, {1, 0}));
  CHECK_THROWS_AS(space_sum(a, c), Error);
}

TEST_CASE("modular law and complement on random subspace pairs") {
  RngStream rng(0, 3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int t = 0; t < 120; ++t) {
      std::size_t n = 2 + rng.next_mod(4);
      auto a = Subspace::from_rows(random_matrix(rng, p, 1 + rng.next_mod(n), n));
      auto b = Subspace::from_rows(random_matrix(rng, p, 1 + rng.next_mod(n), n));
      auto s = space_sum(a, b);
      auto i = space_intersect(a, b);
      CHECK(a.dim() + b.dim() == s.dim() + i.dim());
      CHECK(is_subset(i, a));
      CHECK(is_subset(a, s));
      auto c = complement_in(a, s);
      CHECK(space_sum(a, c) == s);
      CHECK(space_intersect(a, c).dim() == 0);
    }
  }
}

TEST_CASE("image/preimage/annihilator consistency") {
  RngStream rng(0, 4);
  for (int t = 0; t < 80; ++t) {
    std::uint32_t p = t % 2 ? 2 : 3;
    std::size_t n = 2 + rng.next_mod(4);
    auto x = random_matrix(rng, p, n, n);
    auto u = Subspace::from_rows(random_matrix(rng, p, 1 + rng.next_mod(n), n));
    auto pre = preimage_of(x, u);
    for (std::size_t i = 0; i < pre.dim(); ++i)
      CHECK(space_contains(u, mat_apply(x, pre.basis.row(i))));
    auto img = image_of(x, pre);
    CHECK(is_subset(img, u));
    auto ann = annihilator(u);
    CHECK(ann.dim() + u.dim() == n);
  }
}

TEST_CASE("solve and inverse") {
  auto m = mk(5, 2, 2, {1, 2, 3, 4});
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(mat_mul(m, *inv) == MatrixFp::identity(5, 2));
  auto x = solve(m, {1, 0});
  REQUIRE(x.has_value());
  CHECK(mat_apply(m, *x) == Vec{1, 0});
  CHECK(!inverse(mk(2, 2, 2, {1, 1, 1, 1})).has_value());
  CHECK(!solve(mk(2, 2, 1, {0, 0}), {1, 0}).has_value());
}

TEST_CASE("poly arithmetic and gcd") {
  PolyFp f(5, {4, 0, 1});  // x^2 - 1 = (x+1)(x+4) over F_5
  auto fac = poly_factor(f);
  REQUIRE(fac.size() == 2);
  CHECK(fac[0].base == PolyFp(5, {1, 1}));
  CHECK(fac[1].base == PolyFp(5, {4, 1}));
  auto [q, r] = poly_divmod(f, PolyFp(5, {1, 1}));
  CHECK(r.is_zero());
  CHECK(poly_mul(q, PolyFp(5, {1, 1})) == f);
}

TEST_CASE("poly factor: char-p squarefree part") {
  // (x+1)^2 over F_2 = x^2+1
  auto fac = poly_factor(PolyFp(2, {1, 0, 1}));
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].base == PolyFp(2, {1, 1}));
  CHECK(fac[0].mult == 2);
  // x^2+x+1 irreducible over F_2
  auto fac2 = poly_factor(PolyFp(2, {1, 1, 1}));
  REQUIRE(fac2.size() == 1);
  CHECK(fac2[0].mult == 1);
  // (x^2+x+1)^2 * (x+1) over F_2
  auto f = poly_mul(poly_mul(PolyFp(2, {1, 1, 1}), PolyFp(2, {1, 1, 1})), PolyFp(2, {1, 1}));
  auto fac3 = poly_factor(f);
  REQUIRE(fac3.size() == 2);
  CHECK(fac3[0].base == PolyFp(2, {1, 1}));
  CHECK(fac3[0].mult == 1);
  CHECK(fac3[1].base == PolyFp(2, {1, 1, 1}));
  CHECK(fac3[1].mult == 2);
}

TEST_CASE("poly factor reassembles on random inputs") {
  RngStream rng(0, 5);
  for (std::uint32_t p : {2u, 3u, 5u, 13u}) {
    for (int t = 0; t < 60; ++t) {
      Vec c(2 + rng.next_mod(7), 0);
      for (auto& v : c) v = rng.next_mod(p);
      c.back() = 1 + rng.next_mod(p - 1);
      PolyFp f(p, c);
      if (f.degree() == 0) continue;
      auto fac = poly_factor(f);
      PolyFp prod = PolyFp::constant(p, f.lead());
      for (auto& pf : fac)
        for (std::size_t i = 0; i < pf.mult; ++i) prod = poly_mul(prod, pf.base);
      CHECK(prod == f);
      for (auto& pf : fac) CHECK(poly_factor(pf.base).size() == 1);
    }
  }
}

TEST_CASE("charpoly matches direct computation on small matrices") {
  // companion matrix of x^3 + 2x + 1 over F_3
  auto m = mk(3, 3, 3, {0, 0, 2, 1, 0, 1, 0, 1, 0});
  // columns convention: charpoly of companion built by hand below instead
  auto c = charpoly(m);
  CHECK(c.degree() == 3);
  CHECK(c.lead() == 1);
  // Cayley-Hamilton
  CHECK(poly_at_matrix(c, m).is_zero());
}

TEST_CASE("charpoly and minpoly properties on random matrices") {
  RngStream rng(0, 6);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int t = 0; t < 60; ++t) {
      std::size_t n = 1 + rng.next_mod(5);
      auto m = random_matrix(rng, p, n, n);
      auto cp = charpoly(m);
      CHECK(cp.degree() == n);
      CHECK(cp.lead() == 1);
      CHECK(poly_at_matrix(cp, m).is_zero());  // Cayley-Hamilton
      auto mp = minpoly(m);
      CHECK(poly_at_matrix(mp, m).is_zero());
      CHECK(poly_mod(cp, mp).is_zero());  // minpoly divides charpoly
      // trace term: coefficient of x^{n-1} is -tr(m)
      PrimeField f(p);
      std::uint32_t tr = 0;
      for (std::size_t i = 0; i < n; ++i) tr = f.add(tr, m.at(i, i));
      CHECK(cp.c[n - 1] == f.neg(tr));
    }
  }
}

TEST_CASE("determinism: identical inputs give bit-identical outputs") {
  RngStream r1(7, 9), r2(7, 9);
  auto a = random_matrix(r1, 5, 4, 4);
  auto b = random_matrix(r2, 5, 4, 4);
  CHECK(a == b);
  CHECK(rref(a).mat == rref(b).mat);
  CHECK(charpoly(a) == charpoly(b));
}
