#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moddiag/diagram.hpp"
#include "moddiag/oracle.hpp"

using namespace moddiag;

static AlgebraPtr c2(std::uint32_t p) { return build_algebra(group_algebra_spec(p, {{1, 0}})); }
static AlgebraPtr v4() {
  return build_algebra(group_algebra_spec(2, {{1, 0, 3, 2}, {2, 3, 0, 1}}));
}
static AlgebraPtr c4() { return build_algebra(group_algebra_spec(2, {{1, 2, 3, 0}})); }
static AlgebraPtr s3() { return build_algebra(group_algebra_spec(3, {{1, 0, 2}, {0, 2, 1}})); }
static AlgebraPtr kx3() { return build_algebra(truncated_polynomial_spec(2, 3)); }

TEST_CASE("confined preimage: zero target") {
  auto a = c2(2);
  auto u = regular_module(a);
  std::vector<Subspace> emb;
  auto m = direct_sum({u, u}, &emb);
  DecompositionData dd{m, emb, {radical_of(*submodule_module(m, emb[0])),
                                radical_of(*submodule_module(m, emb[1]))}};
  // radical subspaces must live in m's coordinates
  dd.subs.clear();
  for (int i = 0; i < 2; ++i) {
    auto sub = submodule_module(m, emb[i]);
    dd.subs.push_back(Subspace::from_rows(rows_to_root(*sub, radical_of(*sub).basis)));
  }
  auto q = quotient_module(m, space_sum(dd.subs[0], dd.subs[1]));
  auto out = confined_preimage(dd, Subspace::zero(2, q->dim));
  CHECK(out.support.empty());
  CHECK(out.preimage.dim() == 0);
}

TEST_CASE("confined preimage: U+U over F_2[C_2], first head line and diagonal") {
  auto a = c2(2);
  auto u = regular_module(a);
  std::vector<Subspace> emb;
  auto m = direct_sum({u, u}, &emb);
  DecompositionData dd;
  dd.m = m;
  dd.parts = emb;
  for (int i = 0; i < 2; ++i) {
    auto sub = submodule_module(m, emb[i]);
    dd.subs.push_back(Subspace::from_rows(rows_to_root(*sub, radical_of(*sub).basis)));
  }
  Subspace kern = space_sum(dd.subs[0], dd.subs[1]);
  auto q = quotient_module(m, kern);
  REQUIRE(q->dim == 2);
  Morphism epi = canonical_epi(m, q);

  // first head line: image of the first summand's head
  MatrixFp first(2, 1, q->dim);
  {
    Vec img = mat_apply(epi.mat, emb[0].basis.row(0));
    first.set_row(0, img);
  }
  auto out1 = confined_preimage(dd, Subspace::from_rows(first));
  CHECK(out1.support == std::vector<std::size_t>{0});
  CHECK(out1.preimage == emb[0]);

  // diagonal head line
  PrimeField f(2);
  MatrixFp diag(2, 1, q->dim);
  {
    Vec i0 = mat_apply(epi.mat, emb[0].basis.row(0));
    Vec i1 = mat_apply(epi.mat, emb[1].basis.row(0));
    Vec dsum(q->dim, 0);
    for (std::size_t t = 0; t < q->dim; ++t) dsum[t] = f.add(i0[t], i1[t]);
    diag.set_row(0, dsum);
  }
  auto out2 = confined_preimage(dd, Subspace::from_rows(diag));
  CHECK(out2.support == std::vector<std::size_t>{0, 1});
  CHECK(out2.preimage.dim() == 3);
}

TEST_CASE("pillars: uniserial module has one pillar per section, no colonnades") {
  auto reg = regular_module(c4());
  auto an = analyze_pillars(reg);
  for (const auto& p : an.pillars) CHECK(p.height <= p.j - p.i);
  CHECK(an.colonnades.empty());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> per_section;
  for (const auto& p : an.pillars) per_section[{p.i, p.j}]++;
  for (const auto& [sec, count] : per_section) CHECK(count == 1);
}

TEST_CASE("pillars: U+U over F_2[C_2] has a {0,2}-colonnade of count 2") {
  auto a = c2(2);
  auto u = regular_module(a);
  auto m = direct_sum({u, u});
  auto an = analyze_pillars(m);
  bool found = false;
  for (const auto& c : an.colonnades)
    if (c.i == 0 && c.j == 2 && c.members.size() == 2) found = true;
  CHECK(found);
  // the {0,2} colonnade is maximal, the layer colonnades are below it
  for (const auto& c : an.colonnades) {
    if (c.i == 0 && c.j == 2)
      CHECK(c.maximal);
    else
      CHECK(!c.maximal);
  }
}

TEST_CASE("pillars: V4 middle layer is a colonnade of two simples") {
  auto reg = regular_module(v4());
  auto an = analyze_pillars(reg);
  bool found = false;
  for (const auto& c : an.colonnades)
    if (c.i == 1 && c.j == 2 && c.members.size() == 2) found = true;
  CHECK(found);
  // peaks: the (0,2) and (1,3) indecomposables overcoat middle-layer pillars
  CHECK(!an.peaks.empty());
}

TEST_CASE("dominates: simple layer summand under the whole module") {
  auto reg = regular_module(v4());
  auto an = analyze_pillars(reg);
  const Pillar* whole = nullptr;
  const Pillar* mid = nullptr;
  for (const auto& p : an.pillars) {
    if (p.i == 0 && p.j == 3) whole = &p;
    if (p.i == 1 && p.j == 2 && !mid) mid = &p;
  }
  REQUIRE(whole);
  REQUIRE(mid);
  CHECK(dominates(*whole, *mid));
  CHECK_THROWS_AS(dominates(*mid, *whole), Error);  // sections not nested
}

TEST_CASE("dominates: parallel copy semantics in U+U") {
  auto a = c2(2);
  auto u = regular_module(a);
  auto m = direct_sum({u, u});
  auto an = analyze_pillars(m);
  const Pillar* u1 = nullptr;
  const Pillar *h1 = nullptr, *h2 = nullptr;
  for (const auto& p : an.pillars) {
    if (p.i == 0 && p.j == 2 && !u1) u1 = &p;
    if (p.i == 0 && p.j == 1) (h1 ? h2 : h1) = &p;
  }
  REQUIRE((u1 && h1 && h2));
  CHECK(dominates(*u1, *h1));
  CHECK(dominates(*u1, *h2));  // the parallel copy counts
}

TEST_CASE("lemma17 overcoat: uniserial K, M = K/rad^2, N = rad K") {
  auto reg = regular_module(c4());  // uniserial of length 4; use i=1, s=1
  auto chain = radical_chain(*reg);
  auto q = quotient_module(reg, chain[2]);
  Subspace m_part = Subspace::full(2, q->dim);
  Subspace n_part = chain[1];
  auto out = lemma17_overcoat(reg, 1, 1, m_part, n_part);
  CHECK(out.embedding.dim() == 4);  // Λ = K itself
  CHECK(out.complement.dim() == 0);
  CHECK(is_indecomposable(out.lambda));
}

TEST_CASE("lemma17 overcoat: split instance K = U3 + S") {
  auto a = kx3();  // k[x]/(x^3): uniserial U3 = regular
  auto u3 = regular_module(a);
  auto s = simples(a)[0];
  std::vector<Subspace> emb;
  auto k = direct_sum({u3, s}, &emb);
  auto chain = radical_chain(*k);
  // K/rad^2 K = U2 + S; M := the U2 part = image of U3
  auto q = quotient_module(k, chain[2]);
  Morphism epi = canonical_epi(k, q);
  Subspace m_part = image_of(epi.mat, emb[0]);
  REQUIRE(m_part.dim() == 2);
  Subspace n_part = chain[1];  // rad K = rad U3, dim 2... includes only U3 part
  REQUIRE(n_part.dim() == 2);
  auto out = lemma17_overcoat(k, 1, 1, m_part, n_part);
  CHECK(out.embedding == emb[0]);  // Λ = U3
  CHECK(is_indecomposable(out.lambda));
  CHECK(out.complement.dim() == 1);
  CHECK(space_intersect(out.complement, out.embedding).dim() == 0);
  // Λ strictly overcoats both: longer than M (2 layers) and N (2 layers)
  CHECK(loewy_length(*out.lambda) == 3);
}

TEST_CASE("canonical_hom: identity and zero") {
  auto reg = regular_module(v4());
  auto whole = section(reg, Subspace::full(2, 4), Subspace::zero(2, 4));
  auto ch = canonical_hom(whole, whole, whole);
  CHECK(ch.composite.mat == MatrixFp::identity(2, 4));
  auto z = section(reg, radical_of(*reg), radical_of(*reg));
  REQUIRE(z->dim == 0);
  auto ch0 = canonical_hom(whole, z, whole);
  CHECK(ch0.composite.mat.is_zero());
}

TEST_CASE("canonical_hom: lemma 17 configuration on the uniserial C4 regular") {
  auto reg = regular_module(c4());
  auto chain = radical_chain(*reg);
  auto n = submodule_module(reg, chain[1]);          // rad K, layers 1..3
  auto mq = quotient_module(reg, chain[2]);          // K/rad^2, layers 0..1
  auto s = section(reg, chain[1], chain[2]);         // shared middle
  auto ch = canonical_hom(n, s, mq);
  CHECK(is_intertwiner(ch.composite));
  CHECK(rank_of(ch.composite.mat) == s->dim);
  // image = S inside M
  Subspace img = Subspace::from_rows(transpose(ch.composite.mat));
  Subspace s_in_m = Subspace::from_rows(rows_from_root(*mq, s->reps));
  CHECK(Subspace::from_rows(transpose(ch.composite.mat)).dim() == 1);
  CHECK(is_subset(img, s_in_m));
}

TEST_CASE("visible pullback: degenerate and V4 example") {
  auto a = v4();
  auto reg = regular_module(a);
  auto series = loewy_series(reg, SeriesKind::radical);
  auto e1x = extension_from_layer(reg, series, 0);
  auto e2x = extension_from_layer(reg, series, 1);
  ModulePtr b1 = e1x.middle, b2 = e2x.middle;
  // common top: the head of V
  auto t = quotient_module(reg, radical_of(*reg));
  auto pb = visible_pullback(b1, b2, t);
  CHECK(pb->dim == 3);
  auto chain = radical_chain(*reg);
  auto vj2 = quotient_module(reg, chain[2]);
  CHECK(pb->top == vj2->top);
  CHECK(pb->bottom == vj2->bottom);
  // degenerate: pullback of L over itself is L
  auto pbd = visible_pullback(b1, b1, b1);
  CHECK(pbd->top == b1->top);
  CHECK(pbd->bottom == b1->bottom);
  // provenance: the result precisely overcoats both legs
  CHECK_NOTHROW(canonical_epi(pb, b1));
  CHECK_NOTHROW(canonical_epi(pb, b2));
  CHECK(pb->dim == b1->dim + b2->dim - t->dim);
}

TEST_CASE("visible pushout: two simple submodules with common socle target") {
  auto a = v4();
  auto d = dual_module(regular_module(a));
  // in the dual picture: two lines of soc^2(D)/... share the socle
  auto soc = socle_chain(*d);
  auto sser = loewy_series(d, SeriesKind::radical);
  // use the two second-layer submodules generated by the middle slots
  auto chain = radical_chain(*d);
  ModulePtr l1, l2;
  {
    auto mid = sser.layers[1];
    REQUIRE(mid.size() == 2);
    Subspace g1 = space_sum(space_sum(mid[0].basis, chain[2]), Subspace::zero(2, 4));
    Subspace g2 = space_sum(mid[1].basis, chain[2]);
    l1 = submodule_module(d, g1);
    l2 = submodule_module(d, g2);
  }
  auto t = submodule_module(d, chain[2]);  // the socle
  REQUIRE(t->dim == 1);
  auto po = visible_pushout(l1, l2, t);
  CHECK(po->dim == 3);
  CHECK_NOTHROW(canonical_mono(l1, po));
  CHECK_NOTHROW(canonical_mono(l2, po));
}

TEST_CASE("splice recovers the pullback glue") {
  auto reg = regular_module(c4());
  auto chain = radical_chain(*reg);
  auto l = quotient_module(reg, chain[3]);   // layers 0..2
  auto l0 = section(reg, chain[1], chain[3]);  // its bottom two layers
  auto l2 = submodule_module(reg, chain[1]);   // layers 1..3
  auto glued = splice(l, l0, l2);
  CHECK(glued->dim == 4);
  CHECK(glued->top == Subspace::full(2, 4));
  CHECK(glued->bottom.dim() == 0);
}

TEST_CASE("tuned diagram: simple module is one vertex") {
  auto a = v4();
  auto d = tuned_diagram(simples(a)[0]);
  CHECK(d.vertices.size() == 1);
  CHECK(d.edges.empty());
  CHECK(d.report.all_pass());
}

TEST_CASE("tuned diagram: V4 regular has 4 vertices, 4 edges, classes (1,0)/(0,1)") {
  auto a = v4();
  auto d = tuned_diagram(regular_module(a));
  REQUIRE(d.vertices.size() == 4);
  REQUIRE(d.edges.size() == 4);
  CHECK(d.report.all_pass());
  std::size_t head = 99, soc = 99;
  for (const auto& v : d.vertices) {
    if (v.radical_layer == 0) head = v.id;
    if (v.radical_layer == 2) soc = v.id;
  }
  std::vector<Vec> head_classes;
  std::size_t to_soc = 0;
  for (const auto& e : d.edges) {
    CHECK(!e.socle_side);
    if (e.from == head) head_classes.push_back(e.cls);
    if (e.to == soc) ++to_soc;
  }
  REQUIRE(head_classes.size() == 2);
  CHECK(to_soc == 2);
  bool straight = head_classes[0] == Vec{1, 0} && head_classes[1] == Vec{0, 1};
  bool swapped = head_classes[0] == Vec{0, 1} && head_classes[1] == Vec{1, 0};
  CHECK((straight || swapped));
}

TEST_CASE("tuned diagram: U+U is two disjoint chains with the colonnade annotated") {
  auto a = c2(2);
  auto u = regular_module(a);
  auto m = direct_sum({u, u});
  auto d = tuned_diagram(m);
  CHECK(d.report.all_pass());
  REQUIRE(d.vertices.size() == 4);
  CHECK(d.edges.size() == 2);
  CHECK(d.components.size() == 2);
  bool colonnade_listed = false;
  for (const auto& c : d.pillars.colonnades)
    if (c.i == 0 && c.j == 2 && c.members.size() == 2) colonnade_listed = true;
  CHECK(colonnade_listed);
  // the diagonal submodule is dominated but not visible
  auto comp = decompose(m);
  auto iso = iso_test(comp[0].module, comp[1].module);
  REQUIRE(iso);
  MatrixFp diag_rows(2, comp[0].module->dim, m->dim);
  MatrixFp r0 = rows_from_root(*m, rows_to_root(*comp[0].module, MatrixFp::identity(2, 2)));
  MatrixFp r1 = rows_from_root(*m, rows_to_root(*comp[1].module, iso->mat));
  PrimeField f(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < m->dim; ++j)
      diag_rows.at(i, j) = f.add(r0.at(i, j), r1.at(i, j));
  Subspace diag = Subspace::from_rows(diag_rows);
  CHECK(is_submodule(*m, diag));
  CHECK(!is_visible(d, lift_full(*m, diag), m->bottom));
}

TEST_CASE("tuned diagram: S3 over F_3 alternates the two simples") {
  auto a = s3();
  for (auto pim : pims(a)) {
    auto d = tuned_diagram(pim);
    CHECK(d.report.all_pass());
    REQUIRE(d.vertices.size() == 3);
    CHECK(d.edges.size() == 2);
    // head and socle share the iso class, middle differs
    std::size_t head_iso = 99, mid_iso = 99, soc_iso = 99;
    for (const auto& v : d.vertices) {
      if (v.radical_layer == 0) head_iso = v.iso_class;
      if (v.radical_layer == 1) mid_iso = v.iso_class;
      if (v.radical_layer == 2) soc_iso = v.iso_class;
    }
    CHECK(head_iso == soc_iso);
    CHECK(head_iso != mid_iso);
  }
}

TEST_CASE("central diagram: uniserial equals tuned") {
  auto reg = regular_module(c4());
  auto t = tuned_diagram(reg);
  auto c = central_diagram(reg);
  CHECK(c.report.all_pass());
  CHECK(c.vertices.size() == t.vertices.size());
  CHECK(c.edges.size() == t.edges.size());
  for (const auto& e : c.edges) CHECK(!e.socle_side);
  for (const auto& v : c.vertices) CHECK(!v.fallen);
}

TEST_CASE("central diagram: k + U drops the free vertex to the socle") {
  auto a = c2(2);
  auto u = regular_module(a);
  auto m = direct_sum({simples(a)[0], u});
  auto d = central_diagram(m);
  CHECK(d.report.all_pass());
  REQUIRE(d.vertices.size() == 3);
  std::size_t fallen_count = 0;
  for (const auto& v : d.vertices) {
    if (v.fallen) {
      ++fallen_count;
      CHECK(v.radical_layer == 0);
      CHECK(v.socle_colayer == 1);
      // no incident edges
      for (const auto& e : d.edges) {
        CHECK(e.from != v.id);
        CHECK(e.to != v.id);
      }
    }
  }
  CHECK(fallen_count == 1);
}

TEST_CASE("central diagram: V4 regular is self-dual, central equals tuned") {
  auto a = v4();
  auto t = tuned_diagram(regular_module(a));
  auto c = central_diagram(regular_module(a));
  CHECK(c.report.all_pass());
  CHECK(c.edges.size() == t.edges.size());
  for (const auto& e : c.edges) CHECK(!e.socle_side);
  for (const auto& v : c.vertices) {
    CHECK(!v.fallen);
    CHECK(v.socle_colayer == 3 - v.radical_layer);
  }
}

TEST_CASE("verify catches a perturbed edge label") {
  auto a = v4();
  auto d = tuned_diagram(regular_module(a));
  REQUIRE(d.report.all_pass());
  auto broken = d;
  // flip a coordinate on the first edge with a 2-coordinate class
  for (auto& e : broken.edges) {
    if (e.cls.size() == 2) {
      e.cls[0] ^= 1;
      e.cls[1] ^= 1;
      break;
    }
  }
  auto rep = verify_diagram(broken, regular_module(a));
  CHECK(!rep.all_pass());
}

TEST_CASE("verify catches a hidden colonnade chain") {
  auto a = c2(2);
  auto u = regular_module(a);
  auto m = direct_sum({u, u});
  auto d = tuned_diagram(m);
  REQUIRE(d.report.all_pass());
  Diagram broken = d;
  // drop one whole chain (its two vertices and the edge)
  std::size_t comp_to_drop = d.vertices.back().component;
  std::vector<DiagramVertex> kept;
  for (const auto& v : broken.vertices)
    if (v.component != comp_to_drop) kept.push_back(v);
  broken.vertices = kept;
  std::vector<DiagramEdge> kept_e;
  for (const auto& e : broken.edges) {
    bool dangling = true;
    for (const auto& v : kept)
      if (v.id == e.from || v.id == e.to) dangling = false;
    if (!dangling) kept_e.push_back(e);
  }
  broken.edges = kept_e;
  auto rep = verify_diagram(broken, m);
  CHECK(!rep.all_pass());
}

TEST_CASE("tuned diagrams verify across the corpus regular modules") {
  for (auto a : {c2(2), v4(), c4(), s3(), kx3(), c2(3)}) {
    auto d = central_diagram(regular_module(a));
    CHECK(d.report.all_pass());
    // vertex multiset per layer matches the virtual radical series
    auto series = loewy_series(regular_module(a), SeriesKind::radical);
    std::map<std::size_t, std::size_t> per_layer;
    for (const auto& v : d.vertices) per_layer[v.radical_layer]++;
    for (std::size_t t = 0; t < series.layers.size(); ++t)
      CHECK(per_layer[t] == series.layers[t].size());
  }
}

TEST_CASE("D4 over F_2: the order-8 dihedral regular module verifies") {
  auto a = build_algebra(group_algebra_spec(2, {{1, 2, 3, 0}, {1, 0, 3, 2}}));
  auto d = central_diagram(regular_module(a));
  CHECK(d.report.all_pass());
  CHECK(d.vertices.size() == 8);
}
