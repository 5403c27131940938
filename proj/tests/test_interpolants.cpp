#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "polyadica/error.hpp"
#include "polyadica/interpolants.hpp"
#include "polyadica/suite.hpp"

using namespace polyadica;

TEST(FindInterpolant, IdentitySquareGivesTheElement) {
  const auto id = LatticeHom::identity(fixtures::diamond());
  const auto s = LatticeSquare::make(id, id, id, id);
  for (Elem b = 0; b < 4; ++b) EXPECT_EQ(find_interpolant(s, b, b), b);
}

TEST(FindInterpolant, FrobeniusSquareLeastWitnessIsM) {
  const auto s = frobenius_square(fixtures::collapse_high(), 1);
  const Elem top_b = s.f.cod()->top();
  const Elem m = s.g.cod()->top();  // ↓m has top m
  EXPECT_EQ(find_interpolant(s, top_b, m), 1u);
  // ⊤ of A is a valid, larger witness
  const Elem top = s.f.dom()->top();
  EXPECT_TRUE(s.f.cod()->leq(top_b, s.f(top)));
  EXPECT_TRUE(s.g.cod()->leq(s.g(top), m));
}

TEST(FindInterpolant, NonFrobeniusSquareHasNone) {
  const auto s = frobenius_square(fixtures::collapse_low(), 1);
  EXPECT_EQ(find_interpolant(s, s.f.cod()->top(), s.g.cod()->bot()), std::nullopt);
}

TEST(FindInterpolant, RejectsIneligiblePairs) {
  const auto low = fixtures::collapse_low();
  const auto high = fixtures::collapse_high();
  const auto id2 = LatticeHom::identity(fixtures::two());
  const auto s = LatticeSquare::make(low, high, id2, id2);
  EXPECT_THROW(find_interpolant(s, 1, 0), InvalidInput);
}

TEST(FindInterpolant, ConsistentWithWitnessTable) {
  for_each_lax_square(make_hom_table(small_lattices(2)), [](const LatticeSquare& s) {
    const auto r = has_interpolation(s);
    bool any_absent = false;
    for (Elem b = 0; b < s.size_b(); ++b) {
      for (Elem c = 0; c < s.size_c(); ++c) {
        if (!s.u.cod()->leq(s.u(b), s.v(c))) {
          EXPECT_THROW(find_interpolant(s, b, c), InvalidInput);
          continue;
        }
        const auto w = find_interpolant(s, b, c);
        EXPECT_EQ(w, r.at(b, c));
        any_absent = any_absent || !w;
      }
    }
    EXPECT_EQ(any_absent, !r.holds);
  });
}

TEST(HeytingPushout, AlongIdentities) {
  const auto l = fixtures::chain3();
  const auto id = LatticeHom::identity(l);
  const auto po = dl_pushout(id, id);
  for (Elem b = 0; b < 3; ++b) EXPECT_EQ(heyting_pushout_interpolate(id, id, po, b, b), b);
}

TEST(HeytingPushout, CoproductOfChainsHasNoObligationBetweenTheMiddles) {
  const auto e = fixtures::embed_two();
  const auto po = dl_pushout(e, e);
  EXPECT_FALSE(po.d->leq(po.u(1), po.v(1)));
  EXPECT_FALSE(po.d->leq(po.v(1), po.u(1)));
  EXPECT_THROW(heyting_pushout_interpolate(e, e, po, 1, 1), InvalidInput);
  // (⊥, m) is eligible; its interpolant is ⊥
  EXPECT_EQ(heyting_pushout_interpolate(e, e, po, 0, 1), 0u);
  EXPECT_EQ(heyting_pushout_interpolate(e, e, po, 1, 2), 1u);
}

TEST(HeytingPushout, OneElementCorner) {
  const auto one = fixtures::one();
  const auto id = LatticeHom::identity(one);
  EXPECT_EQ(heyting_pushout_interpolate(id, id, 0, 0), 0u);
}

TEST(HeytingPushout, RejectsNonHeytingHoms) {
  const auto low = fixtures::collapse_low();
  EXPECT_THROW(heyting_pushout_interpolate(low, low, 0, 0), InvalidInput);
}

TEST(HeytingPushout, ExhaustiveSpans) {
  const auto r = run_heyting_pushouts(3);
  EXPECT_TRUE(r.ok()) << r.first_failure;
  EXPECT_GT(r.checked, 1000u);
}
