#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace weylkit;

namespace {

TOperator T(const char *s) { return parse_toperator(s); }
WeylOp W(const char *s) { return parse_weyl(s); }

bool in_span(const std::vector<TOperator> &basis, const TOperator &D) {
  auto with = basis;
  with.push_back(D);
  return operator_span_dim(with) == operator_span_dim(basis);
}

TOperator random_toperator(std::mt19937 &rng) {
  std::uniform_int_distribution<int> order(0, 2), expo(-1, 3), count(1, 3);
  TOperator D;
  for (int k = count(rng); k > 0; --k)
    D.add_term(order(rng), LaurentPoly::monomial(expo(rng), fixtures::random_coeff(rng)));
  return D;
}

} // namespace

TEST(Semigroup, CuspInvariants) {
  const NumericalSemigroup S(2, 3);
  EXPECT_EQ(S.frobenius(), 1);
  EXPECT_EQ(S.conductor(), 2);
  EXPECT_FALSE(S.contains(1));
  EXPECT_TRUE(S.contains(0));
  auto w = S.witness(5);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (std::pair<long, long>{1, 1}));
  EXPECT_THROW(NumericalSemigroup(2, 4), Error);
  EXPECT_THROW(NumericalSemigroup(1, 3), Error);
}

TEST(Semigroup, FrobeniusIsLargestGap) {
  for (int a = 2; a <= 7; ++a)
    for (int b = a + 1; b <= 11; ++b) {
      if (std::gcd(a, b) != 1)
        continue;
      const NumericalSemigroup S(a, b);
      EXPECT_FALSE(S.contains(S.frobenius()));
      EXPECT_TRUE(S.contains(S.conductor()));
      for (long s = S.conductor(); s < S.conductor() + a + b; ++s)
        EXPECT_TRUE(semigroup_member(S, s));
      // brute force membership
      for (long s = 0; s <= S.conductor(); ++s) {
        bool brute = false;
        for (long u = 0; u * a <= s && !brute; ++u)
          brute = (s - u * a) % b == 0;
        EXPECT_EQ(S.contains(s), brute) << a << "," << b << " s=" << s;
      }
    }
}

TEST(TAct, Examples) {
  EXPECT_EQ(t_act(T("dt"), 3), LaurentPoly::monomial(2, 3));
  for (long s = 0; s <= 8; ++s) {
    EXPECT_EQ(t_act(T("t*dt"), s), LaurentPoly::monomial(s, s));
    EXPECT_EQ(t_act(T("dt^2 - 2*t^-1*dt"), s), LaurentPoly::monomial(s - 2, s * (s - 3)));
  }
  EXPECT_THROW(t_act(T("dt"), -1), Error);
}

TEST(PreservesRing, Examples) {
  const NumericalSemigroup S(2, 3);
  EXPECT_TRUE(preserves_ring(T("t^2"), S));
  EXPECT_TRUE(preserves_ring(T("t*dt"), S));
  EXPECT_FALSE(preserves_ring(T("dt"), S));
  EXPECT_TRUE(preserves_ring(T("dt^2 - 2*t^-1*dt"), S));
  EXPECT_FALSE(preserves_ring(T("t"), S));
}

TEST(DmodBox, OrderZeroIsSemigroupMonomials) {
  const NumericalSemigroup S(2, 3);
  const auto basis = dmod_box_basis(S, 0, 0, 6);
  EXPECT_EQ(basis.size(), 6u); // t^0, t^2, ..., t^6
  for (long s : {0, 2, 3, 4, 5, 6})
    EXPECT_TRUE(in_span(basis, TOperator(LaurentPoly::monomial(s))));
  EXPECT_FALSE(in_span(basis, T("t")));
}

TEST(DmodBox, ContainsKnownOperators) {
  const NumericalSemigroup S(2, 3);
  const auto first = dmod_box_basis(S, 1, 0, 2);
  EXPECT_TRUE(in_span(first, T("t*dt")));
  EXPECT_FALSE(in_span(first, T("dt")));
  const auto second = dmod_box_basis(S, 2, 1, 2);
  EXPECT_TRUE(in_span(second, T("dt^2 - 2*t^-1*dt")));
  for (const auto &D : second)
    EXPECT_TRUE(preserves_ring(D, S)) << to_string(D);
}

TEST(Compose, RespectsAction) {
  std::mt19937 rng(51);
  std::uniform_int_distribution<long> s(0, 9);
  for (int k = 0; k < 60; ++k) {
    const TOperator D = random_toperator(rng), E = random_toperator(rng);
    const long e = s(rng);
    EXPECT_EQ(t_act(compose(D, E), e), apply(D, t_act(E, e)));
  }
}

TEST(PreservesRing, ClosedUnderSumAndComposition) {
  const NumericalSemigroup S(2, 3);
  const auto basis = dmod_box_basis(S, 2, 1, 3);
  ASSERT_FALSE(basis.empty());
  for (const auto &D : basis)
    for (const auto &E : basis) {
      EXPECT_TRUE(preserves_ring(D + E, S));
      EXPECT_TRUE(preserves_ring(compose(D, E), S));
    }
}

TEST(ProjectClass, Examples) {
  const MonomialCurve C(2, 3);
  EXPECT_EQ(project_class(W("x"), C), T("t^2"));
  EXPECT_EQ(project_class(W("2*x*dx + 3*y*dy"), C), T("t*dt"));
  EXPECT_TRUE(project_class(WeylOp(C.poly()), C).is_zero());
  EXPECT_TRUE(project_class(WeylOp(), C).is_zero());
  try {
    project_class(W("dx"), C);
    ADD_FAILURE();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInIdealizer);
  }
}

TEST(ProjectClass, MultiplicativeAndKillsRightIdeal) {
  std::mt19937 rng(52);
  const MonomialCurve C(2, 3);
  const auto basis = idealizer_filtered_basis(C.curve(), 3);
  std::uniform_int_distribution<std::size_t> pick(0, basis.dim() - 1);
  for (int k = 0; k < 20; ++k) {
    const WeylOp &a = basis.elements[pick(rng)], &b = basis.elements[pick(rng)];
    EXPECT_EQ(project_class(a * b, C), compose(project_class(a, C), project_class(b, C)));
    const WeylOp r = fixtures::random_weyl(rng, 2, 3);
    EXPECT_TRUE(project_class(WeylOp(C.poly()) * r, C).is_zero());
  }
}

TEST(Correspondence, CuspLowLevels) {
  const MonomialCurve C(2, 3);
  const auto r0 = correspondence_check(C, 0);
  EXPECT_TRUE(r0.passed());
  EXPECT_EQ(r0.image_dim, 1u);

  const auto r1 = correspondence_check(C, 1);
  EXPECT_TRUE(r1.passed());
  EXPECT_EQ(r1.image_dim, 3u);
  EXPECT_EQ(r1.quotient_dim, 3u);
  std::vector<TOperator> expected = {T("1"), T("t^2"), T("t^3")};
  EXPECT_EQ(operator_span_dim(expected), 3u);
  auto joined = r1.images;
  joined.insert(joined.end(), expected.begin(), expected.end());
  EXPECT_EQ(operator_span_dim(joined), 3u);

  const auto r2 = correspondence_check(C, 2);
  EXPECT_TRUE(r2.passed());
  EXPECT_EQ(r2.image_dim, 7u);
  EXPECT_TRUE(in_span(r2.images, T("t*dt")));
}

TEST(Correspondence, OtherCurves) {
  for (auto [a, b] : {std::pair{2, 5}, std::pair{3, 4}}) {
    const MonomialCurve C(a, b);
    for (int n = 0; n <= 3; ++n) {
      const auto r = correspondence_check(C, n);
      EXPECT_TRUE(r.passed()) << a << "," << b << " n=" << n;
    }
  }
}
