#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace weylkit;

namespace {

BiPoly P(const char *s) { return parse_bipoly(s); }

const CurvePoly &cusp() {
  static const CurvePoly f(P("y^2 - x^3"));
  return f;
}

std::vector<CurvePoly> family() {
  return {CurvePoly(P("y^2 - x^3")), CurvePoly(P("y^2 - x^5")), CurvePoly(P("y^3 - x^4")),
          CurvePoly(P("y^3 - x^5"))};
}

TorsionOptions clear_origin_row() {
  TorsionOptions opts;
  opts.row_hook = [](Exponent2 ij, SparseRow &row) {
    if (ij == Exponent2{0, 0})
      row.clear();
  };
  return opts;
}

} // namespace

TEST(PhiRow, CuspRows) {
  const SparseRow r00 = phi_row(cusp(), 0, 0, 3);
  EXPECT_EQ(r00, (SparseRow{{{0, 2}, 2}, {{3, 0}, -6}}));
  const SparseRow r10 = phi_row(cusp(), 1, 0, 4);
  EXPECT_EQ(r10, (SparseRow{{{1, 2}, 2}, {{4, 0}, -24}}));
  // truncated to unknowns in Delta_2
  EXPECT_EQ(phi_row(cusp(), 0, 0, 2), (SparseRow{{{0, 2}, 2}}));
  EXPECT_TRUE(phi_row(cusp(), 2, 2, 3).empty());
  EXPECT_THROW(phi_row(cusp(), -1, 0, 3), Error);
}

TEST(PhiRow, AgreesWithAction) {
  std::mt19937 rng(61);
  std::uniform_int_distribution<int> shift_by(0, 3);
  for (const auto &f : family()) {
    for (int k = 0; k < 25; ++k) {
      const int n = 6;
      const int i = shift_by(rng), j = shift_by(rng);
      QVector coords(static_cast<std::size_t>(delta_cardinality(n)));
      for (auto &c : coords)
        c = std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? fixtures::random_coeff(rng) : 0;
      const WeylOp theta = d_polynomial(coords, n);
      Rational lhs = 0;
      for (const auto &[e, c] : phi_row(f, i, j, n))
        lhs += c * coords[delta_index(e)];
      const Rational rhs = evaluate(act(theta, shift(f.poly(), {i, j})), 0, 0);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(MBasis, CuspDimensionsMatchOracle) {
  EXPECT_EQ(m_basis(cusp(), 0).dim(), 1u);
  EXPECT_EQ(m_basis(cusp(), 1).dim(), 3u);
  // values from oracle_m_dim
  const std::size_t pinned[] = {1, 3, 5, 7, 9, 11, 13};
  for (int n = 0; n <= 6; ++n) {
    EXPECT_EQ(m_basis(cusp(), n).dim(), pinned[n]) << n;
    EXPECT_EQ(fixtures::oracle_m_dim(cusp().poly(), n), pinned[n]) << n;
  }
}

TEST(MBasis, FamilyMatchesOracle) {
  for (const auto &f : family())
    for (int n = 0; n <= 7; ++n)
      EXPECT_EQ(m_basis(f, n).dim(), fixtures::oracle_m_dim(f.poly(), n))
          << to_string(f.poly()) << " n=" << n;
}

TEST(BoundCheck, Examples) {
  const auto b3 = bound_check(cusp(), 3);
  EXPECT_TRUE(b3.passed());
  EXPECT_EQ(b3.bound_cardinality, 9);
  const auto b12 = bound_check(cusp(), 12);
  EXPECT_TRUE(b12.passed());
  EXPECT_EQ(b12.bound_cardinality, 36);
  EXPECT_TRUE(bound_check(cusp(), -1).passed());
}

TEST(IndependenceCheck, Examples) {
  const auto i3 = independence_check(cusp(), 3);
  EXPECT_TRUE(i3.passed());
  EXPECT_EQ(i3.rank, 1u);
  const auto i5 = independence_check(cusp(), 5);
  EXPECT_TRUE(i5.passed());
  EXPECT_EQ(i5.rank, 6u);
  EXPECT_THROW(independence_check(cusp(), 2), Error);
}

TEST(LeadingTermCheck, Examples) {
  const auto l = leading_term_check(cusp(), 5);
  EXPECT_TRUE(l.passed());
  EXPECT_EQ(l.lead00, (Exponent2{3, 0}));
  // shift identity for (1,1)
  const SparseRow r11 = phi_row(cusp(), 1, 1, 5);
  ASSERT_FALSE(r11.empty());
  EXPECT_EQ(r11.rbegin()->first, (Exponent2{4, 1}));
}

TEST(TorsionChecks, FamilyUpToTwelve) {
  for (const auto &f : family())
    for (int n = 0; n <= 12; ++n) {
      EXPECT_TRUE(bound_check(f, n).passed()) << to_string(f.poly()) << " n=" << n;
      if (n >= f.degree()) {
        EXPECT_TRUE(independence_check(f, n).passed()) << to_string(f.poly()) << " n=" << n;
        EXPECT_TRUE(leading_term_check(f, n).passed()) << to_string(f.poly()) << " n=" << n;
      }
    }
}

TEST(FiltrationAction, CuspSmallLevels) {
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      const auto r = filtration_action_check(cusp(), n, m);
      EXPECT_TRUE(r.passed()) << n << "," << m;
      EXPECT_GT(r.products_checked, 0u);
    }
}

TEST(FiltrationAction, EulerTimesFirstLevel) {
  const WeylOp euler = parse_weyl("2*x*dx + 3*y*dy");
  const auto target = detail::echelon_of(m_basis(cusp(), 3), 3);
  for (const auto &theta : m_basis(cusp(), 1).elements) {
    auto coords = d_coordinates(reduce_mod_origin(theta * euler), 3);
    ASSERT_TRUE(coords);
    EXPECT_TRUE(detail::in_row_space(target, *coords));
  }
}

TEST(GrowthTable, CuspSlope) {
  const auto table = growth_table(cusp(), 8);
  ASSERT_EQ(table.records.size(), 9u);
  ASSERT_TRUE(table.slope);
  EXPECT_EQ(*table.slope, 2);
  EXPECT_EQ(table.stable_from, 0);
  std::size_t prev = 0;
  for (const auto &rec : table.records) {
    EXPECT_LE(prev, rec.dim);
    EXPECT_LE(static_cast<long>(rec.dim), rec.bound_cardinality);
    prev = rec.dim;
  }
  const auto single = growth_table(cusp(), 0);
  EXPECT_EQ(single.records.size(), 1u);
  EXPECT_EQ(single.records[0].dim, 1u);
  EXPECT_FALSE(single.slope);
}

TEST(GrowthTable, FamilySlopeBoundedByDegree) {
  for (const auto &f : family()) {
    const auto table = growth_table(f, 12);
    ASSERT_TRUE(table.slope);
    EXPECT_LE(table.stable_from, f.degree()) << to_string(f.poly());
    EXPECT_LE(*table.slope, f.degree());
  }
}

TEST(GenerationProbe, Cusp) {
  const auto vacuous = generation_probe(cusp(), 0, 0);
  ASSERT_TRUE(vacuous.witness);
  EXPECT_EQ(*vacuous.witness, 0);
  const auto report = generation_probe(cusp(), 4, 3);
  EXPECT_EQ(report.attempts.size(), 5u);
  EXPECT_FALSE(report.witness);
}

// Why the probe above finds nothing: every reduction of M(n0) G_m has degree
// below n0 + m, so it never reaches the top of M(n0 + m).
TEST(GenerationProbe, ReductionsStayBelowTopDegree) {
  for (int m = 1; m <= 4; ++m) {
    const auto g = idealizer_filtered_basis(cusp(), m);
    for (int n0 = 0; n0 <= 3; ++n0)
      for (const auto &theta : m_basis(cusp(), n0).elements)
        for (const auto &e : g.elements) {
          const WeylOp r = reduce_mod_origin(theta * e);
          EXPECT_LT(r.order(), n0 + m) << "n0=" << n0 << " m=" << m;
        }
  }
}

TEST(PointModule, OriginMatchesGrowthTable) {
  const auto direct = growth_table(cusp(), 5);
  const auto at_origin = point_module_dims(cusp(), 0, 0, 5);
  ASSERT_EQ(direct.records.size(), at_origin.records.size());
  for (std::size_t k = 0; k < direct.records.size(); ++k)
    EXPECT_EQ(direct.records[k].dim, at_origin.records[k].dim);
}

TEST(PointModule, SmoothAndOffCurvePoints) {
  const auto smooth = point_module_dims(cusp(), 1, 1, 5);
  const auto translated = growth_table(CurvePoly(translate(cusp().poly(), 1, 1)), 5);
  for (std::size_t k = 0; k < smooth.records.size(); ++k)
    EXPECT_EQ(smooth.records[k].dim, translated.records[k].dim);
  // a smooth point: a single linear condition per level beyond the first
  EXPECT_EQ(smooth.records[0].dim, 1u);

  const auto off = point_module_dims(cusp(), 1, 0, 3);
  EXPECT_EQ(off.records[0].dim, 0u);
  EXPECT_EQ(point_module_basis(cusp(), make_rational(1, 2), 2, 2).dim(),
            m_basis(CurvePoly(translate(cusp().poly(), make_rational(1, 2), 2)), 2).dim());
}

TEST(RowHook, CorruptedRowBreaksChecks) {
  const auto opts = clear_origin_row();
  EXPECT_FALSE(independence_check(cusp(), 3, opts).passed());
  EXPECT_FALSE(leading_term_check(cusp(), 4, opts).passed());
  EXPECT_TRUE(bound_check(cusp(), 3).passed());
}
