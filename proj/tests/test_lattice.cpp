#include "support.hpp"

using namespace jt;

namespace {

IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> f(-3, 3);
  for (int step = 0; step < 8; ++step) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    long c = f(rng);
    for (std::size_t i = 0; i < n; ++i) u(i, a) += c * u(i, b);
    if (step % 3 == 0) u.swap_columns(a, b);
  }
  return u;
}

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long range) {
  std::uniform_int_distribution<long> e(-range, range);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = e(rng);
  return m;
}

}  // namespace

TEST(Hnf, Examples) {
  auto id = IntegerMatrix::identity(3);
  EXPECT_EQ(hnf(id).h, id);

  auto r = hnf(imat({{2, 0}, {0, 1}, {1, 1}}, 2));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(lattice_basis(imat({{2, 0}, {0, 1}, {1, 1}}, 2)), IntegerMatrix::identity(2));
  EXPECT_EQ(imat({{2, 0}, {0, 1}, {1, 1}}, 2) * r.transform, r.h);

  auto b = imat({{1, 0, 0}, {0, 1, 1}}, 3);
  EXPECT_EQ(hnf(b).h, b);
}

TEST(Hnf, InvariantUnderUnimodularChange) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    std::size_t rows = 3 + i % 2, cols = 2 + i % 3;
    IntegerMatrix m = random_matrix(rng, rows, cols, 6);
    IntegerMatrix u = random_unimodular(rng, cols);
    ASSERT_EQ(determinant(u) * determinant(u), 1);
    auto h1 = hnf(m), h2 = hnf(m * u);
    EXPECT_EQ(h1.h, h2.h);
    EXPECT_EQ(m * h1.transform, h1.h);
    Integer dt = determinant(h1.transform);
    EXPECT_TRUE(dt == 1 || dt == -1);
  }
}

TEST(GramDet, Examples) {
  EXPECT_EQ(gram_det_squared(imat({{1, 0, 0}, {0, 1, 0}}, 3)).value, 1);
  EXPECT_EQ(gram_det_squared(imat({{1, 0, 0}, {0, 1, 1}}, 3)).value, 2);
  EXPECT_CODE(gram_det_squared(imat({{1, 0, 0}, {2, 0, 0}}, 3)), DependentColumns);
}

TEST(GramDet, BasisIndependentAndPositive) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    IntegerMatrix m = random_matrix(rng, 4, 2 + i % 2, 5);
    if (rank(m) != m.cols()) continue;
    auto d1 = gram_det_squared(m);
    EXPECT_GT(d1.value, 0);
    EXPECT_EQ(gram_det_squared(m * random_unimodular(rng, m.cols())), d1);
  }
}

TEST(Kernel, SaturationProperties) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    IntegerMatrix m = random_matrix(rng, 4, 2, 4);
    if (rank(m) != 2) continue;
    IntegerMatrix s = saturate(m);
    EXPECT_EQ(s.cols(), 2u);
    EXPECT_EQ(saturate(s), s);
    // every column of m lies in the saturated lattice, and the index is the covolume ratio
    Rational ratio = gram_det_squared(m).value / gram_det_squared(s).value;
    EXPECT_EQ(ratio.get_den(), 1);
    for (const auto& n : integer_kernel(s.transpose()).columns())
      for (const auto& c : m.columns()) {
        Integer dot = 0;
        for (std::size_t k = 0; k < c.size(); ++k) dot += c[k] * n[k];
        EXPECT_EQ(dot, 0);
      }
  }
  EXPECT_EQ(saturate(imat({{2, 0, 0}, {0, 2, 2}}, 3)), imat({{1, 0, 0}, {0, 1, 1}}, 3));
}

TEST(Lift, Examples) {
  auto f = cube_root_two();
  Alg t = th(f);
  auto L = lift(cubic_line(f)).basis;
  ASSERT_EQ(L.rows(), 3u);
  ASSERT_EQ(L.cols(), 2u);
  EXPECT_EQ(L.column(0), (AlgVector{q(1), q(0), t * t}));
  EXPECT_EQ(L.column(1), (AlgVector{q(0), q(1), t}));

  auto real_line = AffineSubspaceSpec::from_columns({q(0)}, {{q(1)}});
  EXPECT_EQ(to_alg(IntegerMatrix::identity(2)), lift(real_line).basis);

  auto diag = lift(rational_line(1, 1, 0)).basis;
  EXPECT_EQ(diag.column(0), (AlgVector{q(1), q(0), q(0)}));
  EXPECT_EQ(diag.column(1), (AlgVector{q(0), q(1), q(1)}));
}

TEST(Gamma, HandInstances) {
  auto f = cube_root_two();
  EXPECT_EQ(gamma_lattice(cubic_line(f)).rank(), 0u);

  Alg r = th(sqrt_two());
  auto sl = AffineSubspaceSpec::from_columns({q(0), q(0)}, {{q(1), r}});
  auto g = gamma_lattice(sl);
  EXPECT_EQ(g.rank(), 1u);
  EXPECT_EQ(g.basis, imat({{1, 0, 0}}, 3));

  auto gd = gamma_lattice(rational_line(1, 1, 0));
  EXPECT_EQ(gd.rank(), 2u);
  EXPECT_EQ(gd.basis, imat({{1, 0, 0}, {0, 1, 1}}, 3));
  EXPECT_EQ(gram_det_squared(gd.basis).value, 2);
}

TEST(Gamma, Classification) {
  auto f = cube_root_two();
  Alg r = th(sqrt_two());
  auto diag = rational_line(1, 1, 0);
  auto sl = AffineSubspaceSpec::from_columns({q(0), q(0)}, {{q(1), r}});
  EXPECT_TRUE(is_completely_rational(diag));
  EXPECT_FALSE(theorem4_applicable(diag));
  EXPECT_FALSE(is_completely_rational(sl));
  EXPECT_FALSE(theorem4_applicable(sl));
  EXPECT_FALSE(is_completely_rational(cubic_line(f)));
  EXPECT_TRUE(theorem4_applicable(cubic_line(f)));
}

TEST(Gamma, SaturatedAndInsideSpan) {
  std::mt19937_64 rng(17);
  auto f = cube_root_two();
  std::uniform_int_distribution<long> e(-4, 4);
  for (int i = 0; i < 60; ++i) {
    // mix rational and irrational directions so every rank can occur
    Alg b0 = i % 3 == 0 ? q(e(rng)) : q(e(rng)) + q(e(rng)) * th(f);
    Alg d0 = i % 2 == 0 ? q(e(rng), 3) : q(e(rng)) * th(f) + q(1);
    auto A = AffineSubspaceSpec::from_columns({q(0), b0, q(e(rng))}, {{q(1), d0, q(e(rng))}});
    auto g = gamma_lattice(A);
    if (g.rank() == 0) continue;
    EXPECT_EQ(saturate(g.basis), g.basis);
    auto L = lift(A).basis;
    for (const auto& c : g.basis.columns()) {
      AlgMatrix aug(L.rows(), L.cols() + 1);
      for (std::size_t r = 0; r < L.rows(); ++r) {
        for (std::size_t k = 0; k < L.cols(); ++k) aug(r, k) = L(r, k);
        aug(r, L.cols()) = Alg(Rational(c[r]));
      }
      EXPECT_EQ(rank(aug), L.cols());
    }
  }
}

TEST(Intersect, LinesAndPoints) {
  auto a = rational_line(1, 1, 0);
  auto b = rational_line(-1, 1, 2);
  auto p = intersect(a, b);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->dim(), 0u);
  EXPECT_EQ(p->base_point(), (AlgVector{q(1), q(1)}));
  EXPECT_FALSE(intersect(a, rational_line(1, 1, 3)).has_value());
  auto same = intersect(a, a);
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(same->dim(), 1u);
}

TEST(SubspaceSpec, Validation) {
  EXPECT_CODE(AffineSubspaceSpec::from_columns({q(0), q(0)}, {{q(1), q(1)}, {q(2), q(2)}}), DependentColumns);
  auto A = cubic_line(cube_root_two());
  auto B = AffineSubspaceSpec::from_json(A.to_json(), A.field());
  EXPECT_EQ(B.base_point(), A.base_point());
  EXPECT_EQ(B.directions(), A.directions());
}
