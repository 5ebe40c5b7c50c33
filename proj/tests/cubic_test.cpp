#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "pell/cubic.hpp"
#include "pell/error.hpp"

using namespace pell;

namespace {

// Integer shorthand for prime fields.
struct Prime {
  Field f;
  explicit Prime(uint64_t p) : f(Field::make(p)) {}
  Fq operator()(int64_t v) const { return f.from_int(v); }
  CubicPoint pt(int64_t x, int64_t y, int64_t z) const { return {(*this)(x), (*this)(y), (*this)(z)}; }
  ProjPoint3 cls(int64_t l, int64_t m, int64_t n) const { return {(*this)(l), (*this)(m), (*this)(n)}; }
};

std::set<Fq> as_set(const std::vector<Fq>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(CubicTest, ProductAndConjugate) {
  const Prime F(7);
  const PellCubic c(F.f, F(2));
  EXPECT_EQ(c.mul(c.identity(), F.pt(3, 5, 1)), F.pt(3, 5, 1));
  EXPECT_EQ(c.mul(F.pt(3, 5, 1), F.pt(3, 5, 1)), F.pt(1, 4, 3));
  EXPECT_EQ(c.mul(F.pt(1, 4, 3), F.pt(3, 5, 1)), F.pt(6, 2, 2));
  EXPECT_EQ(c.pow(F.pt(3, 5, 1), 3), F.pt(6, 2, 2));

  EXPECT_EQ(c.conjugate(c.identity()), c.identity());
  EXPECT_EQ(c.conjugate(F.pt(5, 4, 4)), F.pt(0, 5, 3));
  EXPECT_EQ(c.mul(F.pt(5, 4, 4), F.pt(0, 5, 3)), c.identity());
  EXPECT_EQ(c.conjugate(c.proj_identity()), c.proj_identity());
}

TEST(CubicTest, Norm) {
  const Prime F7(7);
  const PellCubic c7(F7.f, F7(2));
  EXPECT_EQ(c7.norm(F7(1), F7(0), F7(0)), F7(1));
  EXPECT_EQ(c7.norm(F7(3), F7(5), F7(1)), F7(2));
  EXPECT_TRUE(c7.contains(F7.pt(5, 4, 4)));
  EXPECT_TRUE(c7.contains(c7.identity()));
  EXPECT_FALSE(c7.contains(F7.pt(3, 5, 1)));

  const Prime F11(11);
  EXPECT_EQ(PellCubic(F11.f, F11(9)).norm(F11(7), F11(2), F11(1)), F11(8));

  const Prime F13(13);
  EXPECT_TRUE(PellCubic(F13.f, F13(5)).contains(F13.pt(3, 4, 3)));
}

TEST(CubicTest, OrderReports) {
  const Prime F7(7), F11(11), F13(13);
  const auto o7 = PellCubic(F7.f, F7(2)).order();
  EXPECT_EQ(o7.order, 57u);
  EXPECT_EQ(o7.structure_string(), "Cyclic(57)");
  const auto o13 = PellCubic(F13.f, F13(5)).order();
  EXPECT_EQ(o13.order, 144u);
  EXPECT_EQ(o13.structure_string(), "Product(12,12)");
  const auto o11 = PellCubic(F11.f, F11(9)).order();
  EXPECT_EQ(o11.order, 120u);
  EXPECT_EQ(o11.structure_string(), "Cyclic(120)");
  const Field f9 = Field::make(3, 2);
  const auto o9 = PellCubic(f9, f9.from_int(2)).order();
  EXPECT_EQ(o9.order, 81u);
  EXPECT_EQ(o9.structure_string(), "Unspecified");
}

TEST(CubicTest, ThreeRootExclusions) {
  const Prime F(13);
  const PellCubic c(F.f, F(5));
  EXPECT_EQ(c.root(), F(7));
  EXPECT_EQ(c.omega(), F(3));
  for (int64_t m = 0; m < 13; ++m) {
    const std::set<Fq> want{F(-7 * m + 3), F(-8 * m + 1), F(-11 * m + 9)};
    EXPECT_EQ(as_set(c.excluded_in_row(F(m))), want) << "m=" << m;
  }
  EXPECT_EQ(as_set(c.excluded_at_infinity()), (std::set<Fq>{F(6), F(5), F(2)}));
  EXPECT_EQ(c.excluded_classes().size(), 3u * 13u);
  EXPECT_EQ(c.enumerate_proj().size(), 144u);
}

TEST(CubicTest, OneRootExclusions) {
  const Prime F(11);
  const PellCubic c(F.f, F(9));
  EXPECT_EQ(c.root(), F(4));
  for (int64_t m = 0; m < 11; ++m) {
    std::set<Fq> want{F(-4 * m + 6)};
    if (m == 4) want.insert(F(5));  // [s^2 : s : 1]
    EXPECT_EQ(as_set(c.excluded_in_row(F(m))), want) << "m=" << m;
  }
  EXPECT_EQ(c.excluded_at_infinity(), std::vector<Fq>{F(7)});
  EXPECT_TRUE(c.is_excluded(F.cls(5, 4, 1)));
  EXPECT_TRUE(c.is_excluded(F.cls(7, 1, 0)));
  EXPECT_FALSE(c.is_excluded(F.cls(7, 2, 1)));
  EXPECT_FALSE(c.is_excluded(c.proj_identity()));
  EXPECT_EQ(c.excluded_classes().size(), 11u + 2u);
}

TEST(CubicTest, CharacteristicThreeExclusions) {
  const Field f9 = Field::make(3, 2);
  const PellCubic c(f9, f9.from_int(2));
  EXPECT_EQ(c.kind(), CubeKind::Char3);
  // [s^2:s:1] already lies on the excluded line: one class per row plus one at infinity.
  EXPECT_EQ(c.excluded_classes().size(), 9u + 1u);
  EXPECT_EQ(c.enumerate_proj().size(), 81u);
}

TEST(CubicTest, NonCubeHasNoExclusions) {
  const Prime F(7);
  const PellCubic c(F.f, F(2));
  EXPECT_FALSE(c.root().has_value());
  EXPECT_TRUE(c.excluded_classes().empty());
  EXPECT_EQ(c.enumerate_proj().size(), 57u);
}

TEST(CubicTest, Psi1) {
  const Prime F(7);
  const PellCubic c(F.f, F(2));
  EXPECT_EQ(c.psi1(F.cls(3, 5, 1)), F.pt(5, 4, 4));
  EXPECT_EQ(c.psi1(F.cls(4, 1, 0)), F.pt(2, 4, 1));
  EXPECT_EQ(c.psi1(c.proj_identity()), c.identity());
  EXPECT_EQ(c.psi(F.cls(3, 5, 1)), F.pt(5, 4, 4));
}

TEST(CubicTest, Psi2) {
  const Prime F(13);
  const PellCubic c(F.f, F(5));
  EXPECT_EQ(c.psi2(F.cls(9, 3, 1)), F.pt(3, 4, 3));
  EXPECT_EQ(c.psi2(F.cls(4, 1, 0)), F.pt(10, 4, 9));
  EXPECT_EQ(c.psi2(c.proj_identity()), c.identity());
  EXPECT_EQ(c.psi2_inv(F.pt(3, 4, 3)), F.cls(9, 3, 1));
  EXPECT_EQ(c.psi2_inv(F.pt(10, 4, 9)), F.cls(4, 1, 0));
  EXPECT_EQ(c.psi2_inv(c.identity()), c.proj_identity());
}

TEST(CubicTest, Psi2DependsOnChosenRoot) {
  const Prime F(13);
  for (int64_t s : {8, 11}) {
    const PellCubic c(F.f, F(5), F(s));
    EXPECT_EQ(c.root(), F(s));
    EXPECT_NE(c.psi2(F.cls(9, 3, 1)), F.pt(3, 4, 3)) << "s=" << s;
    // Still an isomorphism onto the same curve.
    EXPECT_TRUE(c.contains(c.psi2(F.cls(9, 3, 1))));
  }
  EXPECT_THROW(PellCubic(F.f, F(5), F(4)), Error);
}

TEST(CubicTest, Psi3) {
  const Prime F(11);
  const PellCubic c(F.f, F(9));
  EXPECT_EQ(c.psi3(F.cls(7, 2, 1)), F.pt(9, 1, 6));
  EXPECT_EQ(c.psi3(F.cls(3, 1, 0)), F.pt(4, 5, 0));
  EXPECT_EQ(c.psi3_inv(F.pt(9, 1, 6)), F.cls(7, 2, 1));
  EXPECT_EQ(c.psi3_inv(F.pt(4, 5, 0)), F.cls(3, 1, 0));
  EXPECT_EQ(c.psi3_inv(c.identity()), c.proj_identity());
}

TEST(CubicTest, Psi3Char3) {
  const Field f3 = Field::make(3);
  const PellCubic c3(f3, f3.one());
  EXPECT_EQ(c3.psi3_char3(c3.proj_identity()), c3.identity());
  const auto sols3 = c3.enumerate_solutions();
  EXPECT_EQ(std::set<CubicPoint>(sols3.begin(), sols3.end()).size(), 9u);

  const Field f9 = Field::make(3, 2);
  const PellCubic c9(f9, f9.from_int(2));
  const auto sols9 = c9.enumerate_solutions();
  EXPECT_EQ(std::set<CubicPoint>(sols9.begin(), sols9.end()).size(), 81u);
  for (const auto& s : sols9) EXPECT_TRUE(c9.contains(s));
}

TEST(CubicTest, WrongClassIsUnsupported) {
  const Prime F7(7), F11(11), F13(13);
  const PellCubic non_cube(F7.f, F7(2)), three(F13.f, F13(5)), one(F11.f, F11(9));
  EXPECT_THROW(non_cube.psi2(non_cube.proj_identity()), UnsupportedError);
  EXPECT_THROW(non_cube.psi3(non_cube.proj_identity()), UnsupportedError);
  EXPECT_THROW(three.psi1(three.proj_identity()), UnsupportedError);
  EXPECT_THROW(three.psi3_inv(three.identity()), UnsupportedError);
  EXPECT_THROW(one.psi2_inv(one.identity()), UnsupportedError);
  EXPECT_THROW(one.psi3_char3(one.proj_identity()), UnsupportedError);
}

TEST(CubicTest, ExcludedClassesAreRejected) {
  const Prime F(11);
  const PellCubic c(F.f, F(9));
  EXPECT_THROW(c.psi3(F.cls(5, 4, 1)), Error);
  EXPECT_THROW(c.decompress(F.cls(7, 1, 0)), Error);
  EXPECT_THROW(c.canonical(F(0), F(0), F(0)), Error);
  EXPECT_THROW(PellCubic(F.f, F(0)), Error);
}

TEST(CubicTest, Compression) {
  const Prime F13(13), F11(11), F7(7);
  const PellCubic three(F13.f, F13(5));
  EXPECT_EQ(three.compress(F13.pt(3, 4, 3)), F13.cls(9, 3, 1));
  EXPECT_EQ(three.decompress(F13.cls(9, 3, 1)), F13.pt(3, 4, 3));
  // Non-canonical input is scaled first.
  EXPECT_EQ(three.decompress(F13.cls(10, 12, 4)), F13.pt(3, 4, 3));

  const PellCubic one(F11.f, F11(9));
  EXPECT_EQ(one.compress(F11.pt(4, 5, 0)), F11.cls(3, 1, 0));
  EXPECT_EQ(one.compress(one.identity()), one.proj_identity());
  EXPECT_THROW(one.compress(F11.pt(1, 1, 1)), Error);

  const PellCubic non_cube(F7.f, F7(2));
  EXPECT_THROW(non_cube.compress(F7.pt(5, 4, 4)), UnsupportedError);
  EXPECT_EQ(non_cube.decompress(F7.cls(3, 5, 1)), F7.pt(5, 4, 4));

  const Field f9 = Field::make(3, 2);
  const PellCubic char3(f9, f9.from_int(2));
  EXPECT_THROW(char3.compress(char3.identity()), UnsupportedError);

  for (const PellCubic* c : {&three, &one}) {
    for (const auto& pt : c->enumerate_solutions()) {
      ASSERT_EQ(c->decompress(c->compress(pt)), pt);
    }
  }
}

TEST(CubicTest, Counts) {
  const Prime F7(7), F11(11), F13(13);
  for (const PellCubic& c :
       {PellCubic(F7.f, F7(2)), PellCubic(F13.f, F13(5)), PellCubic(F11.f, F11(9))}) {
    const auto sols = c.enumerate_solutions();
    EXPECT_EQ(sols.size(), c.order().order);
    EXPECT_EQ(std::set<CubicPoint>(sols.begin(), sols.end()).size(), sols.size());
    for (const auto& s : sols) EXPECT_TRUE(c.contains(s));
    const uint64_t q = c.field().q();
    EXPECT_EQ(c.enumerate_proj().size() + c.excluded_classes().size(), q * q + q + 1);
  }
}

TEST(CubicTest, ThreadedEnumerationMatches) {
  const Prime F13(13);
  const Field f16 = Field::make(2, 4), f25 = Field::make(5, 2);
  for (const PellCubic& c : {PellCubic(F13.f, F13(5)), PellCubic(F13.f, F13(2)),
                             PellCubic(f16, f16.element(3)), PellCubic(f25, f25.element(7))}) {
    const auto serial = c.enumerate_proj(1);
    for (unsigned t : {2u, 3u, 5u, 8u, 64u}) {
      EXPECT_EQ(c.enumerate_proj(t), serial) << "threads=" << t;
    }
    EXPECT_EQ(c.enumerate_solutions(4), c.enumerate_solutions(1));
  }
}

TEST(CubicTest, SamplerIsDeterministic) {
  const Prime F(11);
  const PellCubic c(F.f, F(9));
  CubicSampler a(c, 42), b(c, 42), other(c, 43);
  std::vector<CubicPoint> xs, ys, zs;
  for (int i = 0; i < 100; ++i) {
    xs.push_back(a.next());
    ys.push_back(b.next());
    zs.push_back(other.next());
  }
  EXPECT_EQ(xs, ys);
  EXPECT_NE(xs, zs);
  EXPECT_EQ(sample(c, 42), xs.front());
}

TEST(CubicTest, SamplesLieInSolutionSet) {
  const Prime F(11);
  const PellCubic c(F.f, F(9));
  const auto sols = c.enumerate_solutions();
  const std::set<CubicPoint> all(sols.begin(), sols.end());
  ASSERT_EQ(all.size(), 120u);
  CubicSampler sampler(c, 2024);
  std::set<CubicPoint> seen;
  for (int i = 0; i < 10000; ++i) {
    const CubicPoint pt = sampler.next();
    ASSERT_TRUE(all.count(pt)) << "sample " << i;
    seen.insert(pt);
  }
  // 10^4 draws from 120 points miss one with probability ~ 120 e^-83.
  EXPECT_EQ(seen.size(), 120u);
}

TEST(CubicTest, SampledClassesAreValid) {
  const Prime F13(13);
  const PellCubic c(F13.f, F13(5));
  CubicSampler sampler(c, 9);
  for (int i = 0; i < 2000; ++i) {
    const ProjPoint3 cl = sampler.next_class();
    ASSERT_TRUE(c.is_valid(cl));
    ASSERT_FALSE(c.is_excluded(cl));
  }
}

TEST(CubicTest, UniformBelow) {
  std::mt19937_64 rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const uint64_t v = uniform_below(rng, 7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_EQ(uniform_below(rng, 1), 0u);
}
