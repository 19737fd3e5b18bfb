#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "towerlab/bigreal.hpp"
#include "towerlab/errors.hpp"
#include "towerlab/interval.hpp"
#include "towerlab/lambertw.hpp"

using namespace towerlab;

namespace {

// Independent oracle: bisection on w*e^w = x over a bracketing interval.
// Kept free of the Halley path it checks.
BigReal w0_bisect(const BigReal& x, long prec, long steps = 400) {
  BigReal lo = BigReal::of(0L, prec);
  BigReal hi = BigReal::of(1L, prec);
  while (hi * exp(hi) < x) hi = hi * BigReal::of(2L, prec);
  for (long i = 0; i < steps; ++i) {
    BigReal mid = (lo + hi) / BigReal::of(2L, prec);
    if (mid * exp(mid) < x) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / BigReal::of(2L, prec);
}

double urand(std::mt19937_64& rng, double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(rng);
}

}  // namespace

TEST_CASE("lambert_w0 anchor values") {
  const long prec = 256;
  BigReal tol = BigReal::parse("1e-70", prec);

  CHECK(lambert_w0(BigReal::of(0L, prec), tol) == 0L);

  BigReal e1 = exp(BigReal::of(1L, prec));
  BigReal w = lambert_w0(e1, tol);
  CHECK(abs(w - BigReal::of(1L, prec)) < BigReal::parse("1e-70", prec));

  // x = ln 2, against the bisection oracle (30+ digits).
  BigReal ln2 = log(BigReal::of(2L, prec));
  BigReal got = lambert_w0(ln2, tol);
  BigReal want = w0_bisect(ln2, prec);
  CHECK(abs(got - want) < BigReal::parse("1e-60", prec));
  // frozen oracle digits
  CHECK(abs(got - BigReal::parse("0.4444360910188604811868963306448808771677", prec)) <
        BigReal::parse("1e-38", prec));
}

TEST_CASE("lambert_w0 domain and convergence errors") {
  const long prec = 128;
  CHECK_THROWS_AS(lambert_w0(BigReal::of(-1L, prec)), DomainError);
  // Tolerance far below what the working precision can honor.
  CHECK_THROWS_AS(lambert_w0(BigReal::of(2L, prec), BigReal::parse("1e-200", prec)),
                  ConvergenceError);
}

TEST_CASE("lambert_w0 residual property over [0, 100]") {
  const long prec = 96;
  BigReal tol = BigReal::parse("1e-20", prec);
  std::mt19937_64 rng(12345);
  const int kSamples = 1000000;
  for (int i = 0; i < kSamples; ++i) {
    BigReal x = BigReal::of(urand(rng, 0.0, 100.0), prec);
    BigReal w = lambert_w0(x, tol);
    BigReal resid = abs(w * exp(w) - x);
    BigReal bound = tol * (x > 1L ? x : BigReal::of(1L, prec));
    REQUIRE(resid <= bound);
    REQUIRE(w.sgn() >= 0);
  }
  // spot set at full working tolerance
  BigReal tight = BigReal::parse("1e-70", 256);
  for (int i = 0; i < 2000; ++i) {
    BigReal x = BigReal::of(urand(rng, 0.0, 100.0), 256);
    BigReal w = lambert_w0(x, tight);
    REQUIRE(abs(w * exp(w) - x) <= tight * (x > 1L ? x : BigReal::of(1L, 256)));
  }
}

TEST_CASE("pow_unit_interval anchors") {
  const long prec = 256;
  auto half = Interval::of_rational(mpq_class(1, 2), prec);
  auto one = Interval::point(BigReal::of(1L, prec));
  Interval r = pow_unit_interval(half, one);
  CHECK(r.contains(BigReal::parse("0.5", prec)));
  CHECK(r.width() < BigReal::parse("1e-70", prec));

  // (1/2)^(1/6) = 0.89089871814...
  auto sixth = Interval::of_rational(mpq_class(1, 6), prec);
  Interval c = pow_unit_interval(half, sixth);
  CHECK(abs(c.mid() - BigReal::parse("0.8908987181403393047402262055905125079872", prec)) <
        BigReal::parse("1e-39", prec));

  // corner oracle: [0.2,0.3]^[0.5,2.0] -> [0.2^2 down, 0.3^0.5 up]
  Interval base(BigReal::parse("0.2", prec), BigReal::parse("0.3", prec));
  Interval expo(BigReal::parse("0.5", prec), BigReal::parse("2.0", prec));
  Interval p = pow_unit_interval(base, expo);
  BigReal corner_lo = pow(BigReal::parse("0.2", prec), BigReal::of(2L, prec), MPFR_RNDN);
  BigReal corner_hi = pow(BigReal::parse("0.3", prec), BigReal::parse("0.5", prec), MPFR_RNDN);
  for (const char* b : {"0.2", "0.225", "0.25", "0.275", "0.3"}) {
    for (const char* e : {"0.5", "0.875", "1.25", "1.625", "2.0"}) {
      BigReal v = pow(BigReal::parse(b, prec), BigReal::parse(e, prec), MPFR_RNDN);
      REQUIRE(p.contains(v));
    }
  }
  CHECK(abs(p.lo() - corner_lo) < BigReal::parse("1e-70", prec));
  CHECK(abs(p.hi() - corner_hi) < BigReal::parse("1e-70", prec));

  CHECK_THROWS_AS(pow_unit_interval(Interval::point(BigReal::of(1L, prec)), one), DomainError);
  CHECK_THROWS_AS(
      pow_unit_interval(half, Interval(BigReal::of(-1L, prec), BigReal::of(1L, prec))),
      DomainError);
}

TEST_CASE("interval containment fuzz over +, *, exp, ln, pow_unit_interval") {
  const long prec = 96;
  std::mt19937_64 rng(777);
  const int kSamples = 20000;
  for (int i = 0; i < kSamples; ++i) {
    double alo = urand(rng, 0.05, 0.9), ahi = alo + urand(rng, 0.0, 0.09);
    double blo = urand(rng, 0.05, 0.9), bhi = blo + urand(rng, 0.0, 0.09);
    if (ahi >= 0.999) ahi = 0.999;
    if (bhi >= 0.999) bhi = 0.999;
    Interval A(BigReal::of(alo, prec), BigReal::of(ahi, prec));
    Interval B(BigReal::of(blo, prec), BigReal::of(bhi, prec));
    double pa = urand(rng, alo, ahi), pb = urand(rng, blo, bhi);
    BigReal x = BigReal::of(pa, prec), y = BigReal::of(pb, prec);

    REQUIRE(add(A, B).contains(x + y));
    REQUIRE(mul(A, B).contains(x * y));
    REQUIRE(exp(A).contains(exp(x)));
    REQUIRE(log(A).contains(log(x)));
    REQUIRE(pow_unit_interval(A, B).contains(pow(x, y, MPFR_RNDN)));
  }
}

TEST_CASE("monotone precision refinement never widens") {
  std::mt19937_64 rng(999);
  for (int i = 0; i < 500; ++i) {
    double alo = urand(rng, 0.05, 0.9), ahi = alo + urand(rng, 0.0, 0.05);
    double blo = urand(rng, 0.1, 0.8), bhi = blo + urand(rng, 0.0, 0.05);
    auto eval = [&](long prec) {
      Interval A(BigReal::of(alo, prec), BigReal::of(ahi, prec));
      Interval B(BigReal::of(blo, prec), BigReal::of(bhi, prec));
      // exp(ln(A)*B) + A*B, a small expression tree
      return add(exp(mul(log(A), B)), mul(A, B));
    };
    Interval coarse = eval(96);
    Interval fine = eval(192);
    REQUIRE(coarse.contains(fine));
  }
}

TEST_CASE("interval construction and intersection guards") {
  const long prec = 128;
  CHECK_THROWS_AS(Interval(BigReal::of(2L, prec), BigReal::of(1L, prec)), DomainError);
  Interval a(BigReal::of(0L, prec), BigReal::of(1L, prec));
  Interval b(BigReal::of(2L, prec), BigReal::of(3L, prec));
  CHECK_THROWS_AS(intersect(a, b), DomainError);
  CHECK(a.strictly_below(b));
  CHECK_FALSE(b.strictly_below(a));
}

TEST_CASE("certified decimal digit extraction") {
  const long prec = 256;
  Interval tight(BigReal::parse("0.858857720084166067", prec),
                 BigReal::parse("0.858857720084166068", prec));
  auto cd = certified_decimal(tight, 40);
  REQUIRE(cd.has_value());
  CHECK(cd->integer_part == "0");
  CHECK(cd->fraction.substr(0, 17) == "85885772008416606");

  // carry straddle: width tiny but no digit certified
  Interval straddle(BigReal::parse("0.79999999", prec), BigReal::parse("0.80000001", prec));
  auto cs = certified_decimal(straddle, 40);
  REQUIRE(cs.has_value());
  CHECK(cs->fraction.empty());

  Interval wide(BigReal::parse("0.9", prec), BigReal::parse("1.1", prec));
  CHECK_FALSE(certified_decimal(wide, 10).has_value());
}

TEST_CASE("BigReal serialize round-trips exactly") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 200; ++i) {
    BigReal x = BigReal::of(urand(rng, -5.0, 5.0), 200);
    x = exp(x);  // stress non-trivial bits
    BigReal back = BigReal::parse(x.serialize(), 200);
    REQUIRE(back == x);
  }
}
