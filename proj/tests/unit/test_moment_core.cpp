#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "momentbody/moment_core.hpp"

using namespace momentbody;

namespace {

MomentVector arcsine_prefix_exact(std::size_t n) {
  std::vector<Rational> c;
  c.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    c.push_back(Rational(binomial(2 * k, k)) / pow_rational(Rational(4), static_cast<long>(k)));
  }
  return MomentVector::exact(c);
}

}  // namespace

TEST_CASE("hankel determinants: displayed cases and conventions") {
  const auto c = MomentVector::exact({make_rational(1, 2), make_rational(3, 8)});
  const HankelPair h2 = hankel(c, 2);
  CHECK(h2.lower.rational() == make_rational(1, 8));
  CHECK(h2.upper.rational() == make_rational(1, 8));
  const HankelPair h0 = hankel(c, 0);
  CHECK(h0.lower.rational() == Rational(1));
  CHECK(h0.upper.rational() == Rational(1));
  const HankelPair h1 = hankel(c, 1);
  CHECK(h1.lower.rational() == make_rational(1, 2));
  CHECK(h1.upper.rational() == make_rational(1, 2));
  CHECK_THROWS_AS(hankel(c, 3), InvalidArgument);

  const auto cf = MomentVector::floating({0.5, 0.375});
  CHECK(hankel(cf, 2).lower.floating() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(hankel(cf, 2).upper.floating() == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("classification trichotomy") {
  CHECK(classify(MomentVector::exact({make_rational(1, 2), make_rational(3, 8)})) ==
        Classification::interior);
  CHECK(classify(MomentVector::exact({make_rational(1, 2), make_rational(1, 2)})) ==
        Classification::boundary);
  CHECK(classify(MomentVector::floating({0.5, 0.6})) == Classification::outside);

  // Once a canonical coordinate hits {0,1} the continuation is forced: the
  // Bernoulli-type measure behind (1/2, 1/2) has third moment exactly 1/2.
  CHECK(classify(MomentVector::exact({make_rational(1, 2), make_rational(1, 2),
                                      make_rational(1, 2)})) == Classification::boundary);
  CHECK(classify(MomentVector::exact({make_rational(1, 2), make_rational(1, 2),
                                      make_rational(3, 10)})) == Classification::outside);

  // Float boundary tolerance: within 1e-12 of the edge is boundary.
  CHECK(classify(MomentVector::floating({0.5, 0.25 + 1e-14})) == Classification::boundary);
  CHECK(classify(MomentVector::floating({0.5, 0.25 - 1e-9})) == Classification::outside);
  CHECK(classify(MomentVector()) == Classification::interior);  // empty prefix
}

TEST_CASE("moment_range: empty, one and two moment prefixes") {
  const MomentRange r0 = moment_range(MomentVector::exact({}));
  CHECK(r0.c_minus.rational() == Rational(0));
  CHECK(r0.c_plus.rational() == Rational(1));
  CHECK(r0.width.rational() == Rational(1));

  const MomentRange r1 = moment_range(MomentVector::exact({make_rational(1, 2)}));
  CHECK(r1.c_minus.rational() == make_rational(1, 4));
  CHECK(r1.c_plus.rational() == make_rational(1, 2));

  const MomentRange r2 =
      moment_range(MomentVector::exact({make_rational(1, 2), make_rational(3, 8)}));
  CHECK(r2.c_minus.rational() == make_rational(9, 32));
  CHECK(r2.c_plus.rational() == make_rational(11, 32));
  CHECK(r2.width.rational() == make_rational(1, 16));

  const MomentRange rf = moment_range(MomentVector::floating({0.5, 0.375}));
  CHECK(rf.c_minus.floating() == doctest::Approx(9.0 / 32).epsilon(1e-14));
  CHECK(rf.c_plus.floating() == doctest::Approx(11.0 / 32).epsilon(1e-14));

  CHECK_THROWS_AS(moment_range(MomentVector::exact({make_rational(1, 2), make_rational(1, 2)})),
                  DomainError);
  CHECK_THROWS_AS(moment_range(MomentVector::floating({0.5, 0.6})), DomainError);
}

TEST_CASE("conversions: arcsine point and identity cases") {
  const auto c = MomentVector::exact(
      {make_rational(1, 2), make_rational(3, 8), make_rational(5, 16)});
  const CanonicalVector p = moments_to_canonical(c);
  REQUIRE(p.size() == 3);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(p.entry(i).rational() == make_rational(1, 2));

  const MomentVector back = canonical_to_moments(p);
  CHECK(back.exact_entries() == c.exact_entries());

  // k = 1 is the identity (the empty-prefix range is (0,1)).
  const CanonicalVector p1 =
      moments_to_canonical(MomentVector::exact({make_rational(2, 7)}));
  CHECK(p1.entry(1).rational() == make_rational(2, 7));

  const auto arc20 = arcsine_prefix_exact(20);
  const CanonicalVector parc = moments_to_canonical(arc20);
  for (std::size_t i = 1; i <= 20; ++i) CHECK(parc.entry(i).rational() == make_rational(1, 2));
}

TEST_CASE("boundary input to moments_to_canonical names the terminal index") {
  try {
    moments_to_canonical(MomentVector::exact({make_rational(1, 2), make_rational(1, 2)}));
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("p_2") != std::string::npos);
  }
}

TEST_CASE("non-interior range errors name the failing determinant") {
  try {
    moment_range(MomentVector::floating({0.5, 0.6}));  // c_2 above c^+: H-bar_2 < 0
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("H-bar_2") != std::string::npos);
  }
  try {
    moment_range(MomentVector::floating({0.5, 0.2}));  // c_2 below c^-: H-low_2 < 0
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("H-low_2") != std::string::npos);
  }
}

TEST_CASE("canonical vectors reject entries outside the open interval") {
  CHECK_THROWS_AS(CanonicalVector::floating({0.5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(CanonicalVector::floating({0.0}), InvalidArgument);
  CHECK_THROWS_AS(CanonicalVector::floating({1.2}), InvalidArgument);
  CHECK_THROWS_AS(CanonicalVector::exact({Rational(1)}), InvalidArgument);
}

TEST_CASE("round-trip is bit-exact in exact mode") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const auto p = testhelp::random_canonical_exact(rng, n, 101);
    const MomentVector c = canonical_to_moments(CanonicalVector::exact(p));
    const CanonicalVector q = moments_to_canonical(c);
    REQUIRE(q.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(q.exact_entries()[i] == p[i]);
  }
}

TEST_CASE("float round-trip on moment vectors stays within 1e-10 through n = 12") {
  // canonical_to_moments after moments_to_canonical reproduces the moment
  // vector: the forward map contracts exactly as much as the inverse
  // amplifies, so this composition is benign in floats.
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto p = testhelp::random_canonical_float(rng, n);
    const MomentVector c = canonical_to_moments(CanonicalVector::floating(p));
    const CanonicalVector q = moments_to_canonical(c);
    REQUIRE(q.size() == n);
    const MomentVector c2 = canonical_to_moments(q);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(c2.float_entries()[i] - c.float_entries()[i]) <= 1e-10);
    }
  }
}

TEST_CASE("float canonical coordinates degrade no worse than the 4^n conditioning") {
  // The inverse direction p -> c -> p is intrinsically ill-conditioned: the
  // admissible width shrinks at least like 4^-n, and already the rounding of
  // the true moments to doubles moves p_n by ~ eps / width. Away from the
  // edges the recovered coordinates stay within 1e-6 through n = 12.
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto p = testhelp::random_canonical_float(rng, n, 0.2, 0.8);
    const MomentVector c = canonical_to_moments(CanonicalVector::floating(p));
    const CanonicalVector q = moments_to_canonical(c);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(q.float_entries()[i] - p[i]) <= 1e-6);
    }
  }
}

TEST_CASE("three-way width agreement: interval, product, Hankel ratio") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto p = testhelp::random_canonical_exact(rng, n, 64);
    const CanonicalVector pv = CanonicalVector::exact(p);
    const MomentVector c = canonical_to_moments(pv);
    const Rational w1 = moment_range(c).width.rational();
    const Rational w2 = range_width_product(pv).rational();
    const Rational w3 = range_width_hankel(c).rational();
    CHECK(w1 == w2);
    CHECK(w2 == w3);
  }
  // float: relative agreement to 1e-10 (the Hankel-ratio route amplifies
  // roundoff by the inverse of the shrinking determinants, so keep n <= 8).
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto p = testhelp::random_canonical_float(rng, n, 0.25, 0.75);
    const CanonicalVector pv = CanonicalVector::floating(p);
    const MomentVector c = canonical_to_moments(pv);
    const double w1 = moment_range(c).width.floating();
    const double w2 = range_width_product(pv).floating();
    const double w3 = range_width_hankel(c).floating();
    CHECK(std::abs(w1 / w2 - 1.0) <= 1e-10);
    CHECK(std::abs(w3 / w2 - 1.0) <= 1e-10);
  }
}

TEST_CASE("range width closed forms at small n") {
  // r_2 = c_1 (1 - c_1) from the 1x1 determinants.
  const auto c1 = MomentVector::exact({make_rational(1, 3)});
  CHECK(range_width_hankel(c1).rational() == make_rational(2, 9));
  // all-1/2 canonical vector of length n has width 4^{-n}.
  for (std::size_t n : {1, 2, 5, 9}) {
    std::vector<Rational> p(n, make_rational(1, 2));
    CHECK(range_width_product(CanonicalVector::exact(p)).rational() ==
          pow_rational(make_rational(1, 4), static_cast<long>(n)));
  }
  CHECK(range_width_product(CanonicalVector::exact({make_rational(1, 2), make_rational(1, 2)}))
            .rational() == make_rational(1, 16));
}

TEST_CASE("reflection x -> 1-x preserves the admissible width") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto p = testhelp::random_canonical_exact(rng, n, 64);
    const MomentVector c = canonical_to_moments(CanonicalVector::exact(p));
    const auto reflected = testhelp::reflect_moments_exact(c.exact_entries());
    const MomentVector cr = MomentVector::exact(reflected);
    CHECK(classify(cr) == Classification::interior);
    CHECK(moment_range(cr).width.rational() == moment_range(c).width.rational());
  }
}

TEST_CASE("interior moments are monotone nonincreasing inside [0,1]") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto p = testhelp::random_canonical_float(rng, n, 0.02, 0.98);
    const auto c = detail::moments_from_canonical(p, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(c[i] >= 0.0);
      CHECK(c[i] <= 1.0);
      if (i > 0) CHECK(c[i] <= c[i - 1] + 1e-15);
    }
  }
}

TEST_CASE("appending the extremal moment lands on the boundary, beyond it outside") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto p = testhelp::random_canonical_exact(rng, n, 32);
    const MomentVector c = canonical_to_moments(CanonicalVector::exact(p));
    const MomentRange r = moment_range(c);
    std::vector<Rational> up = c.exact_entries();
    up.push_back(r.c_plus.rational());
    CHECK(classify(MomentVector::exact(up)) == Classification::boundary);
    up.back() = r.c_plus.rational() + moment_range(c).width.rational() / 7;
    CHECK(classify(MomentVector::exact(up)) == Classification::outside);
    std::vector<Rational> mid = c.exact_entries();
    mid.push_back((r.c_plus.rational() + r.c_minus.rational()) / 2);
    CHECK(classify(MomentVector::exact(mid)) == Classification::interior);
  }
}

TEST_CASE("difference-moment Hankel determinants factor through the transformed measure") {
  // With mu'(dx) = (x - x^2) dmu / (c_1 - c_2) one has
  // H-bar_{2m}(mu) = (c_1 - c_2)^m H-low_{2(m-1)}(mu'), exactly.
  const std::size_t top = 16;
  std::vector<Rational> c;
  for (std::size_t k = 1; k <= top; ++k) {
    c.push_back(Rational(binomial(2 * k, k)) / pow_rational(Rational(4), static_cast<long>(k)));
  }
  const Rational c1c2 = c[0] - c[1];
  std::vector<Rational> cp;
  for (std::size_t k = 1; k + 2 <= c.size(); ++k) cp.push_back((c[k] - c[k + 1]) / c1c2);
  for (std::size_t m = 1; 2 * m <= top; ++m) {
    const Rational up = detail::hankel_pair<Rational>(c, 2 * m).second;
    const Rational lop = detail::hankel_pair<Rational>(cp, 2 * (m - 1)).first;
    CHECK(up == Rational(pow_rational(c1c2, static_cast<long>(m)) * lop));
  }
}

TEST_CASE("kernel padding realizes the lower principal continuation") {
  // canonical (1/2) padded with zeros is the point mass at 1/2.
  const auto c = detail::moments_from_canonical<double>({0.5}, 3);
  CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("exact endpoints agree between the affine-Hankel and terminal-extension routes") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto p = testhelp::random_canonical_exact(rng, n, 48);
    const MomentVector c = canonical_to_moments(CanonicalVector::exact(p));
    // moment_range solves the two affine Hankel equations in the last moment;
    // appending a terminal 0/1 canonical entry must reach the same endpoints.
    const MomentRange r = moment_range(c);
    std::vector<Rational> lo_ext = p;
    lo_ext.push_back(Rational(0));
    std::vector<Rational> hi_ext = p;
    hi_ext.push_back(Rational(1));
    const Rational lo = detail::moments_from_canonical(lo_ext, n + 1).back();
    const Rational hi = detail::moments_from_canonical(hi_ext, n + 1).back();
    CHECK(r.c_minus.rational() == lo);
    CHECK(r.c_plus.rational() == hi);
  }
}

TEST_CASE("monotone entries and trichotomy on 10^4 randomized canonical points") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto p = testhelp::random_canonical_float(rng, n, 0.02, 0.98);
    const auto c = detail::moments_from_canonical(p, n);
    for (std::size_t i = 1; i < n; ++i) CHECK(c[i] <= c[i - 1] + 1e-15);
    CHECK(c[0] <= 1.0);
    CHECK(c[n - 1] >= 0.0);
    CHECK(detail::extract_canonical(c).cls == Classification::interior);
  }
}

TEST_CASE("mode accessors guard against the wrong representation") {
  const auto cf = MomentVector::floating({0.5});
  CHECK_THROWS_AS(cf.exact_entries(), ModeMismatch);
  const auto ce = MomentVector::exact({make_rational(1, 2)});
  CHECK_THROWS_AS(ce.float_entries(), ModeMismatch);
  CHECK(ce.to_doubles()[0] == 0.5);
}
