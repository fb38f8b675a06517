#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "rdlie/alternating.hpp"
#include "rdlie/errors.hpp"
#include "rdlie/structures.hpp"
#include "rdlie/wedge.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace rdlie;
using rdlie::testing::vec;

namespace {

// Shuffles found by brute force over all permutations.
std::vector<Shuffle> shuffles_by_enumeration(std::size_t i, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<Shuffle> out;
  do {
    bool first_sorted = std::is_sorted(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
    bool second_sorted = std::is_sorted(p.begin() + static_cast<std::ptrdiff_t>(i), p.end());
    if (!first_sorted || !second_sorted) continue;
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) inversions += p[a] > p[b];
    }
    out.push_back({p, inversions % 2 ? -1 : 1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("(1,2)-shuffles") {
  auto s = shuffles(1, 2 + 1);
  REQUIRE(s.size() == 3);
  CHECK(s[0].image == std::vector<std::size_t>{1, 2, 3});
  CHECK(s[0].sign == 1);
  CHECK(s[1].image == std::vector<std::size_t>{2, 1, 3});
  CHECK(s[1].sign == -1);
  CHECK(s[2].image == std::vector<std::size_t>{3, 1, 2});
  CHECK(s[2].sign == 1);
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(shuffles(0, n).size() == 1);
    CHECK(shuffles(0, n)[0].sign == 1);
    CHECK(shuffles(n, n).size() == 1);
    CHECK(shuffles(n, n)[0].sign == 1);
  }
}

TEST_CASE("shuffles agree with brute-force enumeration") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      auto a = shuffles(i, n);
      auto b = shuffles_by_enumeration(i, n);
      auto key = [](Shuffle const& s) { return s.image; };
      std::sort(a.begin(), a.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
      std::sort(b.begin(), b.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].image == b[k].image);
        CHECK(a[k].sign == b[k].sign);
      }
    }
  }
}

TEST_CASE("property: shuffle count is binomial") {
  for (unsigned n = 0; n <= 8; ++n) {
    for (unsigned i = 0; i <= n; ++i) CHECK(Rational(static_cast<long>(shuffles(i, n).size())) == binomial(n, i));
  }
}

TEST_CASE("koszul signs") {
  std::vector<std::size_t> swap{1, 0};
  std::vector<int> even{0, 0}, odd{1, 1};
  CHECK(koszul_sign(swap, even) == 1);
  CHECK(koszul_sign(swap, odd) == -1);
  // x2 x3 x1 from x1 x2 x3 with degrees (1,1,0): x1 passes x2 (odd·odd) and x3 (odd·even).
  std::vector<std::size_t> rotate_left{1, 2, 0};
  std::vector<int> degs{1, 1, 0};
  CHECK(koszul_sign(rotate_left, degs) == -1);
  // x3 x1 x2: only x3 (even) moves past x1 and x2.
  std::vector<std::size_t> rotate_right{2, 0, 1};
  CHECK(koszul_sign(rotate_right, degs) == 1);
}

TEST_CASE("property: koszul sign is multiplicative along adjacent transpositions") {
  rdlie::testing::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + gen.index(5);
    std::vector<int> degs(n);
    for (auto& d : degs) d = static_cast<int>(gen.integer(-2, 2));
    std::vector<std::size_t> arr(n);
    std::iota(arr.begin(), arr.end(), 0);
    std::shuffle(arr.begin(), arr.end(), gen.engine());
    // bubble sort back to identity, collecting (−1)^{pq} for every adjacent swap
    auto work = arr;
    int sign = 1;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b + 1 < n - a; ++b) {
        if (work[b] > work[b + 1]) {
          if ((degs[work[b]] * degs[work[b + 1]]) % 2 != 0) sign = -sign;
          std::swap(work[b], work[b + 1]);
        }
      }
    }
    CHECK(koszul_sign(arr, degs) == sign);
  }
}

TEST_CASE("alternating evaluation") {
  AlternatingMap f(3, 2, 1);
  f.values(bit(0) | bit(1))[0] = Rational(1);
  std::vector<std::size_t> rev{1, 0};
  CHECK(f.on_basis(rev)[0] == Rational(-1));
  CHECK(f.evaluate({vec({1, 2, 0}), vec({3, 4, 0})})[0] == Rational(1 * 4 - 2 * 3));
}

TEST_CASE("property: evaluation on a repeated argument vanishes") {
  rdlie::testing::Gen gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t dim = 2 + gen.index(3), arity = 2 + gen.index(std::min<std::size_t>(dim, 4) - 1);
    auto f = gen.alternating(dim, arity, 2);
    std::vector<Vector> args;
    for (std::size_t k = 0; k < arity; ++k) args.push_back(gen.vector(dim));
    std::size_t a = gen.index(arity), b = gen.index(arity);
    if (a == b) b = (a + 1) % arity;
    args[b] = args[a];
    CHECK(is_zero(f.evaluate(args)));
  }
}

TEST_CASE("lift examples") {
  using namespace rdlie::testing;
  // trivial action lifts to zero
  CHECK(rho_block({RationalMatrix(2, 2)}, 1, 2).lift().is_zero());

  auto t = LieActTriple::validate(aff1(), aff1(), {aff1().ad_basis(0), aff1().ad_basis(1)});
  auto mu = t.mu_lift();
  // ((0,e1),(0,e2)) -> (0,[e1,e2]_h) = (0, e2)
  CHECK(mu.evaluate({vec({0, 0, 1, 0}), vec({0, 0, 0, 1})}) == vec({0, 0, 0, 1}));
  auto pi = t.pi_lift();
  CHECK(pi.evaluate({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})}) == vec({0, 1, 0, 0}));
  CHECK(pi.evaluate({vec({1, 0, 0, 0}), vec({0, 0, 1, 0})}) == vec({0, 0, 0, 0}));
}

TEST_CASE("lift by direct shuffle expansion matches the block embedding") {
  // Independent evaluation of κ̂ on arbitrary basis tuples of g⊕h through the
  // (k,l)-shuffle formula, compared to the stored lift.
  rdlie::testing::Gen gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t dg = 1 + gen.index(3), dh = 1 + gen.index(3);
    std::size_t k = gen.index(dg + 1), l = gen.index(dh + 1);
    if (k + l == 0) continue;
    Side side = gen.coin() ? Side::G : Side::H;
    BigradedMap b(dg, dh, k, l, side);
    auto coords = gen.vector(b.coordinate_count());
    b = BigradedMap::from_coordinates(dg, dh, k, l, side, coords);
    auto lifted = b.lift();
    std::size_t n = k + l, dim = dg + dh;
    std::vector<std::size_t> idx(n);
    for (int s = 0; s < 20; ++s) {
      for (auto& x : idx) x = gen.index(dim);
      Vector expect(dim);
      for (auto const& sh : shuffles(k, n)) {
        std::vector<std::size_t> gpart, hpart;
        bool ok = true;
        for (std::size_t p = 0; p < n; ++p) {
          std::size_t v = idx[sh.image[p] - 1];
          if (p < k) {
            if (v >= dg) ok = false;
            gpart.push_back(v);
          } else {
            if (v < dg) ok = false;
            hpart.push_back(v - dg);
          }
        }
        if (!ok) continue;
        WedgeMask gm, hm;
        int sg = sort_to_mask(gpart, gm), shh = sort_to_mask(hpart, hm);
        if (sg == 0 || shh == 0) continue;
        auto val = b.values(gm, hm);
        std::size_t off = side == Side::G ? 0 : dg;
        for (std::size_t t = 0; t < val.size(); ++t) {
          Rational w(sh.sign * sg * shh);
          expect[off + t] += w * val[t];
        }
      }
      CHECK(lifted.on_basis(idx) == expect);
    }
  }
}

TEST_CASE("project_components") {
  using namespace rdlie::testing;
  auto t = LieActTriple::validate(aff1(), aff1(), {aff1().ad_basis(0), aff1().ad_basis(1)});
  auto d = project_components(t.structure_lift(), 2, 2);
  CHECK(d.mixed.f0.coordinates().size() == 2);
  CHECK(AlternatingMap::from_coordinates(2, 2, 2, d.mixed.f0.coordinates()) == aff1().bracket_map());
  CHECK(d.mixed.parts[0] == rho_block(t.rho(), 2, 2));
  CHECK(AlternatingMap::from_coordinates(2, 2, 2, d.mixed.parts[1].coordinates()) == aff1().bracket_map());
  CHECK(d.pure.is_zero());

  CHECK(project_components(AlternatingMap(4, 2, 4), 2, 2).mixed.is_zero());

  AlternatingMap bad(4, 2, 4);
  bad.values(bit(2) | bit(3))[0] = Rational(1);  // h ∧ h -> g
  CHECK_THROWS_AS(project_components(bad, 2, 2), NotInM);
}

TEST_CASE("property: lift then project is the identity") {
  rdlie::testing::Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t dg = 1 + gen.index(3), dh = 1 + gen.index(3), n = 1 + gen.index(3);
    auto coords = gen.vector(MixedCochain::coordinate_count(dg, dh, n));
    auto c = MixedCochain::from_coordinates(dg, dh, n, coords);
    auto theta = gen.alternating(dg, n, dh);
    auto total = c.lift() + lift_to_sum(theta, dg, dh);
    auto back = project_components(total, dg, dh);
    CHECK(back.mixed == c);
    CHECK(back.pure == theta);
    CHECK(c.coordinates() == coords);
  }
}
