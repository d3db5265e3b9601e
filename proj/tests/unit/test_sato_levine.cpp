#include <catch_amalgamated.hpp>

#include <random>

#include "commcalc/errors.hpp"
#include "commcalc/sato_levine.hpp"

using namespace commcalc;

namespace {

// Laplace expansion along the first row.
Rational cofactorDet(const RationalMatrix& a) {
  if (a.empty()) return 1;
  if (a.size() == 1) return a[0][0];
  Rational det = 0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    RationalMatrix minor;
    for (std::size_t r = 1; r < a.size(); ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < a.size(); ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const Rational term = a[0][c] * cofactorDet(minor);
    det += c % 2 == 0 ? term : Rational(-term);
  }
  return det;
}

CrossingRecord twoComponentRecord(int x, const Integer& n, const Integer& l, const Integer& lambda, int sign = 1) {
  CrossingRecord rec;
  rec.component = x;
  rec.p = {0, 0};
  rec.q = {0, 0};
  const std::size_t other = x == 1 ? 1 : 0;
  rec.p[other] = n;
  rec.q[other] = l - n;
  rec.lambda = lambda;
  rec.sign = sign;
  return rec;
}

IntMatrix linking2(const Integer& l) { return {{0, l}, {l, 0}}; }

}  // namespace

TEST_CASE("rational parsing", "[sato_levine]") {
  REQUIRE(parseRational("2/3") == Rational(2, 3));
  REQUIRE(parseRational("-4/6") == Rational(-2, 3));
  REQUIRE(parseRational("5") == Rational(5));
  REQUIRE_THROWS_AS(parseRational("1/0"), ParseError);
  REQUIRE_THROWS_AS(parseRational("x"), ParseError);
}

TEST_CASE("generalized Sato-Levine invariant from traces", "[sato_levine]") {
  for (int n = 1; n <= 5; ++n) {
    HomotopyTrace t;
    t.linking = linking2(1);
    for (int r = 0; r < n; ++r) t.records.push_back(twoComponentRecord(1, 2, 1, 0));
    REQUIRE(betaTilde(t) == -2 * n);
  }
  HomotopyTrace zero;
  zero.linking = linking2(4);
  zero.records.push_back(twoComponentRecord(2, 0, 4, 3));
  REQUIRE(betaTilde(zero) == 0);

  HomotopyTrace single;
  single.linking = linking2(1);
  single.baseValue = Rational(1, 2);
  single.records.push_back(twoComponentRecord(1, 3, 1, 0));
  REQUIRE(betaTilde(single) == Rational(1, 2) - 6);

  HomotopyTrace three;
  three.m = 3;
  three.linking = linkingMatrix3(1, 1, 1);
  REQUIRE_THROWS_AS(betaTilde(three), DomainError);
}

TEST_CASE("trace value is an order-independent signed sum", "[sato_levine]") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> small(-4, 4);
  HomotopyTrace t;
  t.linking = linking2(3);
  for (int r = 0; r < 12; ++r) t.records.push_back(twoComponentRecord(1 + r % 2, small(rng), 3, small(rng), r % 3 ? 1 : -1));
  const Rational total = betaTilde(t);
  HomotopyTrace head = t;
  head.records.resize(5);
  HomotopyTrace tail = t;
  tail.records.erase(tail.records.begin(), tail.records.begin() + 5);
  REQUIRE(betaTilde(head) + betaTilde(tail) == total);
  std::shuffle(t.records.begin(), t.records.end(), rng);
  REQUIRE(betaTilde(t) == total);
}

TEST_CASE("trace files", "[sato_levine]") {
  auto t = parseTrace("# M_1 from H\na=1\nbase=0\n1 0,2 0,-1 5 1\n");
  REQUIRE(t.m == 2);
  REQUIRE(t.records.size() == 1);
  REQUIRE(t.records[0].p[1] == 2);
  REQUIRE(betaTilde(t) == -2);

  auto t3 = parseTrace("m=3\na=1,2,3\ns=2/3,3/2,6\n2 1,0,1 0,0,2 0 -1\n");
  REQUIRE(t3.linking == linkingMatrix3(1, 2, 3));
  REQUIRE(t3.s);
  REQUIRE((*t3.s)[1] == Rational(3, 2));
  REQUIRE(t3.records[0].sign == -1);

  REQUIRE_THROWS_AS(parseTrace("a=1\n1 0,1 0,1 0 1\n"), DomainError);
  REQUIRE_THROWS_AS(parseTrace("a=1\n1 0,1 0,0\n"), ParseError);
  REQUIRE_THROWS_AS(parseTrace("1 0,1 0,0 0 1\n"), ParseError);
  REQUIRE_THROWS_AS(parseTrace("m=3\na=1\n"), ParseError);
  REQUIRE_THROWS_AS(parseTrace("a=1\n3 0,1 0,0 0 1\n"), RankError);
}

TEST_CASE("determinant jump for two components", "[sato_levine]") {
  const std::vector<Rational> s{0, 0};
  for (int l = -4; l <= 5; ++l)
    for (int n = -4; n <= 5; ++n) {
      const auto rec = twoComponentRecord(1, n, l, 7);
      REQUIRE(betaJump(s, linking2(l), rec) == -n * (l - n));
      REQUIRE(betaJump(s, linking2(l), twoComponentRecord(2, n, l, -3)) == -n * (l - n));
    }
}

TEST_CASE("determinant jump against cofactor expansion", "[sato_levine]") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> small(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + trial % 3;
    IntMatrix a(m, std::vector<Integer>(m, Integer(0)));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) a[i][j] = a[j][i] = small(rng);
    std::vector<Rational> s;
    for (std::size_t i = 0; i < m; ++i) s.push_back(Rational(small(rng), den(rng)));
    CrossingRecord rec;
    rec.component = 1 + trial % static_cast<int>(m);
    const auto x = static_cast<std::size_t>(rec.component - 1);
    rec.p.assign(m, 0);
    rec.q.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == x) continue;
      rec.p[i] = small(rng);
      rec.q[i] = a[x][i] - rec.p[i];
    }
    rec.lambda = small(rng);
    RationalMatrix expected(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == x && j == x) expected[i][j] = Rational(rec.lambda);
        else if (i == x) expected[i][j] = Rational(rec.p[j]);
        else if (j == x) expected[i][j] = Rational(rec.q[i]);
        else expected[i][j] = i == j ? s[i] : Rational(a[i][j]);
      }
    REQUIRE(betaJump(s, a, rec) == cofactorDet(expected));
    REQUIRE(determinant(surgeryMatrix(s, a)) == cofactorDet(surgeryMatrix(s, a)));
  }
  CrossingRecord zero;
  zero.component = 2;
  zero.p = {0, 0, 0};
  zero.q = {0, 0, 0};
  REQUIRE(betaJump({1, 2, 3}, linkingMatrix3(0, 5, 0), zero) == 0);
}

TEST_CASE("invariance condition and the special vectors", "[sato_levine]") {
  auto two = invarianceCondition({0, 0}, linking2(3));
  REQUIRE(two == std::vector<bool>{true, true});
  REQUIRE(invarianceCondition({1, 0}, linking2(3)) == std::vector<bool>{true, false});

  const IntMatrix a = linkingMatrix3(1, 2, 3);
  REQUIRE(threeComponentSpecialS(a, 1) == std::vector<Rational>{Rational(2, 3), Rational(3, 2), Rational(6)});
  REQUIRE(threeComponentSpecialS(a, -1) == std::vector<Rational>{Rational(-2, 3), Rational(-3, 2), Rational(-6)});
  REQUIRE_THROWS_AS(threeComponentSpecialS(linkingMatrix3(1, 2, 0), 1), DomainError);

  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    Integer v[3];
    for (auto& x : v) {
      do x = entry(rng);
      while (x == 0);
    }
    const IntMatrix lk = linkingMatrix3(v[0], v[1], v[2]);
    const auto plus = threeComponentSpecialS(lk, 1);
    const auto minus = threeComponentSpecialS(lk, -1);
    REQUIRE(invarianceCondition(plus, lk) == std::vector<bool>(3, true));
    REQUIRE(invarianceCondition(minus, lk) == std::vector<bool>(3, true));
    REQUIRE(cofactorDet(surgeryMatrix(plus, lk)) == 0);
    REQUIRE(cofactorDet(surgeryMatrix(minus, lk)) != 0);
  }
}
