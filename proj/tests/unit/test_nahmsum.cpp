#include <doctest.h>

#include "nahm/errors.hpp"
#include "nahm/liealg.hpp"
#include "nahm/nahmsum.hpp"
#include "oracles.hpp"

using namespace nahm;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

void check_against_box(const NahmDatum& d, int order, int box) {
  const PuiseuxSeries s = nahm_sum(d, order);
  const Rational top = s.known_top();
  CHECK(top == *s.leading_exponent() + order);
  const auto expected = oracle::restrict(oracle::nahm_box(d.A, d.B, d.C, box, top), top);
  CHECK(oracle::terms(s, top) == expected);
}

std::vector<long> integer_steps(const PuiseuxSeries& s, int count) {
  std::vector<long> out;
  const Rational lead = *s.leading_exponent();
  for (int i = 0; i < count; ++i) out.push_back(s.coefficient(lead + i).get_num().get_si());
  return out;
}

}  // namespace

TEST_CASE("rank one agrees with brute force") {
  for (const auto& [a, b, c] : std::vector<std::tuple<Rational, Rational, Rational>>{
           {R(2), R(0), R(-1, 60)}, {R(2), R(1), R(11, 60)}, {R(1), R(-1, 2), R(1, 24)},
           {R(1), R(0), R(-1, 48)}, {R(1, 2), R(-3, 4), R(0)}, {R(3), R(-2), R(1, 7)}}) {
    check_against_box(NahmDatum{MatrixQ{{a}}, {b}, c}, 12, 16);
  }
}

TEST_CASE("rank two and three agree with brute force") {
  check_against_box(NahmDatum{minimal_family_matrix(2), {R(0), R(0)}, R(0)}, 10, 12);
  check_against_box(NahmDatum{minimal_family_matrix(2), {R(-1), R(1, 2)}, R(0)}, 10, 12);
  check_against_box(NahmDatum{MatrixQ{{R(2), R(1)}, {R(1), R(2)}}, {R(-1, 3), R(-1, 2)}, R(1, 5)}, 8, 10);
  check_against_box(NahmDatum{coset_family_matrix(4), {R(-1, 2), R(-1), R(-1, 2)}, R(1, 24)}, 6, 8);
}

TEST_CASE("Rogers-Ramanujan expansions") {
  const PuiseuxSeries g = nahm_sum(NahmDatum{MatrixQ{{R(2)}}, {R(0)}, R(-1, 60)}, 20);
  CHECK(g.offset() == R(-1, 60));
  CHECK(integer_steps(g, 7) == std::vector<long>{1, 1, 1, 1, 2, 2, 3});
  const PuiseuxSeries h = nahm_sum(NahmDatum{MatrixQ{{R(2)}}, {R(1)}, R(11, 60)}, 20);
  CHECK(h.offset() == R(11, 60));
  CHECK(integer_steps(h, 7) == std::vector<long>{1, 0, 1, 1, 1, 1, 2});

  // 1/((q;q^5)(q^4;q^5)) by direct expansion of the product side.
  std::vector<long> prod(21, 0);
  prod[0] = 1;
  for (int part = 1; part <= 20; ++part) {
    if (part % 5 != 1 && part % 5 != 4) continue;
    for (int i = part; i <= 20; ++i) prod[i] += prod[i - part];
  }
  CHECK(integer_steps(g, 21) == prod);
}

TEST_CASE("A=1, B=-1/2 gives twice the product over (1+q^n)") {
  const PuiseuxSeries s = nahm_sum(NahmDatum{MatrixQ{{R(1)}}, {R(-1, 2)}, R(1, 24)}, 15);
  CHECK(s.offset() == R(1, 24));
  std::vector<long> distinct(16, 0);
  distinct[0] = 1;
  for (int part = 1; part <= 15; ++part) {
    for (int i = 15; i >= part; --i) distinct[i] += distinct[i - part];
  }
  std::vector<long> doubled;
  for (long v : distinct) doubled.push_back(2 * v);
  CHECK(integer_steps(s, 16) == doubled);
  CHECK(s.lattice_den() == 24);
}

TEST_CASE("offsets, truncation and the C shift") {
  const NahmDatum d{minimal_family_matrix(2), {R(0), R(0)}, R(0)};
  const PuiseuxSeries zero = nahm_sum(d, 0);
  CHECK(zero.order() == 0);
  CHECK(zero.offset() == 0);
  CHECK(zero.coefficients()[0] == 1);

  // A negative B can push the minimum away from n = 0.
  const NahmDatum neg{MatrixQ{{R(1)}}, {R(-2)}, R(0)};
  const PuiseuxSeries s = nahm_sum(neg, 4);
  // n.n/2 - 2n: n=0 -> 0, n=1 -> -3/2, n=2 -> -2, n=3 -> -3/2
  CHECK(*s.leading_exponent() == -2);
  CHECK(s.coefficient(R(-2)) == 1);

  const NahmDatum shifted{d.A, d.B, R(5, 7)};
  const PuiseuxSeries a = nahm_sum(d, 12);
  const PuiseuxSeries b = nahm_sum(shifted, 12);
  CHECK(agree(a.shifted(R(5, 7)), b));
  CHECK(b.offset() == R(5, 7));

  const PuiseuxSeries small = nahm_sum(d, 6);
  const PuiseuxSeries large = nahm_sum(d, 14);
  CHECK(agree_through(small, large, small.known_top()));
}

TEST_CASE("the coset example splits into characters") {
  const NahmDatum d{coset_family_matrix(4), {R(-1, 2), R(-1), R(-1, 2)}, R(1, 24)};
  const PuiseuxSeries s = nahm_sum(d, 20);
  CHECK(s.known_top() == *s.leading_exponent() + 20);
  for (const Rational& c : s.coefficients()) CHECK(c.get_den() == 1);
}

TEST_CASE("invalid data") {
  CHECK_THROWS_AS(nahm_sum(NahmDatum{MatrixQ{{R(1), R(2)}, {R(2), R(1)}}, {R(0), R(0)}, R(0)}, 5),
                  NotPositiveDefiniteError);
  CHECK_THROWS_AS(nahm_sum(NahmDatum{MatrixQ{{R(1), R(2)}, {R(0), R(1)}}, {R(0), R(0)}, R(0)}, 5), InputError);
  CHECK_THROWS_AS(nahm_sum(NahmDatum{MatrixQ{{R(1)}}, {R(0), R(0)}, R(0)}, 5), InputError);
  CHECK_THROWS_AS(nahm_sum(NahmDatum{MatrixQ{{R(1)}}, {R(0)}, R(0)}, -1), InputError);
  CHECK(min_eigenvalue_bound(MatrixQ{{R(2), R(0)}, {R(0), R(5)}}) == doctest::Approx(1.8));
}
