#include <doctest.h>

#include <random>

#include "nahm/errors.hpp"
#include "nahm/liealg.hpp"

using namespace nahm;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

const DynkinSpec A1{DynkinFamily::A, 1};

}  // namespace

TEST_CASE("cartan matrices") {
  CHECK(cartan_matrix(A1) == MatrixQ{{R(2)}});
  CHECK(cartan_matrix(DynkinSpec(DynkinFamily::T, 1)) == MatrixQ{{R(1)}});
  CHECK(cartan_matrix(DynkinSpec(DynkinFamily::T, 2)) == MatrixQ{{R(2), R(-1)}, {R(-1), R(1)}});
  CHECK(cartan_matrix(DynkinSpec(DynkinFamily::A, 3)) ==
        MatrixQ{{R(2), R(-1), R(0)}, {R(-1), R(2), R(-1)}, {R(0), R(-1), R(2)}});
  for (int r = 1; r <= 6; ++r) {
    const MatrixQ a = cartan_matrix(DynkinSpec(DynkinFamily::A, r));
    const MatrixQ t = cartan_matrix(DynkinSpec(DynkinFamily::T, r));
    int differences = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) differences += a(i, j) != t(i, j);
    }
    CHECK(differences == 1);
    CHECK(a(r - 1, r - 1) != t(r - 1, r - 1));
  }
  CHECK_THROWS_AS(DynkinSpec(DynkinFamily::A, 0), InputError);
  CHECK(DynkinSpec(DynkinFamily::A, 3).dual_coxeter() == 4);
  CHECK(DynkinSpec(DynkinFamily::T, 3).dual_coxeter() == 7);
}

TEST_CASE("exact inversion") {
  CHECK(invert(MatrixQ{{R(2)}}) == MatrixQ{{R(1, 2)}});
  const MatrixQ a3inv{{R(3, 4), R(1, 2), R(1, 4)}, {R(1, 2), R(1), R(1, 2)}, {R(1, 4), R(1, 2), R(3, 4)}};
  CHECK(invert(cartan_matrix(DynkinSpec(DynkinFamily::A, 3))) == a3inv);
  CHECK_THROWS_AS(invert(MatrixQ{{R(1), R(2)}, {R(2), R(4)}}), SingularMatrixError);

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  int tested = 0;
  while (tested < 20) {
    MatrixQ m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = make_rational(num(rng), den(rng));
    }
    if (determinant(m) == 0) continue;
    CHECK(m * invert(m) == MatrixQ::identity(4));
    CHECK(invert(m) * m == MatrixQ::identity(4));
    ++tested;
  }
}

TEST_CASE("kronecker products") {
  const MatrixQ k4{{R(3, 2), R(1), R(1, 2)}, {R(1), R(2), R(1)}, {R(1, 2), R(1), R(3, 2)}};
  CHECK(kronecker(MatrixQ{{R(2)}}, invert(cartan_matrix(DynkinSpec(DynkinFamily::A, 3)))) == k4);
  CHECK(kronecker(MatrixQ{{R(2)}}, MatrixQ{{R(1, 2)}}) == MatrixQ{{R(1)}});
  const MatrixQ m{{R(1), R(2)}, {R(3), R(4)}};
  const MatrixQ block = kronecker(MatrixQ::identity(2), m);
  CHECK(block == MatrixQ{{R(1), R(2), R(0), R(0)}, {R(3), R(4), R(0), R(0)}, {R(0), R(0), R(1), R(2)},
                         {R(0), R(0), R(3), R(4)}});
  const MatrixQ n{{R(2), R(-1)}, {R(-1), R(1)}};
  CHECK(invert(kronecker(m, n)) == kronecker(invert(m), invert(n)));
}

TEST_CASE("nahm matrices") {
  CHECK(nahm_matrix(A1, DynkinSpec(DynkinFamily::T, 1)) == MatrixQ{{R(2)}});
  CHECK(nahm_matrix(A1, A1) == MatrixQ{{R(1)}});
  CHECK(coset_family_matrix(4) ==
        MatrixQ{{R(3, 2), R(1), R(1, 2)}, {R(1), R(2), R(1)}, {R(1, 2), R(1), R(3, 2)}});
  for (int n = 1; n <= 8; ++n) {
    for (const MatrixQ& a : {minimal_family_matrix(n), coset_family_matrix(n + 1)}) {
      CHECK(a.is_symmetric());
      CHECK(is_positive_definite(a));
      for (const Rational& minor : leading_principal_minors(a)) CHECK(minor > 0);
    }
  }
  CHECK_FALSE(is_positive_definite(MatrixQ{{R(1), R(2)}, {R(2), R(1)}}));
  CHECK_FALSE(is_positive_definite(MatrixQ{{R(1), R(0)}, {R(1), R(1)}}));
}

TEST_CASE("effective central charge") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(effective_central_charge(A1, DynkinSpec(DynkinFamily::T, n)) == 1 - make_rational(3, 2 * n + 3));
    CHECK(effective_central_charge(A1, DynkinSpec(DynkinFamily::A, n)) == make_rational(2 * n, n + 3));
  }
  CHECK(effective_central_charge(A1, DynkinSpec(DynkinFamily::T, 1)) == R(2, 5));
  CHECK(effective_central_charge(A1, DynkinSpec(DynkinFamily::A, 3)) == 1);
  CHECK(effective_central_charge(A1, A1) == R(1, 2));
}
