#include <doctest.h>

#include <cmath>
#include <random>

#include "fermag/fock.hpp"
#include "fermag/states.hpp"
#include "support.hpp"

using namespace fermag;

namespace {

CMatrix anticomm(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

DensityMatrix diag_state(std::initializer_list<double> p) {
  RVector v(static_cast<Eigen::Index>(p.size()));
  Eigen::Index i = 0;
  for (double x : p) v[i++] = x;
  const int m = static_cast<int>(std::log2(static_cast<double>(p.size())));
  return DensityMatrix(CMatrix(v.cast<cplx>().asDiagonal()), ModeCount(m));
}

}  // namespace

TEST_CASE("ladder operators: single mode action") {
  const CMatrix a = ladder_op(1, 2).matrix();
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 1) = 1.0;
  CHECK(max_abs(a - expected) == 0.0);
  CHECK(max_abs(ladder_op(1, 1).matrix() - expected.adjoint()) == 0.0);
}

TEST_CASE("ladder operators match the Kronecker-built oracle") {
  for (int sites = 1; sites <= 4; ++sites)
    for (int j = 1; j <= 2 * sites; ++j) CHECK(max_abs(ladder_op(sites, j).matrix() - oracle::ladder(sites, j)) == 0.0);
}

TEST_CASE("canonical anticommutation relations, m <= 4") {
  for (int m = 1; m <= 4; ++m) {
    const Eigen::Index d = Eigen::Index{1} << m;
    const CMatrix id = CMatrix::Identity(d, d);
    for (int i = 1; i <= 2 * m; ++i) {
      for (int j = 1; j <= 2 * m; ++j) {
        const CMatrix ac = anticomm(ladder_op(m, i).matrix(), ladder_op(m, j).matrix());
        // {a_n, a_n^dag} = 1, all else zero.
        const bool conjugate_pair = (i + 1) / 2 == (j + 1) / 2 && i != j;
        CHECK(max_abs(ac - (conjugate_pair ? id : CMatrix::Zero(d, d))) < 1e-13);
      }
    }
  }
}

TEST_CASE("ladder index out of range is a domain error") {
  CHECK_THROWS_AS(ladder_op(2, 0), std::domain_error);
  CHECK_THROWS_AS(ladder_op(2, 5), std::domain_error);
  CHECK_THROWS_AS(ModeCount(0), std::domain_error);
  CHECK_THROWS_AS(ModeCount(13), std::domain_error);
}

TEST_CASE("LadderIndexSet enumerates increasing indices") {
  const LadderIndexSet j{4, 1, 2};
  CHECK(j.size() == 3);
  CHECK(j.indices() == std::vector<int>{1, 2, 4});
  CHECK(j.mask() == 0b1011u);
  CHECK(j.contains(4));
  CHECK_FALSE(j.contains(3));
}

TEST_CASE("symmetric products: worked examples") {
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = -0.5;
  expected(1, 1) = 0.5;
  CHECK(max_abs(symmetric_product(1, LadderIndexSet{1, 2}).matrix() - expected) < 1e-15);

  const CMatrix id = CMatrix::Identity(4, 4);
  const CMatrix n1 = ladder_op(2, 1).matrix() * ladder_op(2, 2).matrix() - 0.5 * id;
  CHECK(max_abs(symmetric_product(2, LadderIndexSet{1, 2, 4}).matrix() - n1 * ladder_op(2, 4).matrix()) < 1e-15);
  CHECK(max_abs(symmetric_product(1, LadderIndexSet{1}).matrix() - ladder_op(1, 1).matrix()) == 0.0);
  CHECK_THROWS_AS(symmetric_product(2, LadderIndexSet{}), std::domain_error);
}

TEST_CASE("symmetric products agree with the oracle on every subset, m = 3") {
  const int sites = 3;
  for (Mask mask = 1; mask < (1u << 6); ++mask) {
    const LadderIndexSet j(mask);
    const CMatrix dense = symmetric_product(sites, j).matrix();
    CHECK(max_abs(dense - oracle::symmetric(sites, j.indices())) < 1e-14);
  }
}

TEST_CASE("odd symmetric products have vanishing expectation on even states") {
  const DensityMatrix rho = random_even_mixed(ModeCount(3), 11);
  for (Mask mask = 1; mask < (1u << 6); ++mask) {
    if (std::popcount(mask) % 2 == 0) continue;
    CHECK(std::abs(symmetric_expectation(rho.matrix(), 3, LadderIndexSet(mask))) < 1e-12);
  }
}

TEST_CASE("symmetric_expectation equals the dense trace") {
  const DensityMatrix rho = random_even_mixed(ModeCount(3), 5);
  for (Mask mask = 1; mask < (1u << 6); ++mask) {
    const cplx dense = (rho.matrix() * symmetric_product(3, LadderIndexSet(mask)).matrix()).trace();
    CHECK(std::abs(symmetric_expectation(rho.matrix(), 3, LadderIndexSet(mask)) - dense) < 1e-14);
  }
}

TEST_CASE("tensor and partial trace") {
  CHECK(max_abs(tensor(identity_operator(1), identity_operator(1)).matrix() - CMatrix::Identity(4, 4)) == 0.0);

  const DensityMatrix rho = random_even_mixed(ModeCount(2), 1);
  const DensityMatrix sigma = random_even_mixed(ModeCount(2), 2);
  const DensityMatrix joint = tensor(rho, sigma);
  CHECK(std::abs(joint.matrix().trace() - cplx(1.0)) < 1e-13);
  CHECK(max_abs(partial_trace_b(joint, ModeCount(2)).matrix() - rho.matrix()) < 1e-13);

  // Embedded A- and B-operators anticommute on the doubled register.
  const CMatrix a = tensor(ladder_op(1, 2), identity_operator(1)).matrix();
  const CMatrix b = ladder_op(2, 4).matrix();
  CHECK(max_abs(anticomm(a, b)) < 1e-15);
  CHECK(max_abs(a - ladder_op(2, 2).matrix()) == 0.0);

  // (|01> + |10>)/sqrt2 has a maximally mixed marginal.
  CVector v = CVector::Zero(4);
  v[1] = v[2] = 1.0 / std::sqrt(2.0);
  const CMatrix bell = v * v.adjoint();
  CHECK(max_abs(partial_trace_b(bell, 1) - 0.5 * CMatrix::Identity(2, 2)) < 1e-15);
  CHECK_THROWS_AS(partial_trace_b(CMatrix::Identity(8, 8), 2), std::domain_error);
}

TEST_CASE("matrix exponential") {
  CHECK(max_abs(matrix_exp(CMatrix(CMatrix::Zero(4, 4))) - CMatrix::Identity(4, 4)) < 1e-15);
  CMatrix x = CMatrix::Zero(2, 2);
  x(1, 1) = cplx(0.0, M_PI);
  CMatrix expected = CMatrix::Identity(2, 2);
  expected(1, 1) = -1.0;
  CHECK(max_abs(matrix_exp(x) - expected) < 1e-14);

  std::mt19937_64 rng(3);
  const CMatrix g = oracle::random_matrix(rng, 16, 16);
  const CMatrix anti = g - g.adjoint();
  const CMatrix u = matrix_exp(anti);
  CHECK(max_abs(u * u.adjoint() - CMatrix::Identity(16, 16)) < 1e-11);

  // General input against a long Taylor series of a small-norm matrix.
  const CMatrix small = 0.05 * oracle::random_matrix(rng, 8, 8);
  CMatrix series = CMatrix::Identity(8, 8), term = CMatrix::Identity(8, 8);
  for (int k = 1; k < 40; ++k) {
    term = term * small / static_cast<double>(k);
    series += term;
  }
  CHECK((matrix_exp(small) - series).norm() / series.norm() < 1e-13);
  // exp(A)exp(-A) = I for a larger general matrix (scaling and squaring path).
  const CMatrix big = 2.0 * oracle::random_matrix(rng, 8, 8);
  CHECK(max_abs(matrix_exp(big) * matrix_exp(CMatrix(-big)) - CMatrix::Identity(8, 8)) < 1e-8);

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(matrix_exp(bad), std::domain_error);
}

TEST_CASE("hermitian eigendecomposition") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  auto e = hermitian_eig(d);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(3.0));
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  e = hermitian_eig(x);
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));

  std::mt19937_64 rng(9);
  const CMatrix g = oracle::random_matrix(rng, 64, 64);
  const CMatrix h = g + g.adjoint();
  e = hermitian_eig(h);
  CHECK((e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint() - h).norm() < 1e-10);
  CHECK_THROWS_AS(hermitian_eig(g), std::domain_error);
}

TEST_CASE("state invariants are enforced") {
  CVector odd = CVector::Zero(4);
  odd[1] = 1.0;
  CHECK_THROWS_AS(PureState(odd, ModeCount(2)), std::domain_error);
  CVector unnormalized = CVector::Zero(4);
  unnormalized[0] = 2.0;
  CHECK_THROWS_AS(PureState(unnormalized, ModeCount(2)), std::domain_error);

  CHECK_THROWS_AS(DensityMatrix(CMatrix::Identity(2, 2), ModeCount(1)), InvariantViolation);  // trace 2
  CMatrix coherent = 0.5 * CMatrix::Ones(2, 2);  // mixes parity sectors
  CHECK_THROWS_AS(DensityMatrix(coherent, ModeCount(1)), InvariantViolation);
  CMatrix negative = CMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(negative, ModeCount(1)), InvariantViolation);
  CMatrix skew = CMatrix::Zero(4, 4);
  skew(0, 0) = skew(3, 3) = 0.5;
  skew(0, 3) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(skew, ModeCount(2)), InvariantViolation);

  CHECK_NOTHROW(DensityMatrix::maximally_mixed(ModeCount(3)));
  CHECK_NOTHROW(DensityMatrix::from_pure(random_even_pure(ModeCount(3), 2)));
}

TEST_CASE("trace distance") {
  const DensityMatrix rho = random_even_mixed(ModeCount(2), 4);
  CHECK(trace_distance(rho, rho) < 1e-14);
  const DensityMatrix zero = diag_state({1.0, 0.0});
  const DensityMatrix one = diag_state({0.0, 1.0});
  CHECK(trace_distance(zero, one) == doctest::Approx(2.0));
  CHECK(trace_distance(zero, DensityMatrix::maximally_mixed(ModeCount(1))) == doctest::Approx(1.0));
  const DensityMatrix sigma = random_even_mixed(ModeCount(2), 5);
  CHECK(trace_distance(rho, sigma) == doctest::Approx(trace_distance(sigma, rho)).epsilon(1e-12));
  CHECK_THROWS_AS(trace_distance(rho, zero), std::domain_error);
}

TEST_CASE("entropies") {
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::from_pure(random_even_pure(ModeCount(3), 1)))) < 1e-9);
  for (int m = 1; m <= 3; ++m) {
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(ModeCount(m))) == doctest::Approx(m * std::log(2.0)));
    CHECK(purity(DensityMatrix::maximally_mixed(ModeCount(m))) == doctest::Approx(std::pow(2.0, -m)));
  }
  CHECK(von_neumann_entropy(diag_state({0.5, 0.0, 0.0, 0.5})) == doctest::Approx(std::log(2.0)));

  const DensityMatrix rho = random_even_mixed(ModeCount(2), 7);
  CHECK(std::abs(relative_entropy(rho, rho)) < 1e-10);
  CHECK(relative_entropy(rho, DensityMatrix::maximally_mixed(ModeCount(2))) ==
        doctest::Approx(2 * std::log(2.0) - von_neumann_entropy(rho)).epsilon(1e-10));
  CHECK(std::isinf(relative_entropy(diag_state({0.5, 0.5}), diag_state({1.0, 0.0}))));
}

TEST_CASE("parity operator") {
  const CMatrix p = parity_operator(2).matrix();
  CHECK(p(0, 0) == cplx(1.0));
  CHECK(p(1, 1) == cplx(-1.0));
  CHECK(p(3, 3) == cplx(1.0));
}
