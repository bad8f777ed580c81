//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "tiermol/numerics/grad_check.hpp"
#include "tiermol/numerics/optim.hpp"
#include "tiermol/numerics/tensor.hpp"

using namespace tiermol;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64 &rng,
                     double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (double &v: m.data())
    v = u(rng);
  return m;
}

// Keeps relu inputs away from the kink at 0.
Matrix away_from_zero(Matrix m) {
  for (double &v: m.data())
    if (std::abs(v) < 0.1)
      v = v < 0 ? -0.1 - std::abs(v) : 0.1 + v;
  return m;
}

}  // namespace

TEST(Matrix, IdentityProduct) {
  const Matrix x { { 1, 2, 3 }, { 4, 5, 6 } };
  EXPECT_EQ(matmul(Matrix::identity(2), x), x);
}

TEST(Matrix, PathCoarsening) {
  const Matrix m { { 1, 0 }, { 1, 0 }, { 0, 1 }, { 0, 1 } };
  const Matrix a { { 0, 1, 0, 0 }, { 1, 0, 1, 0 }, { 0, 1, 0, 1 }, { 0, 0, 1, 0 } };
  const Matrix expected { { 2, 1 }, { 1, 2 } };
  EXPECT_EQ(matmul(matmul(transpose(m), a), m), expected);
}

TEST(Matrix, ShapeErrorNamesBothShapes) {
  try {
    matmul(Matrix(2, 3), Matrix(2, 3));
    FAIL();
  } catch (const ShapeError &e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2x3"), std::string::npos) << what;
  }
}

TEST(Matrix, AssociativityProperty) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_matrix(3, 4, rng);
    const Matrix b = random_matrix(4, 2, rng);
    const Matrix c = random_matrix(2, 5, rng);
    EXPECT_LE(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))), 1e-10);
  }
}

TEST(Tensor, ElementwiseExamples) {
  Tape tape;
  EXPECT_EQ(sigmoid(tape, Tensor::constant(Matrix(1, 1, 0.0))).item(), 0.5);
  const Tensor r = relu(tape, Tensor::constant(Matrix { { -3.0, 3.0 } }));
  EXPECT_EQ(r.value(), (Matrix { { 0.0, 3.0 } }));
  std::mt19937_64 rng(2);
  const Matrix a = random_matrix(3, 4, rng);
  EXPECT_EQ(transpose(tape, transpose(tape, Tensor::constant(a))).value(), a);
}

TEST(Tensor, GuardsKeepValuesFinite) {
  Tape tape;
  const Tensor x = Tensor::constant(Matrix { { -1000.0, 1000.0, 0.0 } });
  EXPECT_TRUE(all_finite(sigmoid(tape, x).value()));
  EXPECT_EQ(sigmoid(tape, x).value()(0, 0), 1.0 / (1.0 + std::exp(kSigmoidClamp)));
  EXPECT_EQ(log(tape, x).value()(0, 2), std::log(kLogFloor));
}

TEST(Tensor, ScalarBroadcastOnly) {
  Tape tape;
  const Tensor one = Tensor::constant(Matrix(1, 1, 1.0));
  const Tensor m = Tensor::constant(Matrix(2, 3, 2.0));
  EXPECT_EQ(sub(tape, one, m).value(), Matrix(2, 3, -1.0));
  EXPECT_THROW(add(tape, m, Tensor::constant(Matrix(3, 2))), ShapeError);
}

TEST(Backward, SumGivesOnes) {
  Tape tape;
  Tensor w = Tensor::parameter(Matrix { { 1, 2 }, { 3, 4 } });
  tape.backward(sum(tape, w));
  EXPECT_EQ(w.grad(), Matrix::ones(2, 2));
  EXPECT_TRUE(tape.empty());
}

TEST(Backward, SigmoidAtZero) {
  Tape tape;
  Tensor w = Tensor::parameter(Matrix(2, 2));
  tape.backward(sum(tape, sigmoid(tape, w)));
  EXPECT_EQ(w.grad(), Matrix(2, 2, 0.25));
}

TEST(Backward, ReluSubgradientZeroAtKink) {
  Tape tape;
  Tensor w = Tensor::parameter(Matrix { { -1.0, 0.0, 2.0 } });
  tape.backward(sum(tape, relu(tape, w)));
  EXPECT_EQ(w.grad(), (Matrix { { 0.0, 0.0, 1.0 } }));
}

TEST(Backward, ReuseAccumulates) {
  std::mt19937_64 rng(3);
  Tensor a = Tensor::parameter(random_matrix(3, 3, rng));
  Tape tape;
  tape.backward(sum(tape, matmul(tape, a, a)));
  // d sum(A A) / dA = 1 A^T + A^T 1.
  const Matrix ones = Matrix::ones(3, 3);
  const Matrix expected = matmul(ones, transpose(a.value())) + matmul(transpose(a.value()), ones);
  EXPECT_LE(max_abs_diff(a.grad(), expected), 1e-12);
}

TEST(Backward, Contracts) {
  Tape tape;
  Tensor w = Tensor::parameter(Matrix(2, 2, 1.0));
  Tensor y = scale(tape, w, 2.0);
  EXPECT_THROW(tape.backward(y), ContractError);
  Tape empty;
  EXPECT_THROW(empty.backward(Tensor::parameter(Matrix(1, 1))), ContractError);
}

TEST(Backward, ConstantsGetNoRecord) {
  Tape tape;
  add(tape, Tensor::constant(Matrix(2, 2)), Tensor::constant(Matrix(2, 2)));
  EXPECT_TRUE(tape.empty());
}

TEST(GradCheck, MatmulSumWithinTolerance) {
  std::mt19937_64 rng(4);
  Tensor a = Tensor::parameter(random_matrix(3, 4, rng));
  const Tensor b = Tensor::constant(random_matrix(4, 2, rng));
  EXPECT_LT(grad_check([&](Tape &t) { return sum(t, matmul(t, a, b)); }, a), 1e-5);
}

TEST(GradCheck, SumOfSquares) {
  Tensor x = Tensor::parameter(Matrix { { 1.0, 2.0 } });
  EXPECT_LT(grad_check([&](Tape &t) { return sum(t, mul(t, x, x)); }, x), 1e-7);
}

TEST(GradCheck, LinearIsNearExact) {
  Tensor x = Tensor::parameter(Matrix { { 0.3, -1.2, 0.7 } });
  EXPECT_LT(grad_check([&](Tape &t) { return sum(t, scale(t, x, 3.0)); }, x), 1e-9);
}

TEST(GradCheck, NanReportsInfinity) {
  Tensor x = Tensor::parameter(Matrix { { 1.0 } });
  const Tensor nan = Tensor::constant(Matrix(1, 1, std::numeric_limits<double>::quiet_NaN()));
  const double err = grad_check([&](Tape &t) { return sum(t, mul(t, x, nan)); }, x);
  EXPECT_TRUE(std::isinf(err));
}

TEST(GradCheck, RejectsBadStep) {
  Tensor x = Tensor::parameter(Matrix { { 1.0 } });
  auto f = [&](Tape &t) { return sum(t, x); };
  EXPECT_THROW(grad_check(f, x, 0.0), ContractError);
  EXPECT_THROW(grad_check(f, x, 0.1), ContractError);
}

// Every differentiable op on random inputs in [-2, 2].
TEST(GradCheck, EveryOpProperty) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = dim(rng);
    const std::size_t c = dim(rng);
    Tensor x = Tensor::parameter(away_from_zero(random_matrix(r, c, rng)));
    const Tensor y = Tensor::constant(random_matrix(r, c, rng));
    const Tensor w = Tensor::constant(random_matrix(c, 3, rng));
    const Tensor one = Tensor::constant(Matrix(1, 1, 1.0));
    const std::vector<std::pair<const char *, ScalarFn>> cases {
      { "matmul", [&](Tape &t) { return sum(t, matmul(t, x, w)); } },
      { "add", [&](Tape &t) { return sum(t, mul(t, add(t, x, y), y)); } },
      { "sub", [&](Tape &t) { return sum(t, mul(t, sub(t, y, x), y)); } },
      { "mul", [&](Tape &t) { return sum(t, mul(t, x, x)); } },
      { "scale", [&](Tape &t) { return sum(t, mul(t, scale(t, x, -1.5), y)); } },
      { "transpose", [&](Tape &t) { return sum(t, matmul(t, transpose(t, x), y)); } },
      { "sigmoid", [&](Tape &t) { return sum(t, mul(t, sigmoid(t, x), y)); } },
      { "relu", [&](Tape &t) { return sum(t, mul(t, relu(t, x), y)); } },
      { "exp", [&](Tape &t) { return sum(t, mul(t, exp(t, x), y)); } },
      { "log", [&](Tape &t) { return sum(t, log(t, exp(t, x))); } },
      { "clamp", [&](Tape &t) { return sum(t, mul(t, clamp(t, x, -1.05, 1.05), y)); } },
      { "mean", [&](Tape &t) { return mean(t, mul(t, x, y)); } },
      { "broadcast", [&](Tape &t) { return sum(t, mul(t, sub(t, one, x), y)); } },
      { "hstack", [&](Tape &t) {
         const std::vector<Tensor> parts { x, mul(t, x, y) };
         return sum(t, mul(t, hstack(t, parts), hstack(t, std::vector<Tensor> { y, y })));
       } },
    };
    for (const auto &[name, f]: cases)
      EXPECT_LT(grad_check(f, x), 1e-4) << name;
  }
}

TEST(Optim, SgdStep) {
  Tensor w = Tensor::parameter(Matrix(1, 1, 1.0));
  Sgd sgd({ w }, 0.1);
  Tape tape;
  tape.backward(sum(tape, w));
  sgd.step();
  EXPECT_DOUBLE_EQ(w.value()(0, 0), 0.9);
  EXPECT_EQ(w.grad(), Matrix(1, 1, 0.0));
}

TEST(Optim, ZeroGradientLeavesParameters) {
  Tensor w = Tensor::parameter(Matrix { { 1.0, -2.0 } });
  w.zero_grad();
  Adam adam({ w }, 0.01);
  adam.step();
  EXPECT_EQ(w.value(), (Matrix { { 1.0, -2.0 } }));
}

TEST(Optim, AdamFirstStepIsLearningRate) {
  Tensor w = Tensor::parameter(Matrix { { 1.0, 1.0 } });
  Adam adam({ w }, 0.01);
  Tape tape;
  tape.backward(sum(tape, mul(tape, w, Tensor::constant(Matrix { { 3.0, -0.002 } }))));
  adam.step();
  EXPECT_NEAR(w.value()(0, 0), 0.99, 1e-8);
  EXPECT_NEAR(w.value()(0, 1), 1.01, 1e-7);
  EXPECT_EQ(adam.first_moment(0).shape(), w.shape());
}

TEST(Optim, MissingGradientIsContractError) {
  Tensor w = Tensor::parameter(Matrix(1, 1));
  Sgd sgd({ w }, 0.1);
  EXPECT_THROW(sgd.step(), ContractError);
  EXPECT_THROW(Sgd({ w }, 0.0), ContractError);
}

TEST(Optim, DeterministicGivenSeed) {
  auto run = [] {
    std::mt19937_64 rng(9);
    Tensor w = Tensor::parameter(glorot_uniform(4, 3, rng));
    Adam adam({ w }, 0.05);
    for (int i = 0; i < 10; ++i) {
      Tape tape;
      tape.backward(sum(tape, sigmoid(tape, w)));
      adam.step();
    }
    return w.value();
  };
  EXPECT_EQ(run(), run());
}

TEST(Optim, GlorotRange) {
  std::mt19937_64 rng(10);
  const Matrix w = glorot_uniform(16, 8, rng);
  const double limit = std::sqrt(6.0 / 24.0);
  for (double v: w.data())
    EXPECT_LE(std::abs(v), limit);
}
