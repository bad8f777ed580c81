//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "tiermol/gnn/gcn.hpp"
#include "tiermol/models/model_input.hpp"
#include "tiermol/molgraph/smiles.hpp"
#include "tiermol/numerics/grad_check.hpp"

using namespace tiermol;

namespace {

void expect_near(const Matrix &a, const Matrix &b, double tol) {
  ASSERT_EQ(a.shape(), b.shape());
  for (std::size_t i = 0; i < a.data().size(); ++i)
    EXPECT_NEAR(a.data()[i], b.data()[i], tol) << "at flat index " << i;
}

Matrix permute_rows(const Matrix &m, const std::vector<int> &perm) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(perm[i]), j) = m(i, j);
  return out;
}

}  // namespace

TEST(NormalizeAdjacency, Examples) {
  EXPECT_EQ(normalize_adjacency(Matrix { { 0.0 } }), (Matrix { { 1.0 } }));
  expect_near(normalize_adjacency(Matrix { { 0, 1 }, { 1, 0 } }),
              Matrix { { 0.5, 0.5 }, { 0.5, 0.5 } }, 1e-15);
  // Path of three: degrees with self loops are 2, 3, 2.
  const Matrix p = normalize_adjacency(Matrix { { 0, 1, 0 }, { 1, 0, 1 }, { 0, 1, 0 } });
  EXPECT_NEAR(p(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(p(1, 1), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p(0, 1), 1.0 / std::sqrt(6.0), 1e-15);
  EXPECT_EQ(p(0, 2), 0.0);
}

TEST(NormalizeAdjacency, SymmetricForWeightedInput) {
  const Matrix a { { 0, 2.5, 0.5 }, { 2.5, 1.0, 0 }, { 0.5, 0, 0 } };
  const Matrix n = normalize_adjacency(a);
  EXPECT_EQ(n, transpose(n));
}

TEST(GcnLayer, IdentityWeight) {
  Tape tape;
  const GcnLayer layer { Tensor::constant(Matrix::identity(2)), Activation::None };
  const Tensor a = Tensor::constant(normalize_adjacency(Matrix { { 0, 1 }, { 1, 0 } }));
  const Tensor h = Tensor::constant(Matrix { { 1, -3 }, { 3, 1 } });
  expect_near(layer.forward(tape, a, h).value(), Matrix { { 2, -1 }, { 2, -1 } }, 1e-15);

  const GcnLayer relu_layer { Tensor::constant(Matrix::identity(2)), Activation::Relu };
  expect_near(relu_layer.forward(tape, a, h).value(), Matrix { { 2, 0 }, { 2, 0 } }, 1e-15);
}

TEST(GnnStack, SingleLayerIsLinear) {
  Tape tape;
  const GnnStack stack({ GcnLayer { Tensor::constant(Matrix::identity(1)), Activation::None } });
  const Tensor z = stack.forward(tape, Matrix { { 0.0 } }, Tensor::constant(Matrix { { -2.0 } }));
  EXPECT_EQ(z.value(), (Matrix { { -2.0 } }));
}

TEST(GnnStack, Contracts) {
  EXPECT_THROW(GnnStack(std::vector<GcnLayer> {}), ContractError);
  std::vector<GcnLayer> seven(7, GcnLayer { Tensor::constant(Matrix::identity(2)) });
  EXPECT_THROW(GnnStack(std::move(seven)), ContractError);
  EXPECT_THROW(GnnStack({ GcnLayer { Tensor::constant(Matrix(2, 3)) },
                          GcnLayer { Tensor::constant(Matrix(2, 3)) } }),
               ShapeError);
}

TEST(GnnStack, GlorotShapesAndActivations) {
  std::mt19937_64 rng(7);
  const GnnStack stack = GnnStack::glorot(16, 8, 3, rng);
  ASSERT_EQ(stack.depth(), 3u);
  EXPECT_EQ(stack.in_dim(), 16u);
  EXPECT_EQ(stack.out_dim(), 8u);
  EXPECT_EQ(stack.layers()[0].weight.shape(), (Shape { 16, 8 }));
  EXPECT_EQ(stack.layers()[0].activation, Activation::Relu);
  EXPECT_EQ(stack.layers()[2].activation, Activation::None);
  EXPECT_EQ(stack.parameters().size(), 3u);
}

TEST(GnnStack, PermutationEquivariant) {
  const ModelInput in = make_model_input(parse_smiles("CC(=O)Oc1ccccc1C(=O)O"));
  std::mt19937_64 rng(3);
  const GnnStack stack = GnnStack::glorot(in.features.cols(), 6, 3, rng);
  std::vector<int> perm(in.num_atoms());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const ModelInput p = permute_atoms(in, perm);

  Tape tape;
  const Matrix z = stack.forward(tape, in.adjacency, Tensor::constant(in.features)).value();
  const Matrix zp = stack.forward(tape, p.adjacency, Tensor::constant(p.features)).value();
  expect_near(zp, permute_rows(z, perm), 1e-12);
}

TEST(GnnStack, GradientCheck) {
  const ModelInput in = make_model_input(parse_smiles("CO"));
  std::mt19937_64 rng(11);
  const GnnStack stack = GnnStack::glorot(in.features.cols(), 4, 2, rng);
  const Tensor x = Tensor::constant(in.features);
  for (Tensor w: stack.parameters()) {
    const double err = grad_check(
        [&](Tape &t) {
          const Tensor z = stack.forward(t, in.adjacency, x);
          return sum(t, mul(t, z, z));
        },
        w, 1e-5);
    EXPECT_LT(err, 1e-4);
  }
}

TEST(VariationalGnnStack, ShapesAndHeads) {
  std::mt19937_64 rng(5);
  const VariationalGnnStack stack = VariationalGnnStack::glorot(16, 4, 3, rng);
  EXPECT_EQ(stack.depth(), 3u);
  EXPECT_EQ(stack.in_dim(), 16u);
  EXPECT_EQ(stack.out_dim(), 4u);
  EXPECT_EQ(stack.trunk().size(), 2u);
  EXPECT_EQ(stack.mean_stack().depth(), 3u);

  const ModelInput in = make_model_input(parse_smiles("CCO"));
  Tape tape;
  const GaussianParams g = stack.forward(tape, in.adjacency, Tensor::constant(in.features));
  EXPECT_EQ(g.mu.shape(), (Shape { 9, 4 }));
  EXPECT_EQ(g.sigma.shape(), (Shape { 9, 4 }));
  for (double s: g.sigma.value().data())
    EXPECT_GT(s, 0.0);
  const Matrix mean = stack.mean_stack().forward(tape, in.adjacency, Tensor::constant(in.features)).value();
  EXPECT_EQ(mean, g.mu.value());
}

TEST(VariationalGnnStack, ZeroLogSigmaHeadGivesUnitSigma) {
  std::mt19937_64 rng(5);
  const VariationalGnnStack base = VariationalGnnStack::glorot(16, 4, 2, rng);
  const VariationalGnnStack stack(base.trunk(), base.mu_head(),
                                  GcnLayer { Tensor::constant(Matrix(4, 4)), Activation::None });
  const ModelInput in = make_model_input(parse_smiles("CN"));
  Tape tape;
  const GaussianParams g = stack.forward(tape, in.adjacency, Tensor::constant(in.features));
  EXPECT_EQ(g.sigma.value(), Matrix::ones(7, 4));
}
