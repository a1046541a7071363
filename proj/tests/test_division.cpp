#include <gtest/gtest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

const std::vector<std::string> xy{"x", "y"};

SubidealBorderPrebasis<Q> square_basis() {
  OrderIdeal O(2, {Term({0, 0}), Term({1, 0}), Term({0, 1}), Term({1, 1})});
  std::vector<Polynomial<Q>> gi;
  for (const char* s : {"x^2 - x", "x^2*y - x*y", "x*y^2 - x*y", "y^2 - y"}) gi.push_back(parse_polynomial<Q>(s, xy));
  auto GI = classical_prebasis(O, gi, TermOrdering::degrevlex(2));
  return extend_border_basis_to_subideal(GI, {parse_polynomial<Q>("x + y", xy)}).canonical();
}

PointSet<Q> square() {
  return PointSet<Q>(xy, {{Q(0), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(0)}, {Q(1), Q(1)}});
}

Representation<Q> rep(const char* s) { return {parse_polynomial<Q>(s, xy)}; }

Q remainder_at(const DivisionResult<Q>& r, const FOrderIdeal<Q>& of, FTerm ft) {
  return r.remainder.at(*of.position(ft));
}

const FTerm f1{Term({0, 0}), 0}, xf{Term({1, 0}), 0}, yf{Term({0, 1}), 0};

}  // namespace

TEST(Divide, XSquared) {
  auto G = square_basis();
  ASSERT_EQ(G.fterm_form(0, xy), "x^2*f[1] - x*f[1]");
  auto r = divide(rep("x^2"), G);
  EXPECT_EQ(r.quotients[0], Polynomial<Q>::one(2));
  EXPECT_TRUE(r.quotients[1].is_zero() && r.quotients[2].is_zero());
  EXPECT_EQ(remainder_at(r, G.order_ideal(), xf), 1);
  EXPECT_EQ(remainder_at(r, G.order_ideal(), yf), 0);
  EXPECT_EQ(normal_remainder(rep("x^2"), G), parse_polynomial<Q>("x^2 + x*y", xy));
}

TEST(Divide, ElementOfOrderIdealIsItsOwnRemainder) {
  auto G = square_basis();
  auto r = divide(rep("1"), G);
  for (const auto& h : r.quotients) EXPECT_TRUE(h.is_zero());
  EXPECT_EQ(remainder_at(r, G.order_ideal(), f1), 1);
  EXPECT_EQ(r.steps, 0u);
}

TEST(Divide, XY) {
  auto G = square_basis();
  auto r = divide(rep("x*y"), G);
  EXPECT_TRUE(r.quotients[0].is_zero());
  EXPECT_EQ(r.quotients[1], Polynomial<Q>::one(2));
  EXPECT_TRUE(r.quotients[2].is_zero());
  const auto& of = G.order_ideal();
  EXPECT_EQ(remainder_at(r, of, xf), 1);
  EXPECT_EQ(remainder_at(r, of, yf), 1);
  EXPECT_EQ(remainder_at(r, of, f1), -1);
}

TEST(Divide, BasisElementLeavesNoRemainder) {
  EXPECT_TRUE(normal_remainder(rep("x^2 - x"), square_basis()).is_zero());
}

TEST(Divide, RejectsWrongArity) {
  auto G = square_basis();
  EXPECT_THROW(divide(Representation<Q>{}, G), ValidationError);
}

TEST(Divide, StorageOrderDoesNotChangeTheResult) {
  auto G = square_basis();
  const auto& b = G.border();
  std::vector<std::vector<Q>> rows;
  std::vector<Q> lead;
  std::vector<FTerm> rev(b.rbegin(), b.rend());
  for (std::size_t j = G.size(); j-- > 0;) {
    rows.push_back(G.coeff_row(j));
    lead.push_back(G.leading_coeff(j));
  }
  SubidealBorderPrebasis<Q> R(G.order_ideal(), G.ordering(), rev, rows, lead);
  auto a = divide(rep("x^3*y + 2*x*y^2"), G), c = divide(rep("x^3*y + 2*x*y^2"), R);
  EXPECT_EQ(a.remainder, c.remainder);
  for (std::size_t j = 0; j < G.size(); ++j) EXPECT_EQ(a.quotients[j], c.quotients[G.size() - 1 - j]);
}

TEST(SpecialGeneration, SquareWithLinearGeneratorIsABasis) {
  auto rep = is_subideal_border_basis_exact(square_basis(), square());
  EXPECT_TRUE(rep.is_basis);
  EXPECT_TRUE(rep.witness.empty());
}

TEST(SpecialGeneration, DependentOrderIdealYieldsWitness) {
  auto f = parse_polynomial<Q>("x + y", xy);
  FOrderIdeal<Q> of({f}, {f1, xf, yf, {Term({1, 1}), 0}});
  auto bd = border(of, TermOrdering::degrevlex(2));
  SubidealBorderPrebasis<Q> G(of, TermOrdering::degrevlex(2), bd, std::vector<std::vector<Q>>(bd.size(), std::vector<Q>(4)),
                              std::vector<Q>(bd.size(), Q(1)));
  auto rep = is_subideal_border_basis_exact(G, square());
  EXPECT_FALSE(rep.is_basis);
  ASSERT_FALSE(rep.witness.empty());
  EXPECT_FALSE(rep.witness_poly.is_zero());
  for (const auto& v : evaluate(rep.witness_poly, square())) EXPECT_EQ(v, 0);
}

TEST(SpecialGeneration, ClassicalCase) {
  auto r = bm_border_basis(square(), TermOrdering::degrevlex(2));
  EXPECT_TRUE(is_subideal_border_basis_exact(r.basis, square()).is_basis);
}

// ---- properties ---------------------------------------------------------------

namespace {

struct Instance {
  PointSet<Q> X;
  std::vector<Polynomial<Q>> F;
  SubidealBorderPrebasis<Q> G;
};

Instance random_instance(Rng& rng) {
  for (;;) {
    std::size_t n = 2 + rng() % 2, m = 1 + rng() % 2, s = 2 + rng() % 4;
    auto X = random_points(rng, n, s);
    std::vector<Polynomial<Q>> F;
    for (std::size_t i = 0; i < m; ++i) F.push_back(random_nonzero_poly(rng, n, 2, 2));
    auto r = subideal_bm(X, TermOrdering::degrevlex(n), F);
    bool ok = r.basis.size() > 0;
    for (std::size_t i = 0; i < m; ++i) ok = ok && !r.order_ideal.per_gen(i).terms().empty();
    if (ok) return {X, F, r.basis};
  }
}

Representation<Q> random_rep(Rng& rng, const FOrderIdeal<Q>& of) {
  for (;;) {
    Representation<Q> P;
    for (std::size_t i = 0; i < of.num_generators(); ++i) P.push_back(random_poly(rng, of.nvars(), 3, 3));
    if (std::any_of(P.begin(), P.end(), [](const auto& p) { return !p.is_zero(); }) &&
        representation_index(P, of) <= 5)
      return P;
  }
}

}  // namespace

TEST(DivisionProperties, TerminationMeasureShrinks) {
  Rng rng(31);
  for (int it = 0; it < 100; ++it) {
    auto inst = random_instance(rng);
    auto P = random_rep(rng, inst.G.order_ideal());
    DivisionOptions o;
    o.record_trace = true;
    auto r = divide(P, inst.G, o);
    ASSERT_EQ(r.trace.size(), r.steps);
    for (std::size_t k = 1; k < r.trace.size(); ++k) ASSERT_LT(r.trace[k], r.trace[k - 1]);
  }
}

TEST(DivisionProperties, ResultDoesNotDependOnTermChoice) {
  Rng rng(32);
  for (int it = 0; it < 100; ++it) {
    auto inst = random_instance(rng);
    auto P = random_rep(rng, inst.G.order_ideal());
    DivisionOptions o;
    o.choice = TermChoice::SigmaSmallest;
    ASSERT_TRUE(divide(P, inst.G) == divide(P, inst.G, o));
  }
}

TEST(DivisionProperties, RemainderAgreesOnThePoints) {
  Rng rng(33);
  for (int it = 0; it < 100; ++it) {
    auto inst = random_instance(rng);
    const auto& of = inst.G.order_ideal();
    auto P = random_rep(rng, of);
    ASSERT_EQ(evaluate(normal_remainder(P, inst.G), inst.X), evaluate(combine(P, of.generators()), inst.X));
  }
}

TEST(DivisionProperties, ProductsWithTheIdealOfPointsReduceToZero) {
  const std::vector<std::string> v{"x", "y", "z"};
  PointSet<Q> X(v, {{Q(1), Q(1), Q(1)}, {Q(0), Q(1), Q(1)}, {Q(1), Q(1), Q(0)}, {Q(1), Q(0), Q(1)}});
  auto sigma = TermOrdering::degrevlex(3);
  auto F = parse_polynomial_list<Q>("x^2 - 1; y - z", v);
  auto G = subideal_bm(X, sigma, F).basis;
  auto GI = bm_border_basis(X, sigma).basis;
  for (const auto& g : GI.polys())
    for (std::size_t i = 0; i < F.size(); ++i) {
      Representation<Q> P(F.size(), Polynomial<Q>(3));
      P[i] = g;
      ASSERT_TRUE(normal_remainder(P, G).is_zero()) << to_string(g, v) << " * f" << i + 1;
    }
}

TEST(DivisionProperties, FloatReconstructionIsClose) {
  Rng rng(34);
  for (int it = 0; it < 30; ++it) {
    auto inst = random_instance(rng);
    const auto& Gq = inst.G;
    std::vector<Polynomial<double>> F;
    for (const auto& f : Gq.order_ideal().generators()) F.push_back(to_float(f));
    std::vector<std::vector<double>> rows;
    std::vector<double> lead;
    for (std::size_t j = 0; j < Gq.size(); ++j) {
      std::vector<double> r;
      for (const auto& c : Gq.coeff_row(j)) r.push_back(c.get_d());
      rows.push_back(r);
      lead.push_back(Gq.leading_coeff(j).get_d());
    }
    FOrderIdeal<double> of(F, Gq.order_ideal().fterms());
    SubidealBorderPrebasis<double> G(of, Gq.ordering(), Gq.border(), rows, lead);
    auto Pq = random_rep(rng, Gq.order_ideal());
    Representation<double> P;
    for (const auto& p : Pq) P.push_back(to_float(p));
    auto d = reconstruct(divide(P, G), G) - combine(P, F);
    ASSERT_LE(d.max_abs_coeff(), 1e-9 * std::max(1.0, combine(P, F).max_abs_coeff()));
  }
}
