#include "riesz/json_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace riesz {
namespace {

using testing::q;

struct Env {
  SpacePtr e = make_grid("E", 2);
  SpacePtr ee = tensor_space(e, e);
  SolidNbhd half{e, UnitSpec::one(), q(1, 2)};
};

TEST(BruteForce, SmallEntryFindsWitness) {
  Env s;
  const Element m = basis(s.ee, Index{1, 1}, q(1, 100));
  const auto r = brute_force_dominator(m, s.half, s.half, q(1, 20));
  ASSERT_EQ(r.verdict.status, Status::pass);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(witness_valid(m, s.half, s.half, *r.witness));
}

TEST(BruteForce, UnitEntryExhaustsGrid) {
  Env s;
  const Element m = basis(s.ee, Index{1, 1});
  const auto r = brute_force_dominator(m, s.half, s.half, q(1, 20));
  ASSERT_EQ(r.verdict.status, Status::fail);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->kind, Certificate::Kind::oracle);
  EXPECT_EQ(*r.certificate->resolution, q(1, 20));
  EXPECT_GE(r.bound, 3);
  EXPECT_EQ(sol_membership(m, s.half, s.half).status, Status::fail);
}

TEST(BruteForce, ZeroIsMember) {
  Env s;
  const auto r = brute_force_dominator(zero(s.ee), s.half, s.half, q(1, 20));
  ASSERT_EQ(r.verdict.status, Status::pass);
  EXPECT_TRUE(r.witness->a.is_zero() && r.witness->b.is_zero());
}

TEST(BruteForce, Errors) {
  Env s;
  EXPECT_THROW(brute_force_dominator(basis(s.ee, Index{1, 1}), s.half, s.half, 0), Error);
  EXPECT_THROW(brute_force_dominator(basis(s.ee, Index{1, 1}, -1), s.half, s.half, q(1, 20)), Error);
  auto seq = make_seq("S", NormTag::l1);
  SolidNbhd n(seq, UnitSpec::geometric(), q(1, 2));
  EXPECT_THROW(brute_force_dominator(basis(tensor_space(seq, seq), Index{1, 1}), n, n, q(1, 20)), Error);
}

TEST(Claims, NamesRoundTrip) {
  for (auto c : all_claims) EXPECT_EQ(parse_claim(to_string(c)), c);
  EXPECT_THROW(parse_claim("no_such_claim"), Error);
}

AuditResult run(ClaimId id, std::size_t dim, AuditOptions opt = {}) {
  AuditClaim c;
  c.id = id;
  c.rows = c.cols = dim;
  return audit(c, opt);
}

TEST(Audit, WedgeLowerBoundVerified) {
  const auto r = run(ClaimId::wedge_lower_bound, 2);
  EXPECT_EQ(r.status, AuditStatus::verified_on_space);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.checked, 390625u);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Audit, WedgeEqualityFalsifiedWithRevalidatedWitness) {
  const auto r = run(ClaimId::wedge_equality, 2);
  ASSERT_EQ(r.status, AuditStatus::falsified);
  EXPECT_GT(r.violations, 0u);
  ASSERT_EQ(r.witnesses.size(), 1u);
  const auto& w = r.witnesses.front();
  ASSERT_EQ(w.args.size(), 4u);
  auto e = make_grid("E", 2);
  std::map<std::string, Element> arg;
  for (const auto& [name, vals] : w.args) arg.emplace(name, from_values(e, vals));
  const auto m = meet_of_elementary(arg.at("a"), arg.at("b"), arg.at("c"), arg.at("d"), tensor_space(e, e));
  EXPECT_FALSE(m.equal);
  EXPECT_EQ(w.lhs, (Matrix{{m.lhs.at({1, 1}), m.lhs.at({1, 2})}, {m.lhs.at({2, 1}), m.lhs.at({2, 2})}}));
  EXPECT_EQ(w.rhs, (Matrix{{m.rhs.at({1, 1}), m.rhs.at({1, 2})}, {m.rhs.at({2, 1}), m.rhs.at({2, 2})}}));
}

TEST(Audit, DichotomyVerified) {
  EXPECT_EQ(run(ClaimId::dichotomy, 2).status, AuditStatus::verified_on_space);
}

TEST(Audit, SmallClaimsVerified) {
  for (auto id : {ClaimId::mixed_upper_bound, ClaimId::cross_norm, ClaimId::disjointness_preservation,
                  ClaimId::refinement_inclusion})
    EXPECT_EQ(run(id, 2).status, AuditStatus::verified_on_space) << to_string(id);
}

TEST(Audit, CountsMatchEnumerationSize) {
  AuditClaim c;
  c.id = ClaimId::cross_norm;
  c.values = {0, 1, 2};
  c.rows = c.cols = 2;
  const auto r = audit(c);
  // two vectors of length 2 over a signed 5-value set {-2,-1,0,1,2}
  EXPECT_EQ(r.checked, 625u);
}

TEST(Audit, OverflowIsRefused) {
  AuditOptions opt;
  opt.cap = 1000;
  try {
    run(ClaimId::wedge_equality, 3, opt);
    FAIL() << "expected refusal";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::search_overflow);
  }
}

TEST(Audit, RandomizedIsDeterministic) {
  AuditOptions opt;
  opt.mode = AuditMode::randomized;
  opt.trials = 300;
  opt.seed = 42;
  for (auto id : all_claims) {
    const auto a = json_io::dump(json_io::encode(run(id, 3, opt)));
    const auto b = json_io::dump(json_io::encode(run(id, 3, opt)));
    EXPECT_EQ(a, b) << to_string(id);
  }
  opt.seed = 43;
  const auto r = run(ClaimId::wedge_lower_bound, 3, opt);
  EXPECT_EQ(r.status, AuditStatus::verified_on_space);
  EXPECT_EQ(r.trials, 300);
}

TEST(Audit, RandomizedFindsEqualityCounterexample) {
  AuditOptions opt;
  opt.mode = AuditMode::randomized;
  opt.trials = 2000;
  EXPECT_EQ(run(ClaimId::wedge_equality, 2, opt).status, AuditStatus::falsified);
}

// Agreement between the certified membership search and the grid scan on
// instances generated away from the membership boundary.

class OracleAgreement : public ::testing::TestWithParam<int> {};

TEST_P(OracleAgreement, CertifiedAnswersMatchGridScan) {
  Rng rng(900 + GetParam());
  int certified = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto e = make_grid("E", rng.between(1, 3)), f = make_grid("F", rng.between(1, 3));
    auto t = tensor_space(e, f);
    const Rational eps_u = Rational(rng.between(2, 8)) / 4, eps_v = Rational(rng.between(2, 8)) / 4;
    SolidNbhd u(e, UnitSpec::one(), eps_u), v(f, UnitSpec::one(), eps_v);
    Element::Coords c;
    const bool inside = rng.coin();
    for (const auto& k : all_indices(*t))
      if (rng.below(3) != 0) c[k] = inside ? eps_u * eps_v * rng.nonneg(1, 10) / 4 : eps_u * eps_v * (1 + rng.nonneg(2, 4));
    const Element z(t, std::move(c));
    const auto m = sol_membership(z, u, v);
    const auto o = brute_force_dominator(lat_abs(z), u, v, q(1, 20));
    if (m.status == Status::inconclusive) continue;
    ++certified;
    if (m.status == Status::pass) ASSERT_TRUE(witness_valid(z, u, v, *m.witness));
    if (o.verdict.status == Status::pass) ASSERT_TRUE(witness_valid(z, u, v, *o.witness));
    ASSERT_EQ(m.status, o.verdict.status) << json_io::encode(z).dump();
  }
  EXPECT_GT(certified, 15);
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleAgreement, ::testing::Range(0, 2));

}  // namespace
}  // namespace riesz
