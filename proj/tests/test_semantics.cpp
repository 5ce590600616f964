#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "kobdd/constructions.hpp"
#include "kobdd/functions.hpp"
#include "kobdd/semantics.hpp"
#include "support.hpp"

namespace kobdd {
namespace {

using testing::Rng;

Program first_variable_program()
{
    Program p;
    p.n = 2;
    p.k = 1;
    p.order = VariableOrder::identity(2);
    p.levels.push_back({1, 1, 2, DeterministicMap{{1}}, DeterministicMap{{2}}});
    p.levels.push_back({2, 2, 2, DeterministicMap{{1, 2}}, DeterministicMap{{1, 2}}});
    p.accept = {2};
    return p;
}

Program one_qubit(UnitaryMatrix const& g0, UnitaryMatrix const& g1, std::vector<int> accept)
{
    Program p;
    p.semantics = Semantics::quantum;
    p.n = 1;
    p.k = 1;
    p.order = VariableOrder::identity(1);
    p.levels.push_back({1, 2, 2, g0, g1});
    p.accept = std::move(accept);
    p.epsilon = 0.5;
    return p;
}

TEST(EvalDet, FirstVariable)
{
    Program const p = first_variable_program();
    ASSERT_TRUE(validate(p).ok());
    EXPECT_TRUE(eval_det(p, Assignment::from_string("10")));
    EXPECT_TRUE(eval_det(p, Assignment::from_string("11")));
    EXPECT_FALSE(eval_det(p, Assignment::from_string("00")));
    EXPECT_FALSE(eval_det(p, Assignment::from_string("01")));
}

TEST(EvalDet, MxpjOnZeroInput)
{
    Program const p = build_mxpj_id_obdd(1, 2);
    EXPECT_FALSE(eval_det(p, Assignment(4)));
}

TEST(EvalNondet, DeadPathRejects)
{
    Program p = compile_to_nondet(first_variable_program());
    p.levels[1].t0 = Relation{};
    p.levels[1].t1 = Relation{};
    ASSERT_TRUE(validate(p).ok());
    EXPECT_FALSE(eval_nondet(p, Assignment::from_string("11")));
}

TEST(EvalNondet, OneAcceptingGuessSuffices)
{
    Program p;
    p.semantics = Semantics::nondeterministic;
    p.n = 2;
    p.k = 1;
    p.order = VariableOrder::identity(2);
    // x1 = 1 guesses both branches; branch 2 accepts iff x2 = 1.
    p.levels.push_back({1, 1, 2, Relation{{{1, 1}}}, Relation{{{1, 1}, {1, 2}}}});
    p.levels.push_back({2, 2, 2, Relation{{{1, 1}, {2, 1}}}, Relation{{{1, 1}, {2, 2}}}});
    p.accept = {2};
    ASSERT_TRUE(validate(p).ok());
    EXPECT_TRUE(eval_nondet(p, Assignment::from_string("11")));
    EXPECT_FALSE(eval_nondet(p, Assignment::from_string("10")));
    EXPECT_FALSE(eval_nondet(p, Assignment::from_string("01")));
}

TEST(AcceptProb, IdentityUnitaries)
{
    auto const id = UnitaryMatrix::identity(2);
    Program const p = one_qubit(id, id, {1});
    EXPECT_DOUBLE_EQ(accept_prob(p, Assignment::from_string("0")), 1.0);
    EXPECT_DOUBLE_EQ(accept_prob(p, Assignment::from_string("1")), 1.0);
}

TEST(AcceptProb, RotationByQuarterPi)
{
    double const c = std::cos(M_PI / 4);
    double const s = std::sin(M_PI / 4);
    UnitaryMatrix rot(2, 2);
    rot(0, 0) = c;
    rot(0, 1) = -s;
    rot(1, 0) = s;
    rot(1, 1) = c;
    Program const p = one_qubit(UnitaryMatrix::identity(2), rot, {2});
    ASSERT_TRUE(validate(p).ok());
    EXPECT_NEAR(accept_prob(p, Assignment::from_string("1")), 0.5, 1e-9);
    EXPECT_NEAR(accept_prob(p, Assignment::from_string("0")), 0.0, 1e-9);
}

TEST(AcceptProb, RejectsClassicalPrograms)
{
    EXPECT_THROW(accept_prob(first_variable_program(), Assignment(2)), std::invalid_argument);
}

TEST(Embedding, ClassicalEmbeddingsAgreeExhaustively)
{
    Rng rng(77);
    for (int rep = 0; rep < 12; ++rep) {
        int const n = testing::uniform(rng, 1, 10);
        Program const p = testing::random_program(rng, Semantics::deterministic, {n, testing::uniform(rng, 1, 2), 6});
        Program const nd = compile_to_nondet(p);
        Program const pr = compile_to_prob(p);
        ASSERT_TRUE(validate(nd).ok());
        ASSERT_TRUE(validate(pr).ok());
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
            Assignment const x = Assignment::from_index(static_cast<std::size_t>(n), i);
            bool const expected = eval_det(p, x);
            ASSERT_EQ(eval_nondet(nd, x), expected);
            double const prob = accept_prob(pr, x);
            ASSERT_EQ(prob, expected ? 1.0 : 0.0);
        }
    }
}

TEST(Embedding, ReversibleProgramsCompileExactly)
{
    Rng rng(78);
    for (int rep = 0; rep < 8; ++rep) {
        int const n = testing::uniform(rng, 1, 8);
        Program const p = testing::random_reversible_program(rng, {n, testing::uniform(rng, 1, 3), 8});
        Program const q = compile_to_quantum(p);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
            Assignment const x = Assignment::from_index(static_cast<std::size_t>(n), i);
            ASSERT_NEAR(accept_prob(q, x), eval_det(p, x) ? 1.0 : 0.0, 1e-9);
        }
    }
}

TEST(Properties, QuantumNormIsPreservedEveryStep)
{
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        int const n = testing::uniform(rng, 1, 12);
        Program const p = testing::random_program(rng, Semantics::quantum, {n, testing::uniform(rng, 1, 3), 16});
        Assignment const x = testing::random_assignment(rng, n);
        std::size_t steps = 0;
        final_amplitudes(p, x, [&](std::size_t, std::span<std::complex<double> const> v) {
            double norm = 0.0;
            for (auto z : v) { norm += std::norm(z); }
            ++steps;
            ASSERT_NEAR(norm, 1.0, 1e-9);
        });
        EXPECT_EQ(steps, p.levels.size());
    }
}

TEST(Properties, ProbabilisticMassIsConservedEveryStep)
{
    Rng rng(32);
    for (int rep = 0; rep < 20; ++rep) {
        int const n = testing::uniform(rng, 1, 12);
        Program const p =
            testing::random_program(rng, Semantics::probabilistic, {n, testing::uniform(rng, 1, 3), 16});
        Assignment const x = testing::random_assignment(rng, n);
        final_distribution(p, x, [&](std::size_t, std::span<double const> v) {
            double mass = 0.0;
            for (double m : v) {
                ASSERT_GE(m, 0.0);
                mass += m;
            }
            ASSERT_NEAR(mass, 1.0, 1e-9);
        });
    }
}

TEST(Properties, GlobalPhaseDoesNotChangeAcceptance)
{
    Rng rng(33);
    for (int rep = 0; rep < 20; ++rep) {
        int const n = testing::uniform(rng, 1, 8);
        Program const p = testing::random_program(rng, Semantics::quantum, {n, 2, 8});
        Program q = p;
        std::complex<double> const phase = std::polar(1.0, 2.0 * M_PI * testing::unit(rng));
        for (auto& lv : q.levels) {
            for (auto& z : std::get<UnitaryMatrix>(lv.t0).data) { z *= phase; }
            for (auto& z : std::get<UnitaryMatrix>(lv.t1).data) { z *= phase; }
        }
        Assignment const x = testing::random_assignment(rng, n);
        EXPECT_NEAR(accept_prob(p, x), accept_prob(q, x), 1e-9);
    }
}

TEST(BoundedError, ExactQuantumMxpj)
{
    Program const q = compile_to_quantum(build_mxpj_id_obdd(1, 2));
    EXPECT_TRUE(computes_bounded_error(q, make_function("mxpj:1,2"), 0.5));
}

TEST(BoundedError, ConstantAcceptIsNotParity)
{
    Program p;
    p.semantics = Semantics::probabilistic;
    p.n = 3;
    p.k = 1;
    p.order = VariableOrder::identity(3);
    for (int v = 1; v <= 3; ++v) {
        p.levels.push_back({v, 1, 1, StochasticMatrix::identity(1), StochasticMatrix::identity(1)});
    }
    p.accept = {1};
    p.epsilon = 0.1;
    ASSERT_TRUE(validate(p).ok());
    EXPECT_FALSE(computes_bounded_error(p, make_function("xor:3"), 0.1));
}

TEST(BoundedError, DeterministicAsProbabilistic)
{
    Program const det = build_mxpj_id_obdd(1, 2);
    Program const prob = compile_to_prob(det);
    FunctionOracle const own{det.n, [&](Assignment const& x) { return eval_det(det, x); }, "own"};
    EXPECT_TRUE(computes_bounded_error(prob, own, 0.5));
}

TEST(BoundedError, PreconditionsAreChecked)
{
    Program const q = compile_to_quantum(build_mxpj_id_obdd(1, 2));
    EXPECT_THROW(computes_bounded_error(q, make_function("mxpj:1,2"), 0.0), std::invalid_argument);
    EXPECT_THROW(computes_bounded_error(q, make_function("xor:5"), 0.5), std::invalid_argument);
}

} // namespace
} // namespace kobdd
