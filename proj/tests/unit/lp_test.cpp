#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "spannerforge/errors.hpp"
#include "spannerforge/lp.hpp"
#include "spannerforge/lp_text.hpp"
#include "support/vertex_enum.hpp"

using namespace spannerforge;
using namespace spannerforge::testing;

namespace {

SolverOptions embedded() {
    SolverOptions o;
    o.allow_external = false;
    return o;
}

LinearProgram random_lp(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nvars(1, 8), nrows(1, 4), coef(-4, 4), pick(0, 9);
    std::uniform_real_distribution<double> real(-3.0, 3.0);
    LinearProgram lp;
    const int n = nvars(rng);
    for (int j = 0; j < n; ++j) {
        const int kind = pick(rng);
        double lo = std::floor(real(rng));
        double hi = lo + (kind == 0 ? 0.0 : 1.0 + std::abs(std::floor(real(rng))));
        if (kind == 1) hi = lo + 0.5;
        lp.add_variable("v" + std::to_string(j), lo, hi);
    }
    const int m = nrows(rng);
    for (int i = 0; i < m; ++i) {
        std::vector<Term> t;
        for (int j = 0; j < n; ++j) {
            if (pick(rng) < 4) continue;
            const double a = pick(rng) < 8 ? coef(rng) : real(rng);
            t.push_back({j, a});
        }
        const int rel = pick(rng) % 3;
        const double rhs = pick(rng) < 7 ? std::floor(real(rng) * 2) : real(rng);
        lp.add_row(t, rel == 0 ? Relation::LessEqual : rel == 1 ? Relation::GreaterEqual : Relation::Equal, rhs);
    }
    if (pick(rng) < 7) {
        std::vector<Term> obj;
        for (int j = 0; j < n; ++j) obj.push_back({j, static_cast<double>(coef(rng))});
        lp.set_objective(pick(rng) < 5 ? Sense::Minimize : Sense::Maximize, obj);
    }
    return lp;
}

}  // namespace

TEST(Lp, InfeasibleBound) {
    LinearProgram lp;
    int x = lp.add_variable("x", 0, 1);
    lp.add_row({{x, 1}}, Relation::GreaterEqual, 2);
    EXPECT_EQ(solve(lp, embedded()).status, LPStatus::Infeasible);
    SolverOptions raw = embedded();
    raw.presolve = false;
    EXPECT_EQ(solve(lp, raw).status, LPStatus::Infeasible);
}

TEST(Lp, MinimizeToLowerRow) {
    LinearProgram lp;
    int x = lp.add_variable("x", 0, 1);
    lp.add_row({{x, 1}}, Relation::GreaterEqual, 0.25);
    lp.set_objective(Sense::Minimize, {{x, 1}});
    for (bool pre : {true, false}) {
        SolverOptions o = embedded();
        o.presolve = pre;
        LPSolution s = solve(lp, o);
        ASSERT_EQ(s.status, LPStatus::Optimal);
        EXPECT_NEAR(s.values[x], 0.25, 1e-9);
    }
}

TEST(Lp, Unbounded) {
    LinearProgram lp;
    int x = lp.add_variable("x", 0, kInfinity);
    int y = lp.add_variable("y", 0, kInfinity);
    lp.add_row({{x, 1}, {y, -1}}, Relation::LessEqual, 1);
    lp.set_objective(Sense::Maximize, {{x, 1}, {y, 1}});
    SolverOptions o = embedded();
    o.presolve = false;
    EXPECT_EQ(solve(lp, o).status, LPStatus::Unbounded);
}

TEST(Lp, FeasibilityStatusWithoutObjective) {
    LinearProgram lp;
    int x = lp.add_variable("x", 0, 1);
    int y = lp.add_variable("y", 0, 1);
    lp.add_row({{x, 1}, {y, 1}}, Relation::Equal, 1.5);
    LPSolution s = solve(lp, embedded());
    EXPECT_EQ(s.status, LPStatus::Feasible);
    EXPECT_LE(s.max_violation, 1e-7);
}

TEST(Lp, FreeVariablesAndEqualities) {
    LinearProgram lp;
    int x = lp.add_variable("x", -kInfinity, kInfinity);
    int y = lp.add_variable("y", -kInfinity, kInfinity);
    lp.add_row({{x, 1}, {y, 1}}, Relation::Equal, 3);
    lp.add_row({{x, 1}, {y, -1}}, Relation::Equal, 1);
    lp.set_objective(Sense::Minimize, {{x, 1}});
    for (bool pre : {true, false}) {
        SolverOptions o = embedded();
        o.presolve = pre;
        LPSolution s = solve(lp, o);
        ASSERT_EQ(s.status, LPStatus::Optimal);
        EXPECT_NEAR(s.values[x], 2.0, 1e-9);
        EXPECT_NEAR(s.values[y], 1.0, 1e-9);
    }
}

TEST(Lp, ModelValidation) {
    LinearProgram lp;
    lp.add_variable("x");
    EXPECT_THROW(lp.add_variable("x"), InputError);
    EXPECT_THROW(lp.add_variable("bad name"), InputError);
    EXPECT_THROW(lp.add_variable("y", 2, 1), InputError);
    EXPECT_THROW(lp.add_row({{5, 1.0}}, Relation::Equal, 0), InputError);
    int r = lp.add_row({{0, 1.0}, {0, 2.0}}, Relation::Equal, 0);
    ASSERT_EQ(lp.row(r).terms.size(), 1u);
    EXPECT_EQ(lp.row(r).terms[0].coef, 3.0);
}

TEST(Lp, AgreesWithVertexEnumerationOn500RandomPrograms) {
    std::mt19937_64 rng(2024);
    int feasible = 0, infeasible = 0;
    for (int k = 0; k < 500; ++k) {
        LinearProgram lp = random_lp(rng);
        const std::optional<double> truth = VertexEnumeration(lp).solve();
        for (bool pre : {true, false}) {
            SolverOptions o = embedded();
            o.presolve = pre;
            LPSolution s = solve(lp, o);
            if (!truth) {
                EXPECT_EQ(s.status, LPStatus::Infeasible) << "program " << k << "\n" << export_lp_text(lp);
                continue;
            }
            ASSERT_TRUE(s.has_point()) << "program " << k << "\n" << export_lp_text(lp);
            EXPECT_LE(max_violation(lp, s.values), 1e-7);
            if (lp.has_objective()) EXPECT_NEAR(s.objective, *truth, 1e-6) << "program " << k;
        }
        (truth ? feasible : infeasible)++;
    }
    // The generator must exercise both outcomes.
    EXPECT_GT(feasible, 100);
    EXPECT_GT(infeasible, 50);
}

TEST(Lp, DeterministicOnIdenticalInput) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        LinearProgram lp = random_lp(rng);
        LPSolution a = solve(lp, embedded()), b = solve(lp, embedded());
        EXPECT_EQ(a.status, b.status);
        EXPECT_EQ(a.values, b.values);
    }
}

TEST(Lp, DegenerateTransportationProblem) {
    // A 6x6 assignment polytope: massively degenerate, integral optimum.
    LinearProgram lp;
    const int n = 6;
    std::vector<Term> obj;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v = lp.add_variable("a" + std::to_string(i) + "_" + std::to_string(j), 0, 1);
            obj.push_back({v, static_cast<double>((i * 7 + j * 3) % 5)});
        }
    for (int i = 0; i < n; ++i) {
        std::vector<Term> r, c;
        for (int j = 0; j < n; ++j) {
            r.push_back({i * n + j, 1});
            c.push_back({j * n + i, 1});
        }
        lp.add_row(r, Relation::Equal, 1);
        lp.add_row(c, Relation::Equal, 1);
    }
    lp.set_objective(Sense::Minimize, obj);
    LPSolution s = solve(lp, embedded());
    ASSERT_EQ(s.status, LPStatus::Optimal);
    EXPECT_NEAR(s.objective, 0.0, 1e-9);
}

TEST(LpText, SingleVariableBoundLine) {
    LinearProgram lp;
    lp.add_variable("x", 0, 1);
    const std::string text = export_lp_text(lp);
    EXPECT_NE(text.find("0 <= x <= 1"), std::string::npos);
    EXPECT_EQ(parse_lp_text(text), lp);
}

TEST(LpText, RoundTripRandomPrograms) {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 200; ++k) {
        LinearProgram lp = random_lp(rng);
        LinearProgram back = parse_lp_text(export_lp_text(lp));
        EXPECT_EQ(back, lp) << export_lp_text(lp);
        EXPECT_EQ(export_lp_text(back), export_lp_text(lp));
    }
}

TEST(LpText, ParsesHandWrittenVariants) {
    LinearProgram lp = parse_lp_text(
        "\\ comment\nmaximize\n 2x + 3 y\nst\n c1: x + y <= 4\n -x+2y>=-1.5\nbounds\n x <= 3\n -inf <= y <= 10\n"
        " z free\nend\n");
    ASSERT_EQ(lp.num_variables(), 3);
    EXPECT_EQ(lp.variable(0).name, "x");
    EXPECT_EQ(lp.variable(0).hi, 3);
    EXPECT_EQ(lp.variable(1).lo, -kInfinity);
    EXPECT_EQ(lp.variable(2).lo, -kInfinity);
    EXPECT_EQ(lp.sense(), Sense::Maximize);
    ASSERT_EQ(lp.num_rows(), 2);
    EXPECT_EQ(lp.row(1).rhs, -1.5);
    EXPECT_EQ(lp.row(1).terms[0].coef, -1.0);
}

TEST(LpText, MalformedInputNamesLine) {
    try {
        parse_lp_text("Minimize\n obj: x\nSubject To\n c: x <= \nEnd\n");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
    }
    EXPECT_THROW(parse_lp_text("Subject To\nEnd\n"), InputError);
}

TEST(LpText, SolutionFileRoundTrip) {
    LinearProgram lp;
    int x = lp.add_variable("x", 0, 1);
    lp.add_row({{x, 1}}, Relation::GreaterEqual, 0.25);
    lp.set_objective(Sense::Minimize, {{x, 1}});
    LPSolution s = solve(lp, embedded());
    ExternalSolution e = parse_solution_text(format_solution_text(lp, s));
    EXPECT_EQ(e.status, LPStatus::Optimal);
    EXPECT_DOUBLE_EQ(e.values.at("x"), s.values[x]);
    EXPECT_THROW(parse_solution_text("maybe\n"), InputError);
}

TEST(LpExternal, SubprocessContract) {
    const auto dir = std::filesystem::temp_directory_path() / "spannerforge-ext-test";
    std::filesystem::create_directories(dir);
    const auto script = dir / "fake_solver.sh";
    {
        std::ofstream f(script);
        f << "#!/bin/sh\ngrep -q 'x >= 0.25' \"$1\" || exit 3\nprintf 'optimal\\nx 0.25\\n' > \"$2\"\n";
    }
    std::filesystem::permissions(script, std::filesystem::perms::owner_all);
    LinearProgram lp;
    int x = lp.add_variable("x", 0, 1);
    lp.add_row({{x, 1}}, Relation::GreaterEqual, 0.25);
    lp.set_objective(Sense::Minimize, {{x, 1}});
    setenv(kExternalSolverEnv, script.c_str(), 1);
    LPSolution s = solve(lp);
    unsetenv(kExternalSolverEnv);
    EXPECT_EQ(s.solver, "external");
    EXPECT_EQ(s.status, LPStatus::Optimal);
    EXPECT_DOUBLE_EQ(s.values[x], 0.25);
    std::filesystem::remove_all(dir);
}
