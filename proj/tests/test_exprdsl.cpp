#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "svfix/exprdsl.hpp"

using namespace svfix;
namespace dsl = svfix::expr;

namespace {

/// Independent reference: builds a random expression string bottom-up and
/// computes its value along the way, never touching the parser or the AST.
/// Construction keeps every subexpression inside the evaluator's domain.
struct GenExpr {
    std::string text;
    double value;
};

GenExpr gen_expr(std::mt19937_64& gen, const dsl::Env& env, int depth) {
    std::uniform_real_distribution<double> lit(-4.0, 4.0);
    auto pick = [&](int n) { return static_cast<int>(gen() % n); };
    if (depth <= 0 || pick(5) == 0) {
        if (!env.empty() && pick(2) == 0) {
            auto it = env.begin();
            std::advance(it, pick(static_cast<int>(env.size())));
            return {it->first, it->second};
        }
        const double v = lit(gen);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        std::string s(buf);
        if (v < 0) s = "(" + s + ")";
        return {s, v};
    }
    switch (pick(9)) {
        case 0: {
            auto a = gen_expr(gen, env, depth - 1);
            auto b = gen_expr(gen, env, depth - 1);
            return {"(" + a.text + " + " + b.text + ")", a.value + b.value};
        }
        case 1: {
            auto a = gen_expr(gen, env, depth - 1);
            auto b = gen_expr(gen, env, depth - 1);
            return {"(" + a.text + " - " + b.text + ")", a.value - b.value};
        }
        case 2: {
            auto a = gen_expr(gen, env, depth - 1);
            auto b = gen_expr(gen, env, depth - 1);
            return {"(" + a.text + ")*(" + b.text + ")", a.value * b.value};
        }
        case 3: {
            auto a = gen_expr(gen, env, depth - 1);
            auto b = gen_expr(gen, env, depth - 1);
            // keep the divisor away from zero
            const std::string div = "(abs(" + b.text + ") + 0.5)";
            return {"(" + a.text + ")/" + div, a.value / (std::fabs(b.value) + 0.5)};
        }
        case 4: {
            auto a = gen_expr(gen, env, depth - 1);
            return {"sqrt(abs(" + a.text + "))", std::sqrt(std::fabs(a.value))};
        }
        case 5: {
            auto a = gen_expr(gen, env, depth - 1);
            return {"sin(" + a.text + ")", std::sin(a.value)};
        }
        case 6: {
            auto a = gen_expr(gen, env, depth - 1);
            return {"cos(" + a.text + ")", std::cos(a.value)};
        }
        case 7: {
            auto a = gen_expr(gen, env, depth - 1);
            auto b = gen_expr(gen, env, depth - 1);
            const bool mn = pick(2) == 0;
            return {(mn ? std::string("min(") : std::string("max(")) + a.text + ", " + b.text + ")",
                    mn ? std::min(a.value, b.value) : std::max(a.value, b.value)};
        }
        default: {
            auto a = gen_expr(gen, env, depth - 1);
            const int e = 1 + pick(3);
            return {"(abs(" + a.text + ") + 0.25)^" + std::to_string(e),
                    std::pow(std::fabs(a.value) + 0.25, static_cast<double>(e))};
        }
    }
}

}  // namespace

TEST_CASE("parse and eval: worked values") {
    dsl::Env env;
    SUBCASE("cosine blend at zero") {
        env["l1"] = 0.0;
        CHECK(dsl::eval(dsl::parse("(1/3)*cos(l1) + 2/3"), env) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("precedence") { CHECK(dsl::eval(dsl::parse("1 + 2*3"), env) == 7.0); }
    SUBCASE("radicand at the right endpoint") {
        env["x1"] = 1.0;
        CHECK(dsl::eval(dsl::parse("sqrt(2*x1 - x1^2)"), env) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("variable lookup") {
        env["x1"] = 2.5;
        CHECK(dsl::eval(dsl::parse("x1"), env) == 2.5);
    }
    SUBCASE("clamp") {
        env["x1"] = -3.0;
        CHECK(dsl::eval(dsl::parse("min(1, max(0, x1))"), env) == 0.0);
    }
    SUBCASE("sqrt sum") {
        env["x1"] = 2.0;
        CHECK(dsl::eval(dsl::parse("sqrt(x1^2 + 2*x1)"), env) ==
              doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
    }
    SUBCASE("power is right-associative and binds above unary minus") {
        CHECK(dsl::eval(dsl::parse("2^3^2"), env) == 512.0);
        CHECK(dsl::eval(dsl::parse("-2^2"), env) == -4.0);
    }
}

TEST_CASE("free_vars") {
    CHECK(dsl::free_vars(dsl::parse("3.0")).empty());
    const auto fv = dsl::free_vars(dsl::parse("x1 + l1"));
    CHECK(fv == std::set<std::string>{"l1", "x1"});
    CHECK(dsl::free_vars(dsl::parse("min(x1, x1)")) == std::set<std::string>{"x1"});
}

TEST_CASE("typed errors") {
    CHECK_THROWS_AS(dsl::parse(""), ParseError);
    CHECK_THROWS_AS(dsl::parse("1 + "), ParseError);
    CHECK_THROWS_AS(dsl::parse("foo(1)"), ParseError);        // unknown function
    CHECK_THROWS_AS(dsl::parse("min(1)"), ParseError);        // arity
    CHECK_THROWS_AS(dsl::parse("sqrt(1, 2)"), ParseError);    // arity
    CHECK_THROWS_AS(dsl::parse("(1"), ParseError);
    CHECK_THROWS_AS(dsl::parse("1 $ 2"), ParseError);

    dsl::Env env;
    CHECK_THROWS_AS(dsl::eval(dsl::parse("x9"), env), EvalError);          // unbound
    CHECK_THROWS_AS(dsl::eval(dsl::parse("1/0"), env), EvalError);         // div by zero
    CHECK_THROWS_AS(dsl::eval(dsl::parse("sqrt(0 - 1)"), env), EvalError); // domain
    CHECK_THROWS_AS(dsl::eval(dsl::parse("(0-2)^0.5"), env), EvalError);   // nan power
    // slightly negative radicand clamps to zero instead of failing
    CHECK(dsl::eval(dsl::parse("sqrt(0 - 0.0000000001)"), env) == 0.0);
}

TEST_CASE("parse error carries position") {
    try {
        dsl::parse("1 +\n  *2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 3);
    }
}

TEST_CASE("round-trip: print then parse is structurally identical") {
    std::mt19937_64 gen(42);
    dsl::Env env{{"x1", 0.5}, {"x2", -1.25}, {"l1", 2.0}, {"u1", 0.125}};
    for (int it = 0; it < 500; ++it) {
        const auto g = gen_expr(gen, env, 4);
        const auto e = dsl::parse(g.text);
        const auto again = dsl::parse(dsl::print(e));
        CHECK(dsl::structural_equal(e, again));
    }
}

TEST_CASE("eval agrees with the independent generator oracle") {
    std::mt19937_64 gen(4242);
    std::uniform_real_distribution<double> vv(-3.0, 3.0);
    int checked = 0;
    for (int it = 0; it < 10000; ++it) {
        dsl::Env env{{"x1", vv(gen)}, {"x2", vv(gen)}, {"l1", vv(gen)}, {"u1", vv(gen)}};
        const auto g = gen_expr(gen, env, 3 + static_cast<int>(gen() % 3));
        if (!std::isfinite(g.value)) continue;
        const double got = dsl::eval(dsl::parse(g.text), env);
        CHECK(got == doctest::Approx(g.value).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked > 9000);
}

TEST_CASE("no input text crashes the parser") {
    std::mt19937_64 gen(7);
    const std::string alphabet = "xlu123456789.+-*/^(), minaxsqrtcoe\n\t\"%$#";
    for (int it = 0; it < 3000; ++it) {
        std::string s;
        const std::size_t n = gen() % 24;
        for (std::size_t i = 0; i < n; ++i) s += alphabet[gen() % alphabet.size()];
        try {
            auto e = dsl::parse(s);
            (void)dsl::print(e);
        } catch (const ParseError&) {
            // expected for malformed text
        }
    }
    CHECK(true);
}

TEST_CASE("compile: batch evaluation matches the AST evaluator") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> vv(-2.0, 2.0);
    const std::vector<std::string> layout = {"x1", "l1"};
    for (int it = 0; it < 200; ++it) {
        dsl::Env env{{"x1", 0.0}, {"l1", 0.0}};
        const auto g = gen_expr(gen, env, 3);
        const auto e = dsl::parse(g.text);
        const auto prog = dsl::compile(e, layout);
        const std::size_t n = 11;
        std::vector<double> xs(n), ls(n), out(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = vv(gen);
            ls[i] = vv(gen);
        }
        kernels::ColumnView cols[2] = {kernels::packed(xs.data()), kernels::packed(ls.data())};
        const auto err = kernels::table().eval_program(prog, cols, n, out.data());
        REQUIRE(err == -1);
        for (std::size_t i = 0; i < n; ++i) {
            const double ref = dsl::eval(e, dsl::Env{{"x1", xs[i]}, {"l1", ls[i]}});
            CHECK(out[i] == ref);
        }
    }
    CHECK_THROWS_AS(dsl::compile(dsl::parse("u1 + 1"), layout), ContractViolation);
}
