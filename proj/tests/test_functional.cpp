#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "vmlp/algebra.hpp"
#include "vmlp/errors.hpp"
#include "vmlp/functional.hpp"
#include "vmlp/rng.hpp"

using namespace vmlp;

namespace {

LinearFunctional random_functional(int arity, int dim, Rng& rng) {
    LinearFunctional f;
    f.coeffs.resize(static_cast<std::size_t>(arity));
    for (std::vector<double>& block : f.coeffs) {
        block.resize(static_cast<std::size_t>(dim));
        for (double& c : block) c = rng.uniform(-2.0, 2.0);
    }
    return f;
}

} // namespace

TEST_CASE("functional evaluation") {
    LinearFunctional f;
    f.coeffs = {{1.0, 2.0}, {0.0, -1.0}};
    CHECK(f.arity() == 2);
    CHECK(f.dim() == 2);
    CHECK(f.eval_flat(std::vector<double>{1.0, 1.0, 3.0, 2.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(f.eval_flat(std::vector<double>{1.0, 1.0}), ValidationError);
}

TEST_CASE("representation on complex numbers matches the hand solve") {
    const Algebra c = catalog("C");
    const double a = 1.7;
    const double b = -0.4;
    LinearFunctional f;
    f.coeffs = {{a, b}};
    const Representation rep = represent(c, 0, f);
    CHECK(rep.residual == 0.0);
    REQUIRE(rep.ys.size() == 1);
    CHECK(rep.ys[0][0] == doctest::Approx(a));
    CHECK(rep.ys[0][1] == doctest::Approx(-b));
    CHECK(verify_representation(c, rep, f, 1000, 3) < 1e-10);
}

TEST_CASE("dual numbers represent exactly iff the i-coefficients vanish") {
    const Algebra d = catalog("D");
    LinearFunctional representable;
    representable.coeffs = {{2.5, 0.0}, {-1.0, 0.0}};
    const Representation good = represent(d, 0, representable);
    CHECK(good.residual == 0.0);
    CHECK(verify_representation(d, good, representable, 500, 4) < 1e-10);

    LinearFunctional impossible;
    impossible.coeffs = {{0.0, 1.0}};
    const Representation bad = represent(d, 0, impossible);
    CHECK(bad.residual == doctest::Approx(1.0).epsilon(1e-12));
    // The deviation is visible empirically too: x = i gives deviation 1.
    CHECK(verify_representation(d, bad, impossible, 500, 5) > 0.1);
}

TEST_CASE("zero functional with zero weights verifies exactly") {
    const Algebra c = catalog("C");
    LinearFunctional zero;
    zero.coeffs = {{0.0, 0.0}, {0.0, 0.0}};
    Representation rep;
    rep.component = 0;
    rep.residual = 0.0;
    rep.ys = {c.zero(), c.zero()};
    CHECK(verify_representation(c, rep, zero, 200, 6) == 0.0);
}

TEST_CASE("roundtrip exactness over all non-degenerate catalog algebras") {
    Rng rng(404);
    for (const std::string& name : catalog_names()) {
        const Algebra a = catalog(name);
        if (!is_nondegenerate(a).overall_nondegenerate) continue;
        for (int component = 0; component < a.dim(); ++component) {
            for (int arity = 1; arity <= 3; ++arity) {
                const LinearFunctional f = random_functional(arity, a.dim(), rng);
                const Representation rep = represent(a, component, f);
                CHECK(rep.residual == 0.0);
                CHECK(verify_representation(a, rep, f, 200, rng.next_u64()) < 1e-9);
            }
        }
    }
}

TEST_CASE("representation map is linear") {
    Rng rng(505);
    const Algebra q = catalog("Q");
    for (int component = 0; component < 4; ++component) {
        const LinearFunctional f1 = random_functional(2, 4, rng);
        const LinearFunctional f2 = random_functional(2, 4, rng);
        const double alpha = rng.uniform(-2.0, 2.0);
        LinearFunctional combo;
        combo.coeffs = f1.coeffs;
        for (std::size_t j = 0; j < combo.coeffs.size(); ++j)
            for (std::size_t c = 0; c < combo.coeffs[j].size(); ++c)
                combo.coeffs[j][c] = alpha * f1.coeffs[j][c] + f2.coeffs[j][c];
        const Representation r1 = represent(q, component, f1);
        const Representation r2 = represent(q, component, f2);
        const Representation rc = represent(q, component, combo);
        for (std::size_t j = 0; j < rc.ys.size(); ++j) {
            const Element expect = add(scale(alpha, r1.ys[j]), r2.ys[j]);
            CHECK(abs(rc.ys[j] - expect) < 1e-10);
        }
    }
}

TEST_CASE("degenerate components admit un-representable functionals") {
    struct Case {
        const char* name;
        int component;
    };
    for (const Case& c : {Case{"D", 0}, Case{"DC", 0}, Case{"DC", 1}}) {
        const Algebra a = catalog(c.name);
        // A functional hitting every coordinate; the singular column space
        // cannot reach all of them.
        LinearFunctional f;
        f.coeffs = {std::vector<double>(static_cast<std::size_t>(a.dim()), 1.0)};
        const Representation rep = represent(a, c.component, f);
        CHECK(rep.residual > 0.5);
    }
}

TEST_CASE("represent validates its inputs") {
    const Algebra c = catalog("C");
    LinearFunctional f;
    f.coeffs = {{1.0, 0.0}};
    CHECK_THROWS_AS(represent(c, 2, f), ValidationError);
    CHECK_THROWS_AS(represent(c, -1, f), ValidationError);
    LinearFunctional wrong;
    wrong.coeffs = {{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(represent(c, 0, wrong), ValidationError);
    LinearFunctional empty;
    CHECK_THROWS_AS(represent(c, 0, empty), ValidationError);
}
