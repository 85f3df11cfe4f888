#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "vmlp/algebra.hpp"
#include "vmlp/errors.hpp"
#include "vmlp/rng.hpp"

using namespace vmlp;

namespace {

Element random_element(const Algebra& a, Rng& rng) {
    std::vector<double> c(static_cast<std::size_t>(a.dim()));
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    return a.element(c);
}

double max_constant_diff(const Algebra& a, const Algebra& b) {
    REQUIRE(a.dim() == b.dim());
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < a.dim(); ++k)
                worst = std::max(worst, std::fabs(a.constant(i, j, k) - b.constant(i, j, k)));
    return worst;
}

double element_dist(const Element& x, const Element& y) {
    return abs(x - y);
}

} // namespace

TEST_CASE("new_algebra validates shape and content") {
    const Algebra reals = new_algebra(1, {1.0});
    CHECK(element_dist(mul(reals.basis(0), reals.basis(0)), reals.basis(0)) == 0.0);

    // Complex numbers entered as the (i, j, k) tensor.
    const std::vector<double> complex_ijk = {
        1, 0, 0, 1, // e0*e0 = e0; e0*e1 = e1
        0, 1, -1, 0, // e1*e0 = e1; e1*e1 = -e0
    };
    const Algebra c = new_algebra(2, complex_ijk, {"1", "i"}, "C");
    CHECK(c.name() == "C");
    CHECK(max_constant_diff(c, catalog("C")) == 0.0);

    CHECK_THROWS_AS(new_algebra(2, std::vector<double>(12, 0.0)), ValidationError);
    CHECK_THROWS_AS(new_algebra(0, {}), ValidationError);
    std::vector<double> bad(8, 0.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(new_algebra(2, bad), ValidationError);
}

TEST_CASE("element operations") {
    const Algebra c = catalog("C");
    const Element x = c.element({3.0, 4.0});
    CHECK(abs(x) == 5.0);
    CHECK(project(x, 1) == 4.0);
    const Element s = add(c.basis(0), scale(2.0, c.basis(1)));
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 2.0);
    CHECK(element_dist(s, c.element({1.0, 2.0})) == 0.0);

    const Algebra q = catalog("Q");
    CHECK_THROWS_AS(add(c.basis(0), q.basis(0)), ValidationError);
    CHECK_THROWS_AS(c.element({1.0}), ValidationError);
    CHECK_THROWS_AS(project(x, 2), ValidationError);
}

TEST_CASE("mul matches the worked products") {
    const Algebra c = catalog("C");
    const Element prod = mul(c.element({1.0, 2.0}), c.element({3.0, 4.0}));
    CHECK(prod[0] == doctest::Approx(-5.0));
    CHECK(prod[1] == doctest::Approx(10.0));

    const Algebra q = catalog("Q");
    const Element i3 = mul(q.basis(1), q.basis(2));
    CHECK(element_dist(i3, q.basis(3)) == 0.0);

    const Algebra d = catalog("D");
    CHECK(abs(mul(d.basis(1), d.basis(1))) == 0.0);

    const Algebra a = catalog("A");
    const Element sq = mul(a.basis(0), a.basis(0));
    CHECK(element_dist(sq, a.element({1.0, 1.0})) == 0.0);
}

TEST_CASE("bilinear matrices expose the structure constants") {
    const Matrix d0 = bilinear_matrix(catalog("D"), 0).entries;
    CHECK(d0.at(0, 0) == 1.0);
    CHECK(d0.at(0, 1) == 0.0);
    CHECK(d0.at(1, 0) == 0.0);
    CHECK(d0.at(1, 1) == 0.0);

    const Matrix g3 = bilinear_matrix(catalog("G"), 3).entries;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(g3.at(i, j) == 1.0);

    const Matrix r0 = bilinear_matrix(catalog("R"), 0).entries;
    CHECK(r0.rows() == 1);
    CHECK(r0.at(0, 0) == 1.0);

    CHECK_THROWS_AS(bilinear_matrix(catalog("C"), 2), ValidationError);
}

TEST_CASE("component projection equals the bilinear form exactly") {
    Rng rng(31);
    for (const std::string& name : catalog_names()) {
        const Algebra a = catalog(name);
        for (int rep = 0; rep < 20; ++rep) {
            const Element x = random_element(a, rng);
            const Element y = random_element(a, rng);
            const Element xy = mul(x, y);
            for (int k = 0; k < a.dim(); ++k)
                CHECK(project(xy, k) == bilinear_form(a, k, x.coeffs(), y.coeffs()));
        }
    }
}

TEST_CASE("degeneracy classification of the full catalog") {
    const std::map<std::string, std::vector<int>> expected_singular = {
        {"R", {}}, {"A", {}}, {"B", {1}}, {"C", {}}, {"D", {0}},  {"E", {}},
        {"F", {}}, {"G", {3}}, {"Q", {}}, {"HQ", {}}, {"DC", {0, 1}},
    };
    for (const auto& [name, singular] : expected_singular) {
        const DegeneracyReport report = is_nondegenerate(catalog(name));
        CHECK(report.singular_components() == singular);
        CHECK(report.overall_nondegenerate == singular.empty());
        CHECK(report.tol == 1e-9);
    }
}

TEST_CASE("identity search over the catalog") {
    const std::optional<Element> c_id = find_identity(catalog("C"));
    REQUIRE(c_id.has_value());
    CHECK((*c_id)[0] == doctest::Approx(1.0));
    CHECK(std::fabs((*c_id)[1]) < 1e-9);

    const std::optional<Element> e_id = find_identity(catalog("E"));
    REQUIRE(e_id.has_value());
    CHECK((*e_id)[0] == doctest::Approx(0.5));
    CHECK((*e_id)[1] == doctest::Approx(0.5));

    const std::set<std::string> with_identity = {"C", "D", "E", "Q", "HQ", "DC", "R"};
    Rng rng(77);
    for (const std::string& name : catalog_names()) {
        const Algebra a = catalog(name);
        const std::optional<Element> id = find_identity(a);
        CHECK(id.has_value() == (with_identity.count(name) > 0));
        if (id) {
            for (int rep = 0; rep < 100; ++rep) {
                const Element x = random_element(a, rng);
                CHECK(element_dist(mul(*id, x), x) < 1e-10);
                CHECK(element_dist(mul(x, *id), x) < 1e-10);
            }
        }
    }
}

TEST_CASE("change of basis turns D into E") {
    const Algebra d = catalog("D");
    const Matrix p(2, 2, {1, 1, 1, -1});
    const Algebra e = change_of_basis(d, p);
    CHECK(max_constant_diff(e, catalog("E")) < 1e-12);
}

TEST_CASE("change of basis with the identity and round trips") {
    const Algebra q = catalog("Q");
    CHECK(max_constant_diff(change_of_basis(q, Matrix::identity(4)), q) == 0.0);

    const Algebra d = catalog("D");
    const Matrix p(2, 2, {1, 1, 1, -1});
    const Matrix p_inv(2, 2, {0.5, 0.5, 0.5, -0.5});
    CHECK(max_constant_diff(change_of_basis(change_of_basis(d, p), p_inv), d) < 1e-12);

    CHECK_THROWS_AS(change_of_basis(d, Matrix(2, 2, {1, 2, 2, 4})), ValidationError);
    CHECK_THROWS_AS(change_of_basis(d, Matrix(3, 3, std::vector<double>(9, 0.0))),
                    ValidationError);
}

TEST_CASE("change of basis preserves products") {
    Rng rng(55);
    const Algebra d = catalog("D");
    const Matrix p(2, 2, {1, 1, 1, -1});
    const Algebra e = change_of_basis(d, p);
    for (int rep = 0; rep < 50; ++rep) {
        const Element xp = random_element(e, rng);
        const Element yp = random_element(e, rng);
        const Element prod_new = mul(xp, yp); // coordinates in the new basis
        // Map through P and multiply in the old basis.
        const std::vector<double> x_old = p.apply(xp.coeffs());
        const std::vector<double> y_old = p.apply(yp.coeffs());
        const Element prod_old = mul(d.element(x_old), d.element(y_old));
        const std::vector<double> mapped = p.apply(prod_new.coeffs());
        for (int k = 0; k < 2; ++k) CHECK(mapped[k] == doctest::Approx(prod_old[k]).epsilon(1e-12));
    }
}

TEST_CASE("catalog contents and labels") {
    CHECK(catalog_names() ==
          std::vector<std::string>{"R", "A", "B", "C", "D", "E", "F", "G", "Q", "HQ", "DC"});

    const Algebra q = catalog("Q");
    CHECK(q.constant(1, 1, 0) == -1.0);
    CHECK(q.labels() == std::vector<std::string>{"1", "i1", "i2", "i3"});

    const Algebra hq = catalog("HQ");
    const Matrix hq0 = bilinear_matrix(hq, 0).entries;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(hq0.at(i, j) == (i == j ? 1.0 : 0.0));
    for (int k = 1; k < 4; ++k) {
        const Matrix a = bilinear_matrix(hq, k).entries;
        const Matrix b = bilinear_matrix(q, k).entries;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(a.at(i, j) == b.at(i, j));
    }

    const Algebra e = catalog("E");
    CHECK(e.constant(0, 0, 0) == 1.5);
    CHECK(e.constant(0, 0, 1) == -0.5);

    CHECK(catalog("C").labels() == std::vector<std::string>{"1", "i"});
    CHECK(catalog("R").labels() == std::vector<std::string>{"1"});
    CHECK(catalog("A").labels() == std::vector<std::string>{"e0", "e1"});

    CHECK_THROWS_AS(catalog("X"), ValidationError);
    CHECK_THROWS_WITH_AS(catalog("X"), doctest::Contains("valid"), ValidationError);
}

TEST_CASE("clifford algebras at small signatures") {
    CHECK(max_constant_diff(clifford(0, 1), catalog("C")) == 0.0);
    CHECK(max_constant_diff(clifford(0, 2), catalog("Q")) == 0.0);

    const Algebra hyper = clifford(1, 0);
    CHECK(hyper.dim() == 2);
    CHECK(hyper.constant(1, 1, 0) == 1.0);

    CHECK(clifford(2, 2).dim() == 16);
    CHECK_THROWS_AS(clifford(3, 2), ValidationError);
    CHECK_THROWS_AS(clifford(-1, 1), ValidationError);
}

TEST_CASE("cayley-dickson chain reproduces C and Q") {
    CHECK(max_constant_diff(cayley_dickson_chain({-1.0}), catalog("C")) == 0.0);
    CHECK(max_constant_diff(cayley_dickson_chain({-1.0, -1.0}), catalog("Q")) == 0.0);
    CHECK(cayley_dickson_chain({-1.0, -1.0, -1.0}).dim() == 8);
    CHECK_THROWS_AS(cayley_dickson_chain({-1.0, -1.0, -1.0, -1.0}), ValidationError);
    CHECK_THROWS_AS(cayley_dickson_chain({0.5}), ValidationError);
}

TEST_CASE("norm multiplicativity for quaternions and octonions") {
    Rng rng(101);
    const Algebra q = catalog("Q");
    for (int rep = 0; rep < 1000; ++rep) {
        const Element x = random_element(q, rng);
        const Element y = random_element(q, rng);
        CHECK(std::fabs(abs(mul(x, y)) - abs(x) * abs(y)) < 1e-10);
    }
    const Algebra oct = cayley_dickson_chain({-1.0, -1.0, -1.0});
    for (int rep = 0; rep < 1000; ++rep) {
        const Element x = random_element(oct, rng);
        const Element y = random_element(oct, rng);
        CHECK(std::fabs(abs(mul(x, y)) - abs(x) * abs(y)) < 1e-10);
    }
}

TEST_CASE("associativity holds and fails where expected") {
    Rng rng(202);
    for (const std::string& name : {"C", "D", "E", "Q", "DC"}) {
        const Algebra a = catalog(name);
        for (int rep = 0; rep < 200; ++rep) {
            const Element x = random_element(a, rng);
            const Element y = random_element(a, rng);
            const Element z = random_element(a, rng);
            CHECK(element_dist(mul(mul(x, y), z), mul(x, mul(y, z))) < 1e-10);
        }
    }
    for (const Algebra& a : {catalog("HQ"), cayley_dickson_chain({-1.0, -1.0, -1.0})}) {
        double worst = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
            const Element x = random_element(a, rng);
            const Element y = random_element(a, rng);
            const Element z = random_element(a, rng);
            worst = std::max(worst, element_dist(mul(mul(x, y), z), mul(x, mul(y, z))));
        }
        CHECK(worst > 1e-3);
    }
}

TEST_CASE("bilinearity over all catalog algebras") {
    Rng rng(303);
    for (const std::string& name : catalog_names()) {
        const Algebra a = catalog(name);
        for (int rep = 0; rep < 20; ++rep) {
            const Element x = random_element(a, rng);
            const Element y = random_element(a, rng);
            const Element z = random_element(a, rng);
            const double alpha = rng.uniform(-2.0, 2.0);
            CHECK(element_dist(mul(add(scale(alpha, x), z), y),
                               add(scale(alpha, mul(x, y)), mul(z, y))) < 1e-12);
            CHECK(element_dist(mul(y, add(scale(alpha, x), z)),
                               add(scale(alpha, mul(y, x)), mul(y, z))) < 1e-12);
        }
    }
}
