#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vmlp/algebra.hpp"
#include "vmlp/errors.hpp"
#include "vmlp/io.hpp"
#include "vmlp/network.hpp"
#include "vmlp/rng.hpp"
#include "vmlp/train.hpp"

using namespace vmlp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() /
               ("vmlp_io_test_" + std::to_string(static_cast<std::uint64_t>(
                                      std::chrono::steady_clock::now().time_since_epoch().count())));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

bool same_constants(const Algebra& a, const Algebra& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < a.dim(); ++k)
                if (a.constant(i, j, k) != b.constant(i, j, k)) return false;
    return true;
}

} // namespace

TEST_CASE("algebra JSON round-trips catalog and custom algebras") {
    const Algebra c = catalog("C");
    const Algebra back = parse_algebra_json(algebra_to_json(c), "roundtrip");
    CHECK(back.same_as(c));
    CHECK(back.name() == "C");
    CHECK(back.labels() == c.labels());

    const Algebra custom =
        new_algebra(2, {1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.5, 0.0}, {"u", "v"}, "myalg");
    const Algebra custom_back = parse_algebra_json(algebra_to_json(custom), "roundtrip");
    CHECK(same_constants(custom, custom_back));
    CHECK(custom_back.name() == "myalg");
    CHECK(custom_back.labels() == std::vector<std::string>{"u", "v"});
}

TEST_CASE("algebra JSON parse errors carry the origin and position") {
    CHECK_THROWS_WITH_AS(parse_algebra_json("{\"dim\": 2,", "bad.json"), doctest::Contains("bad.json"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(parse_algebra_json("not json at all", "bad.json"), doctest::Contains("line"),
                         ValidationError);
}

TEST_CASE("algebra JSON shape errors name the offending key") {
    CHECK_THROWS_WITH_AS(parse_algebra_json("{\"constants\": []}", "x"), doctest::Contains("dim"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(parse_algebra_json("{\"dim\": 2, \"constants\": [[[1,0],[0,1]]]}", "x"),
                         doctest::Contains("constants"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_algebra_json("{\"dim\": 0, \"constants\": []}", "x"),
                         doctest::Contains(">= 1"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_algebra_json("{\"dim\": 1.5, \"constants\": []}", "x"),
                         doctest::Contains("integer"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_algebra_json("{\"dim\": 1, \"constants\": [[[1]]], \"labels\": [\"a\", \"b\"]}", "x"),
        doctest::Contains("labels"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_algebra_json("{\"dim\": 1, \"constants\": [[[null]]]}", "x"),
        doctest::Contains("number"), ValidationError);
    CHECK_THROWS_AS(parse_algebra_json("[1, 2, 3]", "x"), ValidationError);
}

TEST_CASE("algebra JSON files load from disk") {
    TempDir dir;
    const Algebra d = catalog("D");
    write_text_atomic(dir.file("dual.json"), algebra_to_json(d));
    const Algebra loaded = load_algebra_json(dir.file("dual.json"));
    CHECK(loaded.same_as(d));
    CHECK_THROWS_WITH_AS(load_algebra_json(dir.file("missing.json")), doctest::Contains("cannot open"),
                         ValidationError);
}

TEST_CASE("checkpoints round-trip catalog-algebra nets exactly") {
    TempDir dir;
    const Algebra q = catalog("Q");
    const VMlp net = VMlp::init(q, 2, 3, OutputMode::vector, Activation::logistic, 99);
    save_checkpoint(net, dir.file("net.json"));
    const VMlp loaded = load_checkpoint(dir.file("net.json"));

    CHECK(loaded.algebra().same_as(q));
    CHECK(loaded.algebra().name() == "Q");
    CHECK(loaded.n_inputs() == 2);
    CHECK(loaded.n_hidden() == 3);
    CHECK(loaded.output_mode() == OutputMode::vector);
    CHECK(loaded.activation() == Activation::logistic);
    REQUIRE(loaded.param_count() == net.param_count());
    CHECK(std::equal(net.params().begin(), net.params().end(), loaded.params().begin()));

    Rng rng(1);
    std::vector<double> xs(8);
    for (double& v : xs) v = rng.uniform(-1.0, 1.0);
    std::vector<double> y1(4);
    std::vector<double> y2(4);
    VMlpScratch scratch;
    net.forward_flat(xs, y1, scratch);
    loaded.forward_flat(xs, y2, scratch);
    CHECK(y1 == y2);
}

TEST_CASE("checkpoints embed custom algebras structurally") {
    TempDir dir;
    // Carries a catalog name but different constants, so the name shortcut
    // must not be taken.
    const Algebra fake_c = new_algebra(2, {1, 0, 0, 1, 0, 1, 1, 0}, {}, "C");
    CHECK_FALSE(fake_c.same_as(catalog("C")));
    VMlp net(fake_c, 1, 2, OutputMode::scalar, Activation::relu);
    net.set_weight(0, 0, fake_c.element({0.5, -0.5}));
    save_checkpoint(net, dir.file("fake.json"));
    const VMlp loaded = load_checkpoint(dir.file("fake.json"));
    CHECK(same_constants(loaded.algebra(), fake_c));
    CHECK_FALSE(loaded.algebra().same_as(catalog("C")));

    const Algebra anon = new_algebra(1, {2.0}, {}, "");
    const VMlp anon_net = VMlp::init(anon, 1, 2, OutputMode::scalar, Activation::tanh, 5);
    save_checkpoint(anon_net, dir.file("anon.json"));
    const VMlp anon_loaded = load_checkpoint(dir.file("anon.json"));
    CHECK(same_constants(anon_loaded.algebra(), anon));
    CHECK(std::equal(anon_net.params().begin(), anon_net.params().end(),
                     anon_loaded.params().begin()));
}

TEST_CASE("checkpoint loading rejects malformed documents") {
    TempDir dir;
    const Algebra c = catalog("C");
    const VMlp net = VMlp::init(c, 1, 2, OutputMode::scalar, Activation::relu, 7);
    save_checkpoint(net, dir.file("net.json"));
    const std::string good = read_text(dir.file("net.json"));

    auto corrupted = [&](const std::string& from, const std::string& to) {
        std::string text = good;
        const std::size_t at = text.find(from);
        REQUIRE(at != std::string::npos);
        text.replace(at, from.size(), to);
        const std::string path = dir.file("corrupt.json");
        write_text_atomic(path, text);
        return path;
    };

    CHECK_THROWS_WITH_AS(load_checkpoint(corrupted("\"n_hidden\"", "\"n_hidde\"")),
                         doctest::Contains("missing key"), ValidationError);
    CHECK_THROWS_WITH_AS(load_checkpoint(corrupted("\"activation\": \"relu\"", "\"activation\": \"soft\"")),
                         doctest::Contains("valid"), ValidationError);
    CHECK_THROWS_WITH_AS(load_checkpoint(corrupted("\"output_mode\": \"scalar\"", "\"output_mode\": 3")),
                         doctest::Contains("string"), ValidationError);
    CHECK_THROWS_WITH_AS(load_checkpoint(corrupted("\"hidden_biases\": [", "\"hidden_biases\": [9.0,")),
                         doctest::Contains("lengths"), ValidationError);
    CHECK_THROWS_WITH_AS(load_checkpoint(corrupted("\"hidden_biases\": [", "\"hidden_biases\": [null,")),
                         doctest::Contains("number"), ValidationError);
    CHECK_THROWS_AS(load_checkpoint(dir.file("nothere.json")), ValidationError);
}

TEST_CASE("curve CSV uses fixed-point decimals with at least 10 significant digits") {
    const std::vector<EpochRecord> curve{{1, 0.5}, {2, 0.0421}, {3, 1234.5}, {4, 0.0}};
    const std::string csv = curve_to_csv(curve);
    CHECK(csv == "epoch,mse\n"
                 "1,0.5000000000000\n"
                 "2,0.04210000000000\n"
                 "3,1234.500000000\n"
                 "4,0.000000000000\n");
    CHECK(csv.find('e', 10) == std::string::npos); // no scientific notation after the header
    CHECK(curve_to_csv(curve) == csv);

    CHECK(curve_to_csv({}) == "epoch,mse\n");

    const std::vector<EpochRecord> bad{{1, std::nan("")}};
    CHECK_THROWS_AS(curve_to_csv(bad), NumericError);
}

TEST_CASE("curve CSV writes through the atomic path") {
    TempDir dir;
    const std::vector<EpochRecord> curve{{1, 0.25}, {2, 0.125}};
    const std::string path = dir.file("curve.csv");
    write_curve_csv(path, curve);
    CHECK(read_text(path) == curve_to_csv(curve));
    CHECK_FALSE(fs::exists(path + ".tmp"));
}

TEST_CASE("write_text_atomic replaces files without leaving temporaries") {
    TempDir dir;
    const std::string path = dir.file("out.txt");
    write_text_atomic(path, "first\n");
    CHECK(read_text(path) == "first\n");
    write_text_atomic(path, "second\n");
    CHECK(read_text(path) == "second\n");
    CHECK_FALSE(fs::exists(path + ".tmp"));

    CHECK_THROWS_WITH_AS(write_text_atomic(dir.file("no/such/dir/out.txt"), "x"),
                         doctest::Contains("cannot open"), ValidationError);
}
